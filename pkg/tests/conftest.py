import pytest

from submersion_lab import SamplingPlan, builtin_example
from submersion_lab.catalog import EXAMPLES

ALL_EXAMPLES = list(EXAMPLES)
LINEAR_EXAMPLES = ["ex-r4-axes", "ex-r8-diag", "ex-r4-angles", "ex-r4-sixth"]


def plan_for(ident, n_points=6, n_directions=8, seed=0):
    return SamplingPlan(n_points=n_points, n_directions=n_directions, seed=seed,
                        exclusion=EXAMPLES[ident].exclusion)


@pytest.fixture
def holo():
    return builtin_example("holo-z2")
