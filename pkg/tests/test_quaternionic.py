import numpy as np
import pytest

from submersion_lab.errors import DimensionMismatch
from submersion_lab.quaternionic import apply, standard_triple, verify_triple


@pytest.mark.parametrize("m", [1, 2, 3])
def test_standard_triple_is_exact(m):
    report = verify_triple(standard_triple(m))
    assert report.pop("ok") is True
    assert all(v == 0.0 for v in report.values())


def test_block_action_on_basis():
    t = standard_triple(1)
    e = np.eye(4)
    # I e1 = e2, I e3 = e4, J e1 = e3, J e2 = -e4, K e1 = e4, K e2 = e3
    assert np.array_equal(t.I(e[0]), e[1])
    assert np.array_equal(t.I(e[2]), e[3])
    assert np.array_equal(t.J(e[0]), e[2])
    assert np.array_equal(t.J(e[1]), -e[3])
    assert np.array_equal(t.K(e[0]), e[3])
    assert np.array_equal(t.K(e[1]), e[2])


def test_blocks_act_independently():
    t = standard_triple(2)
    v = np.zeros(8)
    v[4] = 1.0
    assert np.array_equal(t.I(v), np.eye(8)[5])
    assert t["K"] is t.K and [r.name for r in t] == ["I", "J", "K"]


def test_apply_checks_dimension():
    with pytest.raises(DimensionMismatch):
        apply(standard_triple(1).I, np.ones(8))
    with pytest.raises(ValueError):
        standard_triple(0)
