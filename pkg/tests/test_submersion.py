import math

import numpy as np
import pytest

from submersion_lab import SamplingPlan, builtin_example, parse_map
from submersion_lab.errors import CriticalPoint, NonConstantRank
from submersion_lab.submersion import (Geometry, conformality_check, grad_ln_dilation,
                                       is_horizontally_homothetic, require_regular, split_tangent)

from conftest import ALL_EXAMPLES, plan_for


def test_split_tangent_axes_example():
    fr = split_tangent(builtin_example("ex-r4-axes"), np.zeros(4))
    assert fr.rank == 2
    assert fr.dilation == pytest.approx(math.exp(2), rel=1e-14)
    assert np.allclose(fr.P_V, np.diag([1, 1, 0, 0]))
    assert np.allclose(fr.P_H + fr.P_V, np.eye(4))


def test_holo_dilation_and_critical_set():
    spec = builtin_example("holo-z2")
    assert split_tangent(spec, [0, 0, 1, 1]).dilation == pytest.approx(2 * math.sqrt(2))
    with pytest.raises(CriticalPoint):
        split_tangent(spec, [0.3, 0.1, 0.0, 0.0])


@pytest.mark.parametrize("ident", ALL_EXAMPLES)
def test_builtins_are_horizontally_conformal(ident):
    rep = conformality_check(builtin_example(ident), plan_for(ident))
    assert rep.passed
    assert max(rep.worst_residual, rep.worst_pair_residual) < 1e-12


def test_nonconformal_map_is_reported():
    spec = parse_map("dim 4 -> 2\nf1 = x1\nf2 = 2*x2\n")
    rep = conformality_check(spec, SamplingPlan(n_points=4, n_directions=4))
    assert not rep.passed and rep.nonconformal_points


def test_rank_failures():
    everywhere = parse_map("dim 4 -> 2\nf1 = x1\nf2 = x1\n")
    with pytest.raises(CriticalPoint):
        require_regular(conformality_check(everywhere, SamplingPlan(n_points=3)))
    partly = parse_map("dim 4 -> 2\nf1 = x1^2\nf2 = x2\n")
    plan = SamplingPlan(n_points=3, box=[(-1, 1), (0, 1), (0, 1), (0, 1)])
    # x1 = 0 is never hit by Halton points, so force one critical sample
    rep = conformality_check(partly, plan)
    rep.critical_points.append((99, [0.0] * 4, "forced"))
    with pytest.raises(NonConstantRank):
        require_regular(rep)


def test_sampling_is_deterministic_and_respects_exclusion():
    plan = plan_for("holo-z2", n_points=40)
    a, b = plan.points(4), plan.points(4)
    assert np.array_equal(a, b)
    assert np.all(np.linalg.norm(a[:, 2:], axis=1) >= 0.2)
    assert not np.array_equal(a, SamplingPlan(n_points=40, seed=1).points(4))


def test_box_forms():
    assert SamplingPlan(box=(0, 2)).bounds(4)[1].tolist() == [2] * 4
    lo, hi = SamplingPlan(box=[(0, 1), (1, 2), (2, 3), (3, 4)]).bounds(4)
    assert lo.tolist() == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        SamplingPlan(box=[(1, 0)]).bounds(4)


def test_grad_ln_dilation_holo_oracle():
    # ln λ = ln 2 + ln |(x3, x4)|
    spec = builtin_example("holo-z2")
    p = np.array([0.2, -0.1, 0.6, -0.8])
    full, hor, ver = grad_ln_dilation(spec, p)
    r2 = 0.36 + 0.64
    assert full == pytest.approx([0, 0, 0.6 / r2, -0.8 / r2], abs=1e-9)
    assert np.allclose(ver, 0, atol=1e-9) and hor == pytest.approx(full, abs=1e-9)


def test_grad_ln_dilation_matches_jacobian_hessian_oracle():
    # for conformal maps λ^2 = tr(J J^T)/n, so ∇λ^2 = (2/n) Σ J_ij H_ijk
    spec = builtin_example("holo-z1z2")
    p = np.array([0.4, 0.3, -0.5, 0.6])
    J, H = spec.jacobian(p), spec.hessian(p)
    lam2 = np.sum(J * J) / 2
    oracle = np.einsum("ij,ijk->k", J, H) / lam2 / 2
    assert grad_ln_dilation(spec, p)[0] == pytest.approx(oracle, abs=1e-9)


@pytest.mark.parametrize("ident,expect", [("ex-r4-axes", True), ("ex-r8-diag", True),
                                          ("holo-z2", False), ("inv-r3", False)])
def test_homothety(ident, expect):
    verdict = is_horizontally_homothetic(builtin_example(ident), plan_for(ident))
    assert verdict.holds is expect


def test_geometry_caches_frames():
    geo = Geometry(builtin_example("holo-z2"))
    p = np.array([0.1, 0.2, 0.5, 0.5])
    assert geo.frame(p) is geo.frame(p.copy())
