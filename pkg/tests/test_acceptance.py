"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or directly
with ``python3 tests/test_acceptance.py``.
"""

import itertools
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from submersion_lab import SamplingPlan, builtin_example, standard_triple, verify_triple
from submersion_lab.catalog import EXAMPLES
from submersion_lab.oneill import (HORIZONTAL, VERTICAL, ProjectedField, conformal_sff_formula,
                                   field_derivative, oneill_A, oneill_A_full, oneill_T,
                                   oneill_T_full, pullback_derivative, second_fundamental_form,
                                   tension_field)
from submersion_lab.slant import classify, identity_suite
from submersion_lab.submersion import Geometry, random_unit_in
from submersion_lab.theorems import run_full_suite

ANGLE_TOL = 1e-9
DILATION_REL_TOL = 1e-9
FAMILY_TOL = 1e-8
RUNTIME_LIMIT_S = 5.0
IDENTITY_TOL = 1e-8
SFF_SYMMETRY_TOL = 1e-10
TENSOR_TOL = 1e-5
CONFORMAL_SFF_TOL = 1e-5
TENSION_TOL = 1e-5

POINTS, DIRECTIONS = 16, 32
PI = math.pi


def full_plan(ident, seed=0):
    return SamplingPlan(n_points=POINTS, n_directions=DIRECTIONS, seed=seed,
                        exclusion=EXAMPLES[ident].exclusion)


def report(n, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    return ok


# -- 1 -------------------------------------------------------------------------

PUBLISHED = {
    "ex-r4-axes": ((0.0, PI / 2, PI / 2), math.exp(2)),
    "ex-r8-diag": ((PI / 4, PI / 4, PI / 2), math.exp(4)),
    "ex-r4-sixth": ((PI / 6, PI / 2, PI / 3), math.exp(7)),
}


def criterion_1():
    start = time.perf_counter()
    worst_angle = worst_lam = worst_family = 0.0
    for ident, (angles, lam) in PUBLISHED.items():
        cls = classify(builtin_example(ident), full_plan(ident))
        for k, want in zip("IJK", angles):
            worst_angle = max(worst_angle, abs(cls.angles[k] - want))
        for key in ("mean", "min", "max"):
            worst_lam = max(worst_lam, abs(cls.dilation_summary[key] - lam) / lam)
    grid = np.linspace(0.0, PI / 2, 5)
    for a, b in itertools.product(grid, grid):
        cls = classify(builtin_example("ex-r4-angles", alpha=a, beta=b), full_plan("ex-r4-angles"))
        th = cls.angles
        worst_family = max(worst_family,
                           abs(th["J"] - PI / 2),
                           abs(math.cos(th["I"]) - abs(math.sin(a + b))),
                           abs(math.cos(th["K"]) - abs(math.cos(a + b))),
                           abs(cls.dilation_summary["mean"] - math.exp(5)) / math.exp(5))
    elapsed = time.perf_counter() - start
    ok = (worst_angle <= ANGLE_TOL and worst_lam <= DILATION_REL_TOL
          and worst_family <= FAMILY_TOL and elapsed <= RUNTIME_LIMIT_S)
    return report(1, ok, f"published examples: angle err {worst_angle:.1e}, λ rel err {worst_lam:.1e}; "
                         f"5x5 (α,β) grid err {worst_family:.1e}; {elapsed:.2f} s")


# -- 2 -------------------------------------------------------------------------

def criterion_2():
    worst = 0.0
    ok = True
    for m in (1, 2, 3):
        res = verify_triple(standard_triple(m))
        ok &= res.pop("ok")
        worst = max([worst, *res.values()])
    ok &= worst == 0.0
    return report(2, ok, f"standard_triple(1..3): max residual {worst!r}")


# -- 3 -------------------------------------------------------------------------

def criterion_3():
    worst = 0.0
    names = set()
    ok = True
    for ident in EXAMPLES:
        rep = identity_suite(builtin_example(ident), full_plan(ident))
        ok &= not rep.skipped
        names |= set(rep.residuals)
        worst = max(worst, rep.max_residual)
    ok &= worst <= IDENTITY_TOL and len(names) == 8
    return report(3, ok, f"{len(names)} identities on {len(EXAMPLES)} examples "
                         f"({POINTS}x{DIRECTIONS}): max {worst:.1e}")


# -- 4 -------------------------------------------------------------------------

class ScaledExtension:
    """``q -> (1 + |q - p|^2) P(q) seed``: another extension, equal at ``p``."""

    def __init__(self, geo, p, seed, part):
        self.geometry = geo
        self.inner = ProjectedField(geo, seed, part)
        self.p = np.asarray(p, dtype=float)

    def __call__(self, q):
        return (1.0 + float(np.sum((q - self.p) ** 2))) * self.inner(q)


class WavyField:
    """``q -> y + sin(q - p) * c``, a non-projected extension of ``y``."""

    def __init__(self, geo, p, y, c):
        self.geometry = geo
        self.p, self.y, self.c = np.asarray(p, dtype=float), y, c

    def __call__(self, q):
        return self.y + np.sin(q - self.p) * self.c


def sff_by_extension(geo, p, x, field):
    """(∇F_*)(X, Y) = ∇^F_X F_*Ỹ - F_*(∇_X Ỹ) for an extension Ỹ."""
    pushed = lambda q: geo.frame(q).jacobian @ field(q)  # noqa: E731
    return (pullback_derivative(geo, p, x, pushed)
            - geo.frame(p).jacobian @ field_derivative(field, p, x))


def criterion_4():
    sym = t_sym = skew = ext = 0.0
    for ident in EXAMPLES:
        geo = Geometry(builtin_example(ident))
        plan = full_plan(ident)
        for i, p in enumerate(plan.points(geo.dim)):
            fr = geo.frame(p)
            rng = plan.rng(i, 40)
            lam = fr.dilation
            for _ in range(2):
                e, f, g = rng.standard_normal((3, geo.dim))
                sym = max(sym, float(np.max(np.abs(second_fundamental_form(geo, p, e, f)
                                                   - second_fundamental_form(geo, p, f, e)))))
                for tensor in (oneill_T_full, oneill_A_full):
                    skew = max(skew, abs(np.dot(tensor(geo, p, e, f), g)
                                         + np.dot(f, tensor(geo, p, e, g))))
                u, v = random_unit_in(fr.vertical, rng, 2)
                x, y = random_unit_in(fr.horizontal, rng, 2)
                t_sym = max(t_sym, float(np.linalg.norm(oneill_T(geo, p, u, v)
                                                        - oneill_T(geo, p, v, u))))
                t2 = oneill_T(geo, p, u, v, extension=ScaledExtension(geo, p, v + x, VERTICAL))
                a2 = oneill_A(geo, p, x, y, extension=ScaledExtension(geo, p, y - u, HORIZONTAL))
                ext = max(ext, float(np.linalg.norm(oneill_T(geo, p, u, v) - t2)),
                          float(np.linalg.norm(oneill_A(geo, p, x, y) - a2)))
                hess = second_fundamental_form(geo, p, x, y)
                c = rng.standard_normal(geo.dim)
                for field in (ProjectedField(geo, y + u, HORIZONTAL), WavyField(geo, p, y, c)):
                    ext = max(ext, float(np.linalg.norm(sff_by_extension(geo, p, x, field) - hess))
                              / lam)
    ok = sym <= SFF_SYMMETRY_TOL and max(t_sym, skew, ext) <= TENSOR_TOL
    return report(4, ok, f"∇F_* symmetry {sym:.1e}; 𝒯 symmetry {t_sym:.1e}; "
                         f"skew-adjointness {skew:.1e}; extension independence {ext:.1e}")


# -- 5 -------------------------------------------------------------------------

def criterion_5():
    geo = Geometry(builtin_example("holo-z2"))
    plan = full_plan("holo-z2")
    worst = 0.0
    pairs = 0
    lams = []
    for i, p in enumerate(plan.points(4)):
        fr = geo.frame(p)
        lams.append(fr.dilation)
        rng = plan.rng(i, 50)
        xs = random_unit_in(fr.horizontal, rng, DIRECTIONS)
        ys = random_unit_in(fr.horizontal, rng, DIRECTIONS)
        for x, y in zip(xs, ys):
            diff = second_fundamental_form(geo, p, x, y) - conformal_sff_formula(geo, p, x, y)
            worst = max(worst, float(np.linalg.norm(diff)))
            pairs += 1
    nontrivial = max(lams) / min(lams) > 2.0
    ok = worst <= CONFORMAL_SFF_TOL and nontrivial
    return report(5, ok, f"holo-z2 conformal sff formula on {pairs} horizontal pairs: "
                         f"max residual {worst:.1e}; λ ∈ [{min(lams):.2f}, {max(lams):.2f}]")


# -- 6 -------------------------------------------------------------------------

def criterion_6():
    worst = 0.0
    holo_tau = 0.0
    for ident in EXAMPLES:
        geo = Geometry(builtin_example(ident))
        for p in full_plan(ident).points(geo.dim):
            tf = tension_field(geo, p)
            worst = max(worst, tf.residual)
            if ident == "holo-z2":
                holo_tau = max(holo_tau, float(np.linalg.norm(tf.trace_route)),
                               float(np.linalg.norm(tf.formula_route)))
    ok = worst <= TENSION_TOL and holo_tau <= TENSION_TOL
    return report(6, ok, f"τ routes agree to {worst:.1e} on all examples; "
                         f"holo-z2 |τ| ≤ {holo_tau:.1e}")


# -- 7 -------------------------------------------------------------------------

def criterion_7():
    checked = 0
    mismatches = []
    failures = []
    for ident in EXAMPLES:
        suite = run_full_suite(builtin_example(ident), full_plan(ident))
        failures += [f"{ident}:{f}" for f in suite.summary["failures"]]
        for v in suite.verdicts:
            if v.is_skipped or v.lhs is None:
                continue
            checked += 1
            if v.agreement is not True:
                mismatches.append(f"{ident}:{v.theorem_id}")
    ok = checked > 0 and not mismatches and not failures
    detail = f"{checked} biconditional checks, {len(mismatches)} mismatches"
    if mismatches or failures:
        detail += f" ({', '.join(mismatches + failures)})"
    return report(7, ok, detail)


# -- 8 -------------------------------------------------------------------------

def _cli_json(hash_seed):
    env = dict(os.environ, PYTHONHASHSEED=str(hash_seed))
    env.pop("SUBMERSION_LAB_SEED", None)
    cmd = [sys.executable, "-m", "submersion_lab", "verify", "--builtin", "holo-z1z2",
           "--points", "6", "--dirs", "16", "--seed", "3", "--format", "json"]
    return subprocess.run(cmd, env=env, capture_output=True, check=True).stdout


def criterion_8():
    a, b = _cli_json(1), _cli_json(2)
    ok = a == b and len(a) > 0
    return report(8, ok, f"two verify runs (seed 3, separate processes): "
                         f"{'byte-identical' if ok else 'differ'}, {len(a)} bytes")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
