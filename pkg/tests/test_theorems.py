import numpy as np
import pytest

from submersion_lab import builtin_example, parse_map, standard_triple
from submersion_lab.errors import UnknownTheorem
from submersion_lab.quaternionic import ComplexStructure, HyperkahlerTriple, verify_triple
from submersion_lab.slant import classify
from submersion_lab.submersion import SamplingPlan
from submersion_lab.theorems import (FAIL, PASS, SKIPPED, THEOREM_IDS, check_theorem,
                                     commutation_suite, run_full_suite, validate_theorem_ids)

from conftest import ALL_EXAMPLES, plan_for


def _fast(ident):
    return plan_for(ident, n_points=3, n_directions=16)


@pytest.fixture(scope="module")
def suites():
    return {ident: run_full_suite(builtin_example(ident), _fast(ident)) for ident in ALL_EXAMPLES}


@pytest.mark.parametrize("ident", ALL_EXAMPLES)
def test_every_builtin_agrees(suites, ident):
    suite = suites[ident]
    assert suite.summary["ok"], suite.summary["failures"]
    for v in suite.verdicts:
        assert v.status in (PASS, SKIPPED), (v.theorem_id, v.status, v.max_residual)
        if not v.is_skipped:
            assert v.max_residual <= 1e-6 and v.agreement is not False


@pytest.mark.parametrize("ident", ALL_EXAMPLES)
def test_commutation_relations(suites, ident):
    comm = suites[ident].commutation
    assert not comm.skipped and comm.max_residual <= 1e-6


def test_suite_covers_all_ids(suites):
    assert [v.theorem_id for v in suites["ex-r4-axes"].verdicts] == list(THEOREM_IDS)


def test_linear_maps_are_totally_geodesic(suites):
    tg = {v.theorem_id: v for v in suites["ex-r8-diag"].verdicts}["T-TG-MAP"]
    assert tg.lhs is True and tg.holds


def test_holo_mixed_tg_is_decided_by_homothety(suites):
    # dilation 2|z2| grows along the horizontal directions, so F is not mixed totally geodesic
    v = {v.theorem_id: v for v in suites["holo-z2"].verdicts}["T-MIXED-TG"]
    assert v.holds and not v.is_skipped


def test_harmonic_holomorphic_map(suites):
    v = {v.theorem_id: v for v in suites["holo-z2"].verdicts}["T-HARM"]
    assert v.status == PASS and v.lhs is True


def test_unknown_theorem():
    with pytest.raises(UnknownTheorem, match="T-NOPE"):
        validate_theorem_ids(["T-INT", "T-NOPE"])
    with pytest.raises(KeyError):
        check_theorem("T-NOPE", builtin_example("ex-r4-axes"))


def test_non_slant_input_short_circuits():
    spec = parse_map("dim 4 -> 2\nf1 = x1\nf2 = 2*x2\n")
    suite = run_full_suite(spec, SamplingPlan(n_points=3, n_directions=8))
    assert suite.verdicts == [] and not suite.summary["ok"]
    assert suite.identities is None and suite.commutation is None
    v = check_theorem("T-INT", spec, SamplingPlan(n_points=3))
    assert v.status == SKIPPED and v.skipped
    assert commutation_suite(spec, SamplingPlan(n_points=3)).skipped


def test_vacuous_equidimensional_map():
    iso = parse_map("dim 4 -> 4\nf1 = x1\nf2 = x2\nf3 = x3\nf4 = x4\n")
    plan = SamplingPlan(n_points=3, n_directions=16)
    assert check_theorem("T-VFOL", iso, plan).status == SKIPPED
    assert check_theorem("T-HARM", iso, plan).status != FAIL


def _relabel(t):
    return HyperkahlerTriple(ComplexStructure("I", t.J.matrix), ComplexStructure("J", t.K.matrix),
                             ComplexStructure("K", t.I.matrix), t.m)


@pytest.mark.parametrize("ident", ["ex-r4-sixth", "holo-z1z2"])
def test_cyclic_relabelling_is_harmless(ident):
    spec = builtin_example(ident)
    plan = _fast(ident)
    base = standard_triple(spec.m)
    cyc = _relabel(base)
    assert verify_triple(cyc)["ok"]
    a = classify(spec, plan, triple=base).angles
    b = classify(spec, plan, triple=cyc).angles
    assert b["I"] == pytest.approx(a["J"], abs=1e-12)
    assert b["J"] == pytest.approx(a["K"], abs=1e-12)
    assert b["K"] == pytest.approx(a["I"], abs=1e-12)
    s1 = run_full_suite(spec, plan)
    s2 = run_full_suite(spec, plan, triple=cyc)
    assert s1.summary["ok"] and s2.summary["ok"]
    for v1, v2 in zip(s1.verdicts, s2.verdicts):
        assert v1.theorem_id == v2.theorem_id and v1.holds == v2.holds
        assert v1.lhs == v2.lhs


def test_sixth_example_angles(suites):
    angles = suites["ex-r4-sixth"].classification.angles
    assert np.allclose([angles[k] for k in "IJK"], [np.pi / 6, np.pi / 2, np.pi / 3], atol=1e-9)


def test_selected_subset_keeps_canonical_order():
    spec = builtin_example("ex-r4-axes")
    suite = run_full_suite(spec, _fast("ex-r4-axes"), theorems=["T-MIN", "T-INT"])
    assert [v.theorem_id for v in suite.verdicts] == ["T-INT", "T-MIN"]


def test_verdict_conditions_are_exposed(suites):
    v = {v.theorem_id: v for v in suites["holo-z1z2"].verdicts}["T-INT"]
    assert v.conditions and all(c.max_residual >= 0 for c in v.conditions)
    assert v.samples and max(r for _, _, r in v.samples) == pytest.approx(v.max_residual)


def test_A_antisymmetry_defect_is_reported_not_asserted(suites):
    # λ = |x| varies along the fibres of holo-z1z2, so 𝒜 is not antisymmetric there
    assert suites["holo-z1z2"].commutation.antisymmetry_defect > 1e-3
    assert suites["holo-z1z2"].summary["ok"]
    assert suites["ex-r8-diag"].commutation.antisymmetry_defect == 0.0
