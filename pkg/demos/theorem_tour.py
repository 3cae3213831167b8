"""Run the theorem suite on a few builtin examples and show each verdict."""

from submersion_lab import EXAMPLES, SamplingPlan, builtin_example, run_full_suite

for ident in ["ex-r8-diag", "holo-z2", "inv-r3"]:
    plan = SamplingPlan(n_points=6, n_directions=16, exclusion=EXAMPLES[ident].exclusion)
    suite = run_full_suite(builtin_example(ident), plan)
    print(f"== {ident}: {suite.classification.verdict}, ok={suite.summary['ok']}")
    print(f"   identities max {suite.identities.max_residual:.1e}, "
          f"commutation max {suite.commutation.max_residual:.1e}")
    for v in suite.verdicts:
        if v.is_skipped:
            print(f"   {v.theorem_id:11s} skipped: {v.skipped[0]}")
            continue
        conds = ", ".join(f"{c.structure}:{'yes' if c.holds else 'no'}" for c in v.conditions)
        print(f"   {v.theorem_id:11s} {v.status:6s} link {v.max_residual:.1e}"
              f"  lhs={v.lhs}  [{conds}]")
