"""Classify every builtin example and print its slant angles and dilation."""

import math

from submersion_lab import EXAMPLES, SamplingPlan, builtin_example, classify
from submersion_lab.report import exp_label, pi_multiple


def label(theta):
    if theta is None:
        return "undefined"
    return pi_multiple(theta) or f"{theta:.6f}"


for ident, entry in EXAMPLES.items():
    plan = SamplingPlan(n_points=16, n_directions=32, exclusion=entry.exclusion)
    cls = classify(builtin_example(ident), plan)
    angles = ", ".join(f"θ_{k}={label(v)}" for k, v in cls.angles.items())
    dil = cls.dilation_summary
    lam = exp_label(dil["mean"]) if math.isclose(dil["min"], dil["max"], rel_tol=1e-9) else None
    lam = lam or f"[{dil['min']:.3f}, {dil['max']:.3f}]"
    print(f"{ident:13s} {cls.verdict:22s} {angles}  λ={lam}")

# The (α, β) family: cos θ_I = |sin(α + β)| and cos θ_K = |cos(α + β)|.
print()
for a, b in [(0.0, 0.0), (0.3, 0.4), (math.pi / 8, math.pi / 8), (math.pi / 4, math.pi / 4)]:
    cls = classify(builtin_example("ex-r4-angles", alpha=a, beta=b),
                   SamplingPlan(n_points=4, n_directions=8))
    th = cls.angles
    print(f"α+β={a + b:.4f}  cos θ_I={math.cos(th['I']):.12f} (|sin|={abs(math.sin(a + b)):.12f})"
          f"  cos θ_K={math.cos(th['K']):.12f} (|cos|={abs(math.cos(a + b)):.12f})")
