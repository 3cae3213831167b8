"""Second-order geometry of F(x) = (x3^2 - x4^2, 2 x3 x4), i.e. z2 -> z2^2.

The fibres are the planes z2 = const, so 𝒯 vanishes; the dilation 2|z2|
varies horizontally, so 𝒜 and ∇F_* do not.
"""

import numpy as np

from submersion_lab import Geometry, builtin_example, oneill_A, oneill_T, tension_field
from submersion_lab.oneill import conformal_sff_formula, second_fundamental_form

geo = Geometry(builtin_example("holo-z2"))
p = np.array([0.3, -0.2, 0.7, 0.4])
fr = geo.frame(p)
print("point", p)
print("dilation", fr.dilation, "expected", 2 * np.hypot(0.7, 0.4))

e1, e2, e3, e4 = np.eye(4)
print("T_{e1} e2 =", oneill_T(geo, p, e1, e2))

x, y = fr.horizontal.basis.T
print("A_x y     =", oneill_A(geo, p, x, y))
print("A_x x     =", oneill_A(geo, p, x, x))

for a, b in [(x, x), (x, y), (y, y)]:
    hess = second_fundamental_form(geo, p, a, b)
    formula = conformal_sff_formula(geo, p, a, b)
    print(f"∇F_* hessian {hess}  formula {formula}  diff {np.linalg.norm(hess - formula):.1e}")

tau = tension_field(geo, p)
print("tension: trace", tau.trace_route, "formula", tau.formula_route)
