"""Numerical consistency checks for the structure theorems of (almost)
h-conformal slant submersions.

Every theorem is checked in two layers:

* the *link*: an exact identity, valid on any sample, that ties the
  geometric side (a) to the printed condition for structure R. Its residual
  is the theorem's ``max_residual``.
* the *verdicts*: side (a) and each printed condition are decided separately
  against ``identity_tol``; for equivalences the two decisions must agree.

Terms are evaluated as printed. Projected-constant extensions supply the
vector fields, so ``∇_X B_R Y`` is the derivative of ``q -> B_R(q) P_H(q) y``
and so on. Target inner products use the Euclidean metric.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UnknownTheorem
from .oneill import (OperatorField, conformal_sff_formula, field_derivative, mean_curvature,
                     nabla_phi_omega, nabla_phi_omega_formula, oneill_A_full, oneill_T_full,
                     tension_field)
from .quaternionic import standard_triple
from .slant import classify, identity_suite, mu_basis
from .submersion import (DEFAULT_TOL, SamplingPlan, as_geometry, is_horizontally_homothetic,
                         random_unit_in)

THEOREM_IDS = (
    "T-INT", "T-HOM-INT", "T-HFOL", "T-HOM-HFOL", "T-VFOL",
    "T-MIN", "T-HARM", "T-MIXED-TG", "T-TG-MAP", "T-DECOMP",
)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
INVESTIGATE = "investigate_tolerance"

# reading of the long inner product in the integrability condition
INT_GROUPING_NOTE = ("integrability condition read with every term through "
                     "2g(X, C_R Y)∇ln λ inside the single g(·, ω_R V) pairing")


@dataclass
class Condition:
    """One side of a theorem, decided against the identity tolerance."""

    name: str
    structure: str
    max_residual: float
    holds: bool
    converse_applicable: bool = True

    def __post_init__(self):
        self.max_residual = float(self.max_residual)
        self.holds = bool(self.holds)
        self.converse_applicable = bool(self.converse_applicable)


@dataclass
class TheoremVerdict:
    theorem_id: str
    holds: bool
    status: str
    max_residual: float
    samples: list = field(default_factory=list, repr=False)  # (point, structure, link residual)
    lhs: object = None  # verdict of side (a); None when not evaluated
    conditions: list = field(default_factory=list)
    agreement: object = None
    skipped: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def is_skipped(self):
        return self.status == SKIPPED

    def condition(self, name, structure=None):
        for c in self.conditions:
            if c.name == name and (structure is None or c.structure == structure):
                return c
        raise KeyError((name, structure))


# ---------------------------------------------------------------------------
# per-point evaluation context


class _Local:
    """Frame data, structure operators and field derivatives at one sample point."""

    def __init__(self, geo, p, R):
        self.geo = geo
        self.p = p
        fr = geo.frame(p)
        self.PV, self.PH = fr.P_V, fr.P_H
        self.J = fr.jacobian
        self.lam = fr.dilation
        self.grad = geo.grad_ln_dilation(p)[0]
        Rm = R.matrix
        self.Rm = Rm
        self.phi = self.PV @ Rm @ self.PV
        self.omega = self.PH @ Rm @ self.PV
        self.B = self.PV @ Rm @ self.PH
        self.C = self.PH @ Rm @ self.PH
        self.build = {
            "V": lambda f: f.P_V,
            "H": lambda f: f.P_H,
            "phi": lambda f: f.P_V @ Rm @ f.P_V,
            "omega": lambda f: f.P_H @ Rm @ f.P_V,
            "B": lambda f: f.P_V @ Rm @ f.P_H,
            "C": lambda f: f.P_H @ Rm @ f.P_H,
            "omega_phi": lambda f: f.P_H @ Rm @ f.P_V @ Rm @ f.P_V,
        }

    def nabla(self, kind, seed, direction):
        """∇_direction of the extension ``q -> M_kind(q) seed``."""
        return field_derivative(OperatorField(self.geo, self.build[kind], seed), self.p, direction)

    def nabla_F(self, kind, seed, direction):
        """∇^F_direction of ``q -> F_*(q) M_kind(q) seed``."""
        f = OperatorField(self.geo, self.build[kind], seed, push=True)
        return field_derivative(f, self.p, direction)

    def A(self, e, f):
        return oneill_A_full(self.geo, self.p, e, f)

    def T(self, e, f):
        return oneill_T_full(self.geo, self.p, e, f)

    def d_ln(self, v):
        return float(np.dot(v, self.grad))

    def sff(self, a, b):
        return np.einsum("kij,i,j->k", self.geo.hessian(self.p), a, b)

    def gN(self, a, b):
        return float(np.dot(a, b)) / self.lam ** 2


# ---------------------------------------------------------------------------
# the individual expressions


def _int_terms(c, x, y, v):
    """(g([X,Y], V), LHS, RHS) of the integrability condition."""
    bracket = c.nabla("H", y, x) - c.nabla("H", x, y)
    lhs_a = float(np.dot(c.PV @ bracket, v))
    Cx, Cy, Bx, By = c.C @ x, c.C @ y, c.B @ x, c.B @ y
    phi_v, omega_v = c.phi @ v, c.omega @ v
    left = c.gN(c.nabla_F("C", x, y) - c.nabla_F("C", y, x), c.J @ omega_v)
    first = (c.PV @ c.nabla("B", y, x) + c.A(x, Cy)
             - c.PV @ c.nabla("B", x, y) - c.A(y, Cx))
    no_grad = c.A(x, By) - c.A(y, Bx)
    grad_terms = (-c.d_ln(x) * Cy + c.d_ln(y) * Cx - c.d_ln(Cy) * x + c.d_ln(Cx) * y
                  + 2 * float(np.dot(x, Cy)) * c.grad)
    right_plain = float(np.dot(first, phi_v)) + float(np.dot(no_grad, omega_v))
    right_grad = float(np.dot(grad_terms, omega_v))
    return lhs_a, left, right_plain, right_grad


def _hfol_terms(c, x, y, v):
    """(g(∇_X Y, V), LHS, RHS without λ terms, λ-gradient terms) of the foliation condition."""
    lhs_a = float(np.dot(c.nabla("H", y, x), v))
    phi_v, omega_v = c.phi @ v, c.omega @ v
    omega_phi_v = c.omega @ phi_v
    Cy, By = c.C @ y, c.B @ y
    left = (c.gN(c.nabla_F("H", y, x), c.J @ omega_phi_v)
            - c.gN(c.nabla_F("C", y, x), c.J @ omega_v))
    plain = float(np.dot(c.A(x, By), omega_v))
    g1 = -c.d_ln(x) * Cy - c.d_ln(Cy) * x + float(np.dot(x, Cy)) * c.grad
    g2 = -c.d_ln(x) * y - c.d_ln(y) * x + float(np.dot(x, y)) * c.grad
    grad_terms = float(np.dot(g1, omega_v)) - float(np.dot(g2, omega_phi_v))
    return lhs_a, left, plain, grad_terms


def _vfol_terms(c, v, w, x):
    """(g(∇_V W, X), left, right) of the fibre foliation condition."""
    lhs_a = float(np.dot(c.nabla("V", w, v), x))
    left = float(np.dot(c.nabla("omega_phi", w, v), x))
    right = (float(np.dot(c.T(v, c.omega @ w), c.B @ x))
             + float(np.dot(c.PH @ c.nabla("omega", w, v), c.C @ x)))
    return lhs_a, left, right


def _tg_vertical(c, v, w):
    """C_R(𝒯_V φW + ℋ∇_V ωW) + ω_R(∇̂_V φW + 𝒯_V ωW)."""
    inner_h = c.T(v, c.phi @ w) + c.PH @ c.nabla("omega", w, v)
    inner_v = c.PV @ c.nabla("phi", w, v) + c.T(v, c.omega @ w)
    return c.C @ inner_h + c.omega @ inner_v


def _tg_mixed(c, x, v):
    """C_R(𝒜_X φV + ℋ∇_X ωV) + ω_R(𝒱∇_X φV + 𝒜_X ωV)."""
    inner_h = c.A(x, c.phi @ v) + c.PH @ c.nabla("omega", v, x)
    inner_v = c.PV @ c.nabla("phi", v, x) + c.A(x, c.omega @ v)
    return c.C @ inner_h + c.omega @ inner_v


# ---------------------------------------------------------------------------
# sampling helpers


def _samples_per_point(plan):
    return max(2, plan.n_directions // 8)


class _Run:
    def __init__(self, geo, plan, tol, cls, triple, theorem_index):
        self.geo = geo
        self.plan = plan
        self.tol = tol
        self.cls = cls
        self.triple = triple
        self.k = _samples_per_point(plan)
        self.index = theorem_index
        self.points = list(cls.conformality.points)

    def draws(self, i):
        """Random unit vertical/horizontal vectors at point ``i`` (deterministic)."""
        fr = self.geo.frame(self.points[i])
        rng = self.plan.rng(i, 3, self.index)
        V = random_unit_in(fr.vertical, rng, self.k)
        W = random_unit_in(fr.vertical, rng, self.k)
        X = random_unit_in(fr.horizontal, rng, self.k)
        Y = random_unit_in(fr.horizontal, rng, self.k)
        return fr, V, W, X, Y

    def theta(self, R):
        return self.cls.angles.get(R.name)

    def omega_nonzero(self, R):
        th = self.theta(R)
        return th is not None and math.sin(th) > self.tol.angle_tol_rad

    def mu_nonzero(self, R):
        return all(mu_basis(R, self.geo.frame(p)).dim > 0 for p in self.points)

    def homothety(self):
        return is_horizontally_homothetic(self.geo, self.plan, self.tol, points=self.points)


def _finish(tid, tol, link, samples, lhs, conditions, notes, skipped=()):
    """Assemble a verdict; equivalence is required only where the converse applies."""
    agreement = None
    if lhs is not None:
        lhs = bool(lhs)
    if lhs is not None and conditions:
        ok = True
        for c in conditions:
            if c.converse_applicable:
                ok &= (bool(c.holds) == lhs)
            else:
                ok &= (not lhs) or bool(c.holds)
        agreement = ok
    within = bool(link <= tol.identity_tol)
    holds = within and agreement is not False
    if holds:
        status = PASS
    elif within:
        status = INVESTIGATE
    else:
        status = FAIL
    return TheoremVerdict(tid, holds, status, link, samples, lhs, conditions, agreement,
                          list(skipped), notes)


def _skip(tid, reason):
    return TheoremVerdict(tid, False, SKIPPED, 0.0, [], None, [], None, [reason], [])


def _converse_note(conditions, why):
    bad = [c.structure for c in conditions if not c.converse_applicable]
    if bad:
        return [f"converse not applicable for {', '.join(bad)}: {why}"]
    return []


# ---------------------------------------------------------------------------
# theorem checks


def _check_int(run):
    tol = run.tol
    link = 0.0
    samples = []
    side_a = 0.0
    cond = {R.name: 0.0 for R in run.triple}
    for i, p in enumerate(run.points):
        _, V, _, X, Y = run.draws(i)
        for R in run.triple:
            c = _Local(run.geo, p, R)
            for v, x, y in zip(V, X, Y):
                a, left, plain, grad = _int_terms(c, x, y, v)
                res = abs(a - (plain + grad - left))
                samples.append((i, R.name, res))
                link = max(link, res)
                side_a = max(side_a, abs(a))
                cond[R.name] = max(cond[R.name], abs(left - plain - grad))
    conditions = [Condition("condition", r, cond[r], cond[r] <= tol.identity_tol) for r in cond]
    return _finish("T-INT", tol, link, samples, side_a <= tol.identity_tol, conditions,
                   [INT_GROUPING_NOTE])


def _check_hom_int(run):
    tol = run.tol
    hyp = _check_int(run)
    integrable = hyp.lhs
    if not integrable:
        v = _skip("T-HOM-INT", "hypothesis: (ker F_*)^⊥ is not integrable on the samples")
        v.notes.append(f"max |g([X,Y],V)| exceeds {tol.identity_tol:g}")
        return v
    link = 0.0
    samples = []
    cond = {R.name: 0.0 for R in run.triple}
    for i, p in enumerate(run.points):
        _, V, _, X, Y = run.draws(i)
        for R in run.triple:
            c = _Local(run.geo, p, R)
            for v, x, y in zip(V, X, Y):
                a, left, plain, grad = _int_terms(c, x, y, v)
                # with [X,Y] vertical-free the gap equals the λ-gradient terms
                res = abs((left - plain) - grad + a)
                samples.append((i, R.name, res))
                link = max(link, res)
                cond[R.name] = max(cond[R.name], abs(left - plain))
    applicable = {R.name: run.omega_nonzero(R) and run.mu_nonzero(R) for R in run.triple}
    conditions = [Condition("condition", r, cond[r], cond[r] <= tol.identity_tol, applicable[r])
                  for r in cond]
    homothetic = run.homothety()
    notes = _converse_note(conditions, "needs ω_R(ker F_*) ≠ 0 and μ^R ≠ 0")
    notes.append(f"max |∇_H ln λ| = {homothetic.max_horizontal_gradient:.3e}")
    return _finish("T-HOM-INT", tol, link, samples, homothetic.holds, conditions, notes)


def _check_hfol(run, tid="T-HFOL"):
    tol = run.tol
    link = 0.0
    samples = []
    side_a = 0.0
    cond = {R.name: 0.0 for R in run.triple}
    for i, p in enumerate(run.points):
        _, V, _, X, Y = run.draws(i)
        for R in run.triple:
            s2 = math.sin(run.theta(R)) ** 2
            c = _Local(run.geo, p, R)
            for v, x, y in zip(V, X, Y):
                a, left, plain, grad = _hfol_terms(c, x, y, v)
                res = abs(s2 * a - (plain + grad - left))
                samples.append((i, R.name, res))
                link = max(link, res)
                side_a = max(side_a, abs(a))
                cond[R.name] = max(cond[R.name], abs(left - plain - grad))
    conditions = [Condition("condition", R.name, cond[R.name], cond[R.name] <= tol.identity_tol,
                            run.omega_nonzero(R)) for R in run.triple]
    notes = _converse_note(conditions, "sin θ_R = 0 makes the condition vacuous")
    return _finish(tid, tol, link, samples, side_a <= tol.identity_tol, conditions, notes)


def _check_hom_hfol(run):
    tol = run.tol
    hyp = _check_hfol(run)
    if not hyp.lhs:
        return _skip("T-HOM-HFOL", "hypothesis: (ker F_*)^⊥ is not totally geodesic on the samples")
    link = 0.0
    samples = []
    cond = {R.name: 0.0 for R in run.triple}
    for i, p in enumerate(run.points):
        _, V, _, X, Y = run.draws(i)
        for R in run.triple:
            s2 = math.sin(run.theta(R)) ** 2
            c = _Local(run.geo, p, R)
            for v, x, y in zip(V, X, Y):
                a, left, plain, grad = _hfol_terms(c, x, y, v)
                res = abs((left - plain) - grad + s2 * a)
                samples.append((i, R.name, res))
                link = max(link, res)
                cond[R.name] = max(cond[R.name], abs(left - plain))
    applicable = {R.name: run.omega_nonzero(R) and run.mu_nonzero(R) for R in run.triple}
    conditions = [Condition("condition", r, cond[r], cond[r] <= tol.identity_tol, applicable[r])
                  for r in cond]
    homothetic = run.homothety()
    notes = _converse_note(conditions, "needs ω_R(ker F_*) ≠ 0 and μ^R ≠ 0")
    notes.append(f"max |∇_H ln λ| = {homothetic.max_horizontal_gradient:.3e}")
    return _finish("T-HOM-HFOL", tol, link, samples, homothetic.holds, conditions, notes)


def _check_vfol(run, tid="T-VFOL"):
    tol = run.tol
    link = 0.0
    samples = []
    side_a = 0.0
    cond = {R.name: 0.0 for R in run.triple}
    for i, p in enumerate(run.points):
        _, V, W, X, _ = run.draws(i)
        for R in run.triple:
            s2 = math.sin(run.theta(R)) ** 2
            c = _Local(run.geo, p, R)
            for v, w, x in zip(V, W, X):
                a, left, right = _vfol_terms(c, v, w, x)
                res = abs(s2 * a - (right - left))
                samples.append((i, R.name, res))
                link = max(link, res)
                side_a = max(side_a, abs(a))
                cond[R.name] = max(cond[R.name], abs(left - right))
    conditions = [Condition("condition", R.name, cond[R.name], cond[R.name] <= tol.identity_tol,
                            run.omega_nonzero(R)) for R in run.triple]
    notes = _converse_note(conditions, "sin θ_R = 0 makes the condition vacuous")
    return _finish(tid, tol, link, samples, side_a <= tol.identity_tol, conditions, notes)


def _check_decomp(run):
    tol = run.tol
    h = _check_hfol(run)
    v = _check_vfol(run)
    conditions = []
    for ch, cv in zip(h.conditions, v.conditions):
        res = max(ch.max_residual, cv.max_residual)
        conditions.append(Condition("condition", ch.structure, res, ch.holds and cv.holds,
                                    ch.converse_applicable and cv.converse_applicable))
    notes = _converse_note(conditions, "sin θ_R = 0 makes the conditions vacuous")
    return _finish("T-DECOMP", tol, max(h.max_residual, v.max_residual), h.samples + v.samples,
                   bool(h.lhs and v.lhs), conditions, notes)


def _parallel_omega(run):
    """Structures with θ_R < π/2 whose ω_R is parallel on the samples, with residuals."""
    tol = run.tol
    out = {}
    for R in run.triple:
        th = run.theta(R)
        if th is None or th >= math.pi / 2 - tol.angle_tol_rad:
            continue
        worst = 0.0
        cross = 0.0
        for i, p in enumerate(run.points):
            _, V, W, _, _ = run.draws(i)
            for v, w in zip(V, W):
                nphi, nomega = nabla_phi_omega(run.geo, p, v, w, R)
                fphi, fomega = nabla_phi_omega_formula(run.geo, p, v, w, R)
                worst = max(worst, float(np.linalg.norm(nomega)))
                cross = max(cross, float(np.linalg.norm(nphi - fphi)),
                            float(np.linalg.norm(nomega - fomega)))
        out[R.name] = (worst, cross)
    return out


def _check_min(run):
    tol = run.tol
    par = _parallel_omega(run)
    cross = max((c for _, c in par.values()), default=0.0)
    usable = [r for r, (w, _) in par.items() if w <= tol.identity_tol]
    if not usable:
        v = _skip("T-MIN", "hypothesis: no structure with θ_R < π/2 has ∇ω_R = 0 on the samples")
        v.max_residual = cross
        return v
    worst_h = 0.0
    samples = []
    for i, p in enumerate(run.points):
        h = float(np.linalg.norm(mean_curvature(run.geo, p)))
        samples.append((i, "H", h))
        worst_h = max(worst_h, h)
    conditions = [Condition("parallel omega", r, par[r][0], True) for r in usable]
    conditions.append(Condition("minimal fibres", "-", worst_h, worst_h <= tol.identity_tol))
    notes = ["ω_R parallel certified on the samples only",
             f"∇φ/∇ω closed-form cross-check residual {cross:.3e}"]
    verdict = _finish("T-MIN", tol, max(cross, worst_h), samples, None, conditions, notes)
    return verdict


def _check_harm(run):
    tol = run.tol
    n = run.geo.spec.codomain_dim
    link = 0.0
    worst_tau = 0.0
    samples = []
    for i, p in enumerate(run.points):
        tf = tension_field(run.geo, p)
        lam = run.geo.frame(p).dilation
        res = tf.residual / lam
        samples.append((i, "tau", res))
        link = max(link, res)
        worst_tau = max(worst_tau, float(np.linalg.norm(tf.trace_route)) / lam)
    harmonic = worst_tau <= tol.identity_tol
    conditions = [Condition("harmonic", "-", worst_tau, harmonic)]
    notes = []
    par = _parallel_omega(run) if run.geo.spec.codomain_dim < run.geo.dim else {}
    hyp = [r for r, (w, _) in par.items() if w <= tol.identity_tol]
    lhs = None
    if hyp:
        if n == 2:
            notes.append(f"n = 2 with ω_{hyp[0]} parallel on the samples: harmonic expected")
            lhs = True
        else:
            lhs = run.homothety().holds
            notes.append(f"n > 2 with ω_{hyp[0]} parallel on the samples: harmonic iff homothetic")
    else:
        notes.append("no structure with parallel ω_R and θ_R < π/2: route consistency only")
    return _finish("T-HARM", tol, link, samples, lhs, conditions, notes)


def _check_mixed_tg(run):
    tol = run.tol
    link = 0.0
    samples = []
    cond = {R.name: 0.0 for R in run.triple}
    for i, p in enumerate(run.points):
        fr, V, _, _, _ = run.draws(i)
        rng = run.plan.rng(i, 4, run.index)
        for R in run.triple:
            c = _Local(run.geo, p, R)
            mu = mu_basis(R, fr)
            Xs = random_unit_in(mu, rng, run.k)
            for v, x in zip(V, Xs):
                wv = c.omega @ v
                val = c.sff(wv, x)
                formula = c.d_ln(wv) * (c.J @ x) + c.d_ln(x) * (c.J @ wv)
                res = float(np.linalg.norm(val - formula)) / c.lam
                samples.append((i, R.name, res))
                link = max(link, res)
                cond[R.name] = max(cond[R.name], float(np.linalg.norm(val)) / c.lam)
    applicable = {R.name: run.omega_nonzero(R) and run.mu_nonzero(R) for R in run.triple}
    conditions = [Condition("(ω_R ker, μ^R)-totally geodesic", r, cond[r],
                            cond[r] <= tol.identity_tol, applicable[r]) for r in cond]
    homothetic = run.homothety()
    notes = _converse_note(conditions, "needs ω_R(ker F_*) ≠ 0 and μ^R ≠ 0")
    return _finish("T-MIXED-TG", tol, link, samples, homothetic.holds, conditions, notes)


def _check_tg_map(run):
    tol = run.tol
    link = 0.0
    samples = []
    worst_sff = 0.0
    c1 = {R.name: 0.0 for R in run.triple}
    c3 = {R.name: 0.0 for R in run.triple}
    for i, p in enumerate(run.points):
        _, V, W, X, Y = run.draws(i)
        for R in run.triple:
            c = _Local(run.geo, p, R)
            for v, w, x, y in zip(V, W, X, Y):
                e1 = _tg_vertical(c, v, w)
                e3 = _tg_mixed(c, x, v)
                s_vw, s_xv, s_xy = c.sff(v, w), c.sff(x, v), c.sff(x, y)
                res = max(np.linalg.norm(c.J @ e1 - s_vw), np.linalg.norm(c.J @ e3 - s_xv)) / c.lam
                samples.append((i, R.name, float(res)))
                link = max(link, float(res))
                c1[R.name] = max(c1[R.name], float(np.linalg.norm(e1)))
                c3[R.name] = max(c3[R.name], float(np.linalg.norm(e3)))
                worst_sff = max(worst_sff, max(np.linalg.norm(s_vw), np.linalg.norm(s_xv),
                                               np.linalg.norm(s_xy)) / c.lam)
            if X.shape[0]:
                # (∇F_*)(X, Y) = 0 on horizontal pairs iff horizontally homothetic
                x, y = X[0], Y[0]
                res = np.linalg.norm(c.sff(x, y) - conformal_sff_formula(run.geo, p, x, y)) / c.lam
                link = max(link, float(res))
    homothetic = run.homothety()
    conditions = []
    for R in run.triple:
        res = max(c1[R.name], c3[R.name])
        ok = c1[R.name] <= tol.identity_tol and c3[R.name] <= tol.identity_tol and homothetic.holds
        conditions.append(Condition("(i) ∧ (ii) ∧ (iii)", R.name, res, ok))
    notes = [f"max |∇_H ln λ| = {homothetic.max_horizontal_gradient:.3e}"]
    return _finish("T-TG-MAP", tol, link, samples, worst_sff <= tol.identity_tol, conditions, notes)


_CHECKS = {
    "T-INT": _check_int,
    "T-HOM-INT": _check_hom_int,
    "T-HFOL": _check_hfol,
    "T-HOM-HFOL": _check_hom_hfol,
    "T-VFOL": _check_vfol,
    "T-MIN": _check_min,
    "T-HARM": _check_harm,
    "T-MIXED-TG": _check_mixed_tg,
    "T-TG-MAP": _check_tg_map,
    "T-DECOMP": _check_decomp,
}


def validate_theorem_ids(ids):
    bad = [t for t in ids if t not in _CHECKS]
    if bad:
        raise UnknownTheorem(f"unknown theorem id: {', '.join(bad)}")
    return list(ids)


def check_theorem(theorem_id, spec, plan=SamplingPlan(), tol=DEFAULT_TOL, classification=None,
                  triple=None):
    """Evaluate both sides of one theorem on the sampling plan."""
    validate_theorem_ids([theorem_id])
    geo = as_geometry(spec, tol)
    triple = triple or standard_triple(geo.spec.m)
    cls = classification or classify(geo, plan, geo.tol, triple)
    if not cls.is_slant:
        return _skip(theorem_id, f"classification is {cls.verdict}")
    if geo.spec.codomain_dim == geo.dim and theorem_id != "T-HARM":
        return _skip(theorem_id, "ker F_* is trivial: the statement is vacuous")
    run = _Run(geo, plan, geo.tol, cls, triple, THEOREM_IDS.index(theorem_id))
    return _CHECKS[theorem_id](run)


# ---------------------------------------------------------------------------
# commutation relations


COMMUTATION_NAMES = (
    "∇̂_V φW + 𝒯_V ωW - φ∇̂_V W - B𝒯_V W",
    "𝒯_V φW + ℋ∇_V ωW - C𝒯_V W - ω∇̂_V W",
    "𝒜_X CY + 𝒱∇_X BY - φ𝒜_X Y - Bℋ∇_X Y",
    "ℋ∇_X CY + 𝒜_X BY - ω𝒜_X Y - Cℋ∇_X Y",
    "𝒜_X ωV + 𝒱∇_X φV - B𝒜_X V - φ𝒱∇_X V",
    "ℋ∇_X ωV + 𝒜_X φV - C𝒜_X V - ω𝒱∇_X V",
)


@dataclass
class CommutationReport:
    residuals: dict
    holds: bool
    skipped: bool = False
    reason: str = ""
    # max ‖𝒜_X Y + 𝒜_Y X‖; informational, since 𝒜 need not be antisymmetric
    antisymmetry_defect: float = 0.0

    @property
    def max_residual(self):
        return max(self.residuals.values()) if self.residuals else 0.0


def commutation_suite(spec, plan=SamplingPlan(), tol=DEFAULT_TOL, classification=None,
                      triple=None):
    """Residuals of the six commutation relations between R and the O'Neill splitting."""
    geo = as_geometry(spec, tol)
    triple = triple or standard_triple(geo.spec.m)
    cls = classification or classify(geo, plan, geo.tol, triple)
    if not cls.is_slant:
        return CommutationReport({}, False, True, f"classification is {cls.verdict}")
    out = dict.fromkeys(COMMUTATION_NAMES, 0.0)
    defect = 0.0
    run = _Run(geo, plan, geo.tol, cls, triple, len(THEOREM_IDS))
    for i, p in enumerate(run.points):
        _, V, W, X, Y = run.draws(i)
        for R in triple:
            c = _Local(geo, p, R)
            PV, PH = c.PV, c.PH
            for v, w, x, y in zip(V, W, X, Y):
                hat_w = PV @ c.nabla("V", w, v)
                t_vw = c.T(v, w)
                vals = [
                    PV @ c.nabla("phi", w, v) + c.T(v, c.omega @ w) - c.phi @ hat_w - c.B @ t_vw,
                    c.T(v, c.phi @ w) + PH @ c.nabla("omega", w, v) - c.C @ t_vw - c.omega @ hat_w,
                ]
                a_xy = c.A(x, y)
                defect = max(defect, float(np.linalg.norm(a_xy + c.A(y, x))))
                h_xy = PH @ c.nabla("H", y, x)
                vals += [
                    c.A(x, c.C @ y) + PV @ c.nabla("B", y, x) - c.phi @ a_xy - c.B @ h_xy,
                    PH @ c.nabla("C", y, x) + c.A(x, c.B @ y) - c.omega @ a_xy - c.C @ h_xy,
                ]
                a_xv = c.A(x, v)
                v_xv = PV @ c.nabla("V", v, x)
                vals += [
                    c.A(x, c.omega @ v) + PV @ c.nabla("phi", v, x) - c.B @ a_xv - c.phi @ v_xv,
                    PH @ c.nabla("omega", v, x) + c.A(x, c.phi @ v) - c.C @ a_xv - c.omega @ v_xv,
                ]
                for name, val in zip(COMMUTATION_NAMES, vals):
                    out[name] = max(out[name], float(np.linalg.norm(val)))
    return CommutationReport(out, max(out.values()) <= geo.tol.identity_tol,
                             antisymmetry_defect=defect)


# ---------------------------------------------------------------------------
# full suite


@dataclass
class SuiteResult:
    classification: object
    identities: object
    commutation: object
    verdicts: list
    summary: dict


def run_full_suite(spec, plan=SamplingPlan(), tol=DEFAULT_TOL, theorems=None, triple=None):
    """Classification, identity suite, commutation relations and the selected theorems."""
    ids = validate_theorem_ids(theorems if theorems is not None else THEOREM_IDS)
    ids = [t for t in THEOREM_IDS if t in ids]
    geo = as_geometry(spec, tol)
    triple = triple or standard_triple(geo.spec.m)
    cls = classify(geo, plan, geo.tol, triple)
    failures = []
    if not cls.is_slant:
        summary = {"verdict": cls.verdict, "failures": [f"classification: {cls.verdict}"],
                   "ok": False}
        return SuiteResult(cls, None, None, [], summary)
    ident = identity_suite(geo, plan, geo.tol, cls, triple)
    comm = commutation_suite(geo, plan, geo.tol, cls, triple)
    if ident.max_residual > geo.tol.identity_tol:
        failures.append("identity suite")
    if not comm.skipped and not comm.holds:
        failures.append("commutation relations")
    verdicts = [check_theorem(t, geo, plan, geo.tol, cls, triple) for t in ids]
    failures += [v.theorem_id for v in verdicts if not v.is_skipped and not v.holds]
    summary = {"verdict": cls.verdict, "failures": failures, "ok": not failures}
    return SuiteResult(cls, ident, comm, verdicts, summary)
