"""Slant decomposition of R V and R X, slant angles, classification and the
algebraic identity suite.

For a vertical V and horizontal X:

    R V = φ_R V + ω_R V      (vertical + horizontal parts)
    R X = B_R X + C_R X      (vertical + horizontal parts)

and the horizontal space splits orthogonally as ω_R(ker F_*) ⊕ μ^R.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotHorizontal, NotVertical, ZeroVector
from .numeric import Subspace, as_vector
from .quaternionic import standard_triple
from .submersion import (DEFAULT_TOL, SamplingPlan, as_geometry, conformality_check,
                         random_unit_in, require_regular)

MEMBERSHIP_TOL = 1e-10

HCONFORMAL_SLANT = "HConformalSlant"
ALMOST_HCONFORMAL_SLANT = "AlmostHConformalSlant"
NOT_SLANT = "NotSlant"
NOT_CONFORMAL = "NotConformalSubmersion"


def _check_in(subspace, v, exc, what):
    v = as_vector(v, subspace.ambient_dim)
    off = v - subspace.basis @ (subspace.basis.T @ v)
    if np.linalg.norm(off) > MEMBERSHIP_TOL * max(1.0, float(np.linalg.norm(v))):
        raise exc(f"vector is not {what} (off-component {np.linalg.norm(off):.2e})")
    return v


def phi_omega(R, V, frame):
    V = _check_in(frame.vertical, V, NotVertical, "vertical")
    RV = R.matrix @ V
    return frame.P_V @ RV, frame.P_H @ RV


def b_c(R, X, frame):
    X = _check_in(frame.horizontal, X, NotHorizontal, "horizontal")
    RX = R.matrix @ X
    return frame.P_V @ RX, frame.P_H @ RX


@dataclass(frozen=True, eq=False)
class SlantOperators:
    """φ_R, ω_R, B_R, C_R as ambient matrices (zero off their domains)."""

    phi: np.ndarray
    omega: np.ndarray
    B: np.ndarray
    C: np.ndarray


def slant_operators(R, frame):
    PV, PH, Rm = frame.P_V, frame.P_H, R.matrix
    return SlantOperators(PV @ Rm @ PV, PH @ Rm @ PV, PV @ Rm @ PH, PH @ Rm @ PH)


def omega_image(R, frame, rank_tol=1e-10):
    """Orthonormal basis of ω_R(ker F_*)."""
    d = frame.dim
    if frame.vertical.dim == 0:
        return Subspace.zero(d)
    images = frame.P_H @ R.matrix @ frame.vertical.basis
    u, s, _ = np.linalg.svd(images, full_matrices=False)
    return Subspace(d, u[:, : int(np.sum(s > rank_tol))])


def mu_basis(R, frame):
    """Orthogonal complement of ω_R(ker F_*) inside the horizontal space."""
    d = frame.dim
    w = omega_image(R, frame)
    if frame.horizontal.dim == 0:
        return Subspace.zero(d)
    rest = frame.horizontal.basis - w.basis @ (w.basis.T @ frame.horizontal.basis)
    u, s, _ = np.linalg.svd(rest, full_matrices=False)
    # singular values are ~1 on μ^R and ~0 on ω_R(ker F_*)
    return Subspace(d, u[:, : int(np.sum(s > 0.5))])


def slant_angle(R, V, frame):
    """Angle between R V and the vertical space, in [0, π/2].

    Equal to ``arccos(|φ_R V| / |V|)``; evaluated as ``atan2(|ω_R V|, |φ_R V|)``,
    which keeps full accuracy near 0 where the arccos form loses half the digits.
    """
    V = as_vector(V, frame.dim)
    if not np.linalg.norm(V) > 0:
        raise ZeroVector("slant angle needs a nonzero vertical vector")
    phi, omega = phi_omega(R, V, frame)
    return math.atan2(float(np.linalg.norm(omega)), float(np.linalg.norm(phi)))


# ---------------------------------------------------------------------------
# Classification


@dataclass
class SlantReport:
    structure: str
    angle_samples: list = field(repr=False)  # (point index, direction, θ)
    mean_angle: float
    max_deviation: float
    constant: bool

    @property
    def angles(self):
        return np.array([a for _, _, a in self.angle_samples])


@dataclass
class Classification:
    verdict: str
    angles: dict  # structure name -> mean angle (None when undefined)
    reports: dict  # structure name -> SlantReport
    dilation_summary: dict
    conformality: object = field(repr=False, default=None)
    notes: list = field(default_factory=list)

    @property
    def theta(self):
        """Common h-slant angle for an h-conformal slant verdict."""
        if self.verdict != HCONFORMAL_SLANT:
            return None
        vals = [a for a in self.angles.values() if a is not None]
        return float(np.mean(vals)) if vals else None

    @property
    def is_slant(self):
        return self.verdict in (HCONFORMAL_SLANT, ALMOST_HCONFORMAL_SLANT)


def _slant_report(name, samples, tol):
    if not samples:
        return SlantReport(name, [], float("nan"), 0.0, True)
    angles = np.array([a for _, _, a in samples])
    mean = float(np.mean(angles))
    dev = float(np.max(np.abs(angles - mean)))
    return SlantReport(name, samples, mean, dev, dev <= tol.angle_tol_rad)


def classify(spec, plan=SamplingPlan(), tol=DEFAULT_TOL, triple=None):
    """Decide whether the map is an (almost) h-conformal slant submersion on the box."""
    geo = as_geometry(spec, tol)
    tol = geo.tol
    triple = triple or standard_triple(geo.spec.m)
    conf = conformality_check(geo, plan, tol)
    require_regular(conf)
    if not conf.passed:
        return Classification(NOT_CONFORMAL, {r: None for r in triple.names}, {},
                              conf.dilation_summary, conf,
                              [f"worst conformality residual {max(conf.worst_residual, conf.worst_pair_residual):.3e}"])

    samples = {name: [] for name in triple.names}
    for i, p in enumerate(conf.points):
        frame = geo.frame(p)
        dirs = random_unit_in(frame.vertical, plan.rng(i, 1), plan.n_directions)
        for R in triple:
            ops_phi = frame.P_V @ R.matrix
            ops_omega = frame.P_H @ R.matrix
            for v in dirs:
                th = math.atan2(float(np.linalg.norm(ops_omega @ v)),
                                float(np.linalg.norm(ops_phi @ v)))
                samples[R.name].append((i, v, th))

    reports = {name: _slant_report(name, samples[name], tol) for name in triple.names}
    notes = []
    if geo.spec.codomain_dim == geo.spec.domain_dim:
        notes.append("fibres are points: slant angles are vacuous")
        angles = {name: None for name in triple.names}
        verdict = HCONFORMAL_SLANT
    else:
        angles = {name: reports[name].mean_angle for name in triple.names}
        if not all(r.constant for r in reports.values()):
            verdict = NOT_SLANT
            bad = [n for n, r in reports.items() if not r.constant]
            notes.append(f"non-constant slant angle for {', '.join(bad)}")
        else:
            vals = [angles[n] for n in triple.names]
            spread = max(abs(vals[0] - vals[1]), abs(vals[1] - vals[2]))
            verdict = (HCONFORMAL_SLANT if spread <= 2 * tol.angle_tol_rad
                       else ALMOST_HCONFORMAL_SLANT)
    notes.append("constancy certified on the sampled box only")
    return Classification(verdict, angles, reports, conf.dilation_summary, conf, notes)


# ---------------------------------------------------------------------------
# Algebraic identities

IDENTITY_NAMES = (
    "phi^2 V + B omega V + V",
    "omega phi V + C omega V",
    "phi B X + B C X",
    "omega B X + C^2 X + X",
    "phi^2 V + cos^2(theta) V",
    "<phi V, phi W> - cos^2(theta) <V, W>",
    "<omega V, omega W> - sin^2(theta) <V, W>",
    "R omega V + sin^2(theta) V + omega phi V",
)


@dataclass
class IdentityReport:
    residuals: dict  # identity name -> max residual over structures and samples
    per_structure: dict  # structure -> {identity name -> max residual}
    skipped: bool = False
    reason: str = ""

    @property
    def max_residual(self):
        return max(self.residuals.values()) if self.residuals else 0.0

    def as_list(self):
        return [{"name": k, "max_residual": v} for k, v in self.residuals.items()]


def identity_suite(spec, plan=SamplingPlan(), tol=DEFAULT_TOL, classification=None, triple=None):
    geo = as_geometry(spec, tol)
    triple = triple or standard_triple(geo.spec.m)
    cls = classification or classify(geo, plan, geo.tol, triple)
    if not cls.is_slant:
        return IdentityReport({}, {}, True, f"classification is {cls.verdict}")
    per = {R.name: dict.fromkeys(IDENTITY_NAMES, 0.0) for R in triple}
    for i, p in enumerate(cls.conformality.points):
        frame = geo.frame(p)
        rng = plan.rng(i, 2)
        Vs = random_unit_in(frame.vertical, rng, plan.n_directions)
        Ws = random_unit_in(frame.vertical, rng, plan.n_directions)
        Xs = random_unit_in(frame.horizontal, rng, plan.n_directions)
        for R in triple:
            theta = cls.angles[R.name] or 0.0
            c2, s2 = math.cos(theta) ** 2, math.sin(theta) ** 2
            op = slant_operators(R, frame)
            phi, om, B, C = op.phi, op.omega, op.B, op.C
            rows = {}
            if len(Vs):
                V, W = Vs.T, Ws.T
                rows[IDENTITY_NAMES[0]] = phi @ phi @ V + B @ om @ V + V
                rows[IDENTITY_NAMES[1]] = om @ phi @ V + C @ om @ V
                rows[IDENTITY_NAMES[4]] = phi @ phi @ V + c2 * V
                vw = np.einsum("ij,ij->j", V, W)
                rows[IDENTITY_NAMES[5]] = (np.einsum("ij,ij->j", phi @ V, phi @ W) - c2 * vw)[None]
                rows[IDENTITY_NAMES[6]] = (np.einsum("ij,ij->j", om @ V, om @ W) - s2 * vw)[None]
                rows[IDENTITY_NAMES[7]] = R.matrix @ om @ V + s2 * V + om @ phi @ V
            if len(Xs):
                X = Xs.T
                rows[IDENTITY_NAMES[2]] = phi @ B @ X + B @ C @ X
                rows[IDENTITY_NAMES[3]] = om @ B @ X + C @ C @ X + X
            for name, val in rows.items():
                worst = float(np.max(np.linalg.norm(val, axis=0)))
                per[R.name][name] = max(per[R.name][name], worst)
    overall = {name: max(per[r][name] for r in per) for name in IDENTITY_NAMES}
    return IdentityReport(overall, per)
