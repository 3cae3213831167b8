"""O'Neill tensors, second fundamental form, mean curvature and tension field
for maps from flat R^{4m} to Euclidean R^n.

On flat space the Levi-Civita derivative of a vector field is its
componentwise directional derivative, and the pullback connection on a flat
target is the directional derivative along the base direction. Vectors at a
point are extended to fields by *projected-constant* extensions
``q -> P(q) s`` where ``P`` is the vertical or horizontal projector at ``q``.
All derivatives of such fields are central differences with the per-point
step ``fd_step_scale * (1 + |p|)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotHorizontal, NotVertical
from .numeric import as_vector, central_difference
from .submersion import DEFAULT_TOL, as_geometry

MEMBERSHIP_TOL = 1e-10

VERTICAL = "vertical"
HORIZONTAL = "horizontal"


class OperatorField:
    """The vector field ``q -> M(q) @ seed`` where ``M`` is built from the frame at ``q``.

    ``builder(frame)`` returns the matrix; with ``push=True`` the field is
    pushed forward, ``q -> F_*(q) M(q) seed``, which gives a field along F.
    """

    def __init__(self, geometry, builder, seed, push=False):
        self.geometry = geometry
        self.builder = builder
        self.seed = np.asarray(seed, dtype=float)
        self.push = push

    def __call__(self, q):
        frame = self.geometry.frame(q)
        out = self.builder(frame) @ self.seed
        return frame.jacobian @ out if self.push else out

    def pushed(self):
        return OperatorField(self.geometry, self.builder, self.seed, push=True)


class ProjectedField(OperatorField):
    """Projected-constant extension ``q -> P_part(q) seed`` of a tangent vector."""

    def __init__(self, spec, seed_vector, part, tol=None):
        if part not in (VERTICAL, HORIZONTAL):
            raise ValueError(f"part must be {VERTICAL!r} or {HORIZONTAL!r}")
        geo = as_geometry(spec, tol)
        builder = (lambda fr: fr.P_V) if part == VERTICAL else (lambda fr: fr.P_H)
        super().__init__(geo, builder, seed_vector)
        self.part = part


class BasicLift:
    """Horizontal lift of a constant target vector ``xi``: ``q -> F_*(q)^+ xi``.

    The lift is horizontal at every point and F-related to ``xi``.
    """

    def __init__(self, spec, xi, tol=None):
        self.geometry = as_geometry(spec, tol)
        self.xi = np.asarray(xi, dtype=float)

    def __call__(self, q):
        jac = self.geometry.frame(q).jacobian
        return jac.T @ np.linalg.solve(jac @ jac.T, self.xi)


def _geometry_of(field, tol):
    geo = getattr(field, "geometry", None)
    if geo is None:
        return None
    return geo if tol is None else as_geometry(geo.spec, tol)


def field_derivative(field, p, direction, tol=None):
    """Flat covariant derivative of ``field`` along ``direction`` at ``p``."""
    p = np.asarray(p, dtype=float)
    geo = _geometry_of(field, tol)
    step = geo.step(p) if geo is not None else (tol or DEFAULT_TOL).fd_step(p)
    return central_difference(field, p, direction, step)


def pullback_derivative(spec, p, X, W, tol=None):
    """∇^F_X W for a field ``W`` along F (a callable ``q -> R^n``)."""
    geo = as_geometry(spec, tol)
    return central_difference(W, np.asarray(p, dtype=float), X, geo.step(p))


def _require(subspace, v, exc, what):
    v = as_vector(v, subspace.ambient_dim)
    off = v - subspace.basis @ (subspace.basis.T @ v)
    if np.linalg.norm(off) > MEMBERSHIP_TOL * max(1.0, float(np.linalg.norm(v))):
        raise exc(f"argument is not {what} at the base point")
    return v


# ---------------------------------------------------------------------------
# O'Neill tensors


def oneill_T_full(spec, p, e, f, tol=None):
    """𝒯_E F = ℋ∇_{𝒱E} 𝒱F + 𝒱∇_{𝒱E} ℋF for arbitrary tangent vectors."""
    geo = as_geometry(spec, tol)
    frame = geo.frame(p)
    a = frame.P_V @ e
    dv = field_derivative(ProjectedField(geo, f, VERTICAL), p, a)
    dh = field_derivative(ProjectedField(geo, f, HORIZONTAL), p, a)
    return frame.P_H @ dv + frame.P_V @ dh


def oneill_A_full(spec, p, e, f, tol=None):
    """𝒜_E F = ℋ∇_{ℋE} 𝒱F + 𝒱∇_{ℋE} ℋF for arbitrary tangent vectors."""
    geo = as_geometry(spec, tol)
    frame = geo.frame(p)
    a = frame.P_H @ e
    dv = field_derivative(ProjectedField(geo, f, VERTICAL), p, a)
    dh = field_derivative(ProjectedField(geo, f, HORIZONTAL), p, a)
    return frame.P_H @ dv + frame.P_V @ dh


def oneill_T(spec, p, u, v, tol=None, extension=None):
    """𝒯_u v = ℋ∇_u Ṽ for vertical u, v (Ṽ a vertical extension of v)."""
    geo = as_geometry(spec, tol)
    frame = geo.frame(p)
    u = _require(frame.vertical, u, NotVertical, "vertical")
    v = _require(frame.vertical, v, NotVertical, "vertical")
    ext = extension or ProjectedField(geo, v, VERTICAL)
    return frame.P_H @ field_derivative(ext, p, u)


def oneill_A(spec, p, x, y, tol=None, extension=None):
    """𝒜_x y = 𝒱∇_x Ỹ for horizontal x, y (Ỹ a horizontal extension of y)."""
    geo = as_geometry(spec, tol)
    frame = geo.frame(p)
    x = _require(frame.horizontal, x, NotHorizontal, "horizontal")
    y = _require(frame.horizontal, y, NotHorizontal, "horizontal")
    ext = extension or ProjectedField(geo, y, HORIZONTAL)
    return frame.P_V @ field_derivative(ext, p, x)


def lie_bracket(field_a, field_b, p, tol=None):
    """[A, B] = ∇_A B - ∇_B A (flat, torsion-free)."""
    p = np.asarray(p, dtype=float)
    return (field_derivative(field_b, p, field_a(p), tol)
            - field_derivative(field_a, p, field_b(p), tol))


def oneill_A_closed_form(spec, p, x, y, tol=None, ext_x=None, ext_y=None):
    """½{𝒱[X, Y] - λ² g(X, Y) ∇_𝒱(1/λ²)} for horizontal X, Y.

    ∇_𝒱 f is assembled as Σ W_i(f) W_i over an orthonormal vertical frame.
    """
    geo = as_geometry(spec, tol)
    p = np.asarray(p, dtype=float)
    frame = geo.frame(p)
    X = ext_x or ProjectedField(geo, x, HORIZONTAL)
    Y = ext_y or ProjectedField(geo, y, HORIZONTAL)
    bracket_v = frame.P_V @ lie_bracket(X, Y, p)
    inv_lam2 = lambda q: geo.frame(q).dilation ** -2  # noqa: E731
    h = geo.step(p)
    grad_v = np.zeros(geo.dim)
    for w in frame.vertical.vectors():
        grad_v += central_difference(inv_lam2, p, w, h) * w
    lam2 = frame.dilation ** 2
    return 0.5 * (bracket_v - lam2 * float(np.dot(x, y)) * grad_v)


# ---------------------------------------------------------------------------
# Second fundamental form and friends


def second_fundamental_form(spec, p, X, Y, tol=None):
    """(∇F_*)(X, Y) = Hessian of F contracted with X and Y (flat source and target)."""
    geo = as_geometry(spec, tol)
    hess = geo.hessian(p)
    return np.einsum("kij,i,j->k", hess, np.asarray(X, float), np.asarray(Y, float))


def conformal_sff_formula(spec, p, X, Y, tol=None):
    """X(ln λ) F_*Y + Y(ln λ) F_*X - g(X, Y) F_*(∇ ln λ) for horizontal X, Y."""
    geo = as_geometry(spec, tol)
    frame = geo.frame(p)
    grad, _, _ = geo.grad_ln_dilation(p)
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    J = frame.jacobian
    return (np.dot(X, grad) * (J @ Y) + np.dot(Y, grad) * (J @ X)
            - np.dot(X, Y) * (J @ grad))


def nabla_phi_omega(spec, p, V, W, R, tol=None):
    """((∇_V φ_R)(W), (∇_V ω_R)(W)) from projected extensions.

    (∇_V φ_R)(W) = ∇̂_V φ_R W - φ_R ∇̂_V W,   (∇_V ω_R)(W) = ℋ∇_V ω_R W - ω_R ∇̂_V W.
    """
    geo = as_geometry(spec, tol)
    frame = geo.frame(p)
    V = _require(frame.vertical, V, NotVertical, "vertical")
    W = _require(frame.vertical, W, NotVertical, "vertical")
    Rm = R.matrix
    w_field = ProjectedField(geo, W, VERTICAL)
    phi_w = OperatorField(geo, lambda fr: fr.P_V @ Rm @ fr.P_V, W)
    omega_w = OperatorField(geo, lambda fr: fr.P_H @ Rm @ fr.P_V, W)
    hat_w = frame.P_V @ field_derivative(w_field, p, V)
    phi_p = frame.P_V @ Rm @ frame.P_V
    omega_p = frame.P_H @ Rm @ frame.P_V
    nphi = frame.P_V @ field_derivative(phi_w, p, V) - phi_p @ hat_w
    nomega = frame.P_H @ field_derivative(omega_w, p, V) - omega_p @ hat_w
    return nphi, nomega


def nabla_phi_omega_formula(spec, p, V, W, R, tol=None):
    """(B_R 𝒯_V W - 𝒯_V ω_R W,  C_R 𝒯_V W - 𝒯_V φ_R W)."""
    geo = as_geometry(spec, tol)
    frame = geo.frame(p)
    Rm = R.matrix
    PV, PH = frame.P_V, frame.P_H
    t_vw = oneill_T_full(geo, p, V, W)
    t_omega = oneill_T_full(geo, p, V, PH @ Rm @ W)
    t_phi = oneill_T_full(geo, p, V, PV @ Rm @ W)
    return PV @ Rm @ PH @ t_vw - t_omega, PH @ Rm @ PH @ t_vw - t_phi


def mean_curvature(spec, p, tol=None, basis=None):
    """H = (1/m) Σ 𝒯_{e_i} e_i over an orthonormal basis of ker F_*."""
    geo = as_geometry(spec, tol)
    frame = geo.frame(p)
    vecs = frame.vertical.vectors() if basis is None else list(basis)
    if not vecs:
        return np.zeros(geo.dim)
    total = sum(oneill_T_full(geo, p, e, e) for e in vecs)
    return total / len(vecs)


@dataclass
class TensionField:
    trace_route: np.ndarray
    formula_route: np.ndarray
    residual: float


def tension_field(spec, p, tol=None):
    """τ(F) as the trace of ∇F_* and as -m F_* H + (2 - n) F_*(∇ ln λ)."""
    geo = as_geometry(spec, tol)
    p = np.asarray(p, dtype=float)
    frame = geo.frame(p)
    hess = geo.hessian(p)
    trace = np.einsum("kii->k", hess)
    m = frame.vertical.dim
    n = geo.spec.codomain_dim
    H = mean_curvature(geo, p)
    grad, _, _ = geo.grad_ln_dilation(p)
    J = frame.jacobian
    formula = -m * (J @ H) + (2 - n) * (J @ grad)
    return TensionField(trace, formula, float(np.linalg.norm(trace - formula)))
