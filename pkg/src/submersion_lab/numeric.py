"""Dense linear-algebra kernels: orthonormal subspaces, projections and
central differences.

Vectors are plain 1-D ``numpy`` float arrays. A :class:`Subspace` stores an
orthonormal basis as the *columns* of a ``(ambient_dim, k)`` array.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EvaluationFailure, SubmersionLabError

ORTHO_TOL = 1e-12


def as_vector(v, dim=None):
    """Coerce ``v`` to a finite 1-D float array, optionally checking its length."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a 1-D vector, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise EvaluationFailure("vector has non-finite entries")
    return arr


@dataclass(frozen=True)
class ToleranceConfig:
    rank_rel_tol: float = 1e-10
    conformal_rel_tol: float = 1e-9
    angle_tol_rad: float = 1e-7
    identity_tol: float = 1e-6
    fd_step_scale: float = 1e-5

    def __post_init__(self):
        for name in ("rank_rel_tol", "conformal_rel_tol", "angle_tol_rad",
                     "identity_tol", "fd_step_scale"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    def fd_step(self, p):
        """Central-difference step ``fd_step_scale * (1 + |p|)``."""
        return self.fd_step_scale * (1.0 + float(np.linalg.norm(p)))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of R^d with an orthonormal column basis."""

    ambient_dim: int
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float).reshape(self.ambient_dim, -1)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def projector(self):
        return self.basis @ self.basis.T

    def vectors(self):
        return [self.basis[:, i].copy() for i in range(self.dim)]

    def contains(self, v, tol=1e-10):
        v = as_vector(v, self.ambient_dim)
        return float(np.linalg.norm(v - project(self, v))) <= tol * max(1.0, float(np.linalg.norm(v)))

    def complement(self):
        return orthogonal_complement(self)

    @classmethod
    def full(cls, d):
        return cls(d, np.eye(d))

    @classmethod
    def zero(cls, d):
        return cls(d, np.zeros((d, 0)))


def orthonormalize(vectors, drop_tol=ORTHO_TOL):
    """Gram-Schmidt with one re-orthogonalisation pass.

    Vectors whose remaining component after projection has norm below
    ``drop_tol`` are dropped, so the result spans the same space.
    """
    vecs = [np.asarray(v, dtype=float) for v in vectors]
    if not vecs:
        raise DimensionMismatch("orthonormalize needs at least one vector to fix the dimension")
    d = vecs[0].shape[0]
    if any(v.ndim != 1 or v.shape[0] != d for v in vecs):
        raise DimensionMismatch("vectors do not share a dimension")
    cols = []
    for v in vecs:
        w = v.copy()
        for _ in range(2):
            for q in cols:
                w -= (q @ w) * q
        norm = np.linalg.norm(w)
        if norm < drop_tol:
            continue
        cols.append(w / norm)
    basis = np.column_stack(cols) if cols else np.zeros((d, 0))
    return Subspace(d, basis)


def project(s, v):
    v = np.asarray(v, dtype=float)
    if v.shape != (s.ambient_dim,):
        raise DimensionMismatch(
            f"vector of shape {v.shape} does not live in R^{s.ambient_dim}")
    return s.basis @ (s.basis.T @ v)


def orthogonal_complement(s):
    d = s.ambient_dim
    if s.dim == 0:
        return Subspace.full(d)
    if s.dim == d:
        return Subspace.zero(d)
    # trailing left-singular vectors of the basis span its complement
    u, _, _ = np.linalg.svd(s.basis, full_matrices=True)
    return Subspace(d, u[:, s.dim:])


def central_difference(f, p, direction, h):
    """Symmetric difference quotient ``(f(p + h d) - f(p - h d)) / 2h``."""
    if not h > 0:
        raise ValueError("step h must be positive")
    p = np.asarray(p, dtype=float)
    direction = np.asarray(direction, dtype=float)
    try:
        fp = np.asarray(f(p + h * direction), dtype=float)
        fm = np.asarray(f(p - h * direction), dtype=float)
    except SubmersionLabError:
        raise
    except (ArithmeticError, ValueError) as exc:
        raise EvaluationFailure(f"function failed on the difference stencil: {exc}") from exc
    out = (fp - fm) / (2.0 * h)
    if not np.all(np.isfinite(out)):
        raise EvaluationFailure("non-finite difference quotient")
    return out if out.ndim else float(out)
