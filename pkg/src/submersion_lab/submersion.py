"""Vertical/horizontal splitting, horizontal conformality and the dilation.

At each point the Jacobian is decomposed by SVD. Singular values below
``rank_rel_tol * sigma_max`` count as zero; the right-singular vectors for the
zero block span the vertical space ``ker F_*``, the others its orthogonal
complement. For a horizontally conformal map the nonzero singular values all
equal the dilation.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .errors import CriticalPoint, NonConformal, NonConstantRank
from .numeric import Subspace, ToleranceConfig, as_vector, project

DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True, eq=False)
class PointFrame:
    point: np.ndarray
    vertical: Subspace
    horizontal: Subspace
    dilation: float
    conformal_residual: float
    rank: int
    jacobian: np.ndarray = field(repr=False)
    singular_values: np.ndarray = field(repr=False)

    @property
    def P_V(self):
        return self.vertical.projector

    @property
    def P_H(self):
        return self.horizontal.projector

    @property
    def dim(self):
        return self.point.shape[0]

    def push(self, v):
        """F_* v."""
        return self.jacobian @ v


def split_tangent(spec, p, tol=DEFAULT_TOL, check_conformal=True):
    """Split T_pR^{4m} into ker F_* and its complement and measure conformality."""
    p = as_vector(p, spec.domain_dim)
    jac = spec.jacobian(p)
    n, d = jac.shape
    _, s, vt = np.linalg.svd(jac, full_matrices=True)
    smax = float(s[0]) if s.size else 0.0
    if smax == 0.0:
        raise CriticalPoint(f"F_* vanishes at {p.tolist()}", p)
    rank = int(np.sum(s >= tol.rank_rel_tol * smax))
    if rank < n:
        raise CriticalPoint(
            f"F_* has rank {rank} < {n} at {p.tolist()} (no critical points allowed)", p)
    nonzero = s[:rank]
    residual = float((smax - nonzero[-1]) / smax)
    if check_conformal and residual > tol.conformal_rel_tol:
        raise NonConformal(
            f"singular values of F_* differ (relative spread {residual:.3e}) at {p.tolist()}",
            residual)
    p = p.copy()
    p.setflags(write=False)
    return PointFrame(
        point=p,
        vertical=Subspace(d, vt[rank:].T),
        horizontal=Subspace(d, vt[:rank].T),
        dilation=float(np.mean(nonzero)),
        conformal_residual=residual,
        rank=rank,
        jacobian=jac,
        singular_values=s,
    )


# ---------------------------------------------------------------------------
# Sampling


@dataclass(frozen=True)
class SamplingPlan:
    """Deterministic sample set: scrambled Halton points in a box.

    ``box`` is ``None`` (the default ``[-1, 1]`` on every coordinate), a
    single ``(lo, hi)`` pair applied to every coordinate, or one pair per
    coordinate. ``exclusion`` is an optional predicate; points for which it
    returns true are skipped (e.g. known critical sets).
    """

    box: object = None
    n_points: int = 16
    n_directions: int = 32
    seed: int = 0
    exclusion: object = None

    def __post_init__(self):
        if self.n_points < 1 or self.n_directions < 1:
            raise ValueError("n_points and n_directions must be at least 1")

    def bounds(self, dim):
        if self.box is None:
            box = [(-1.0, 1.0)] * dim
        else:
            if len(self.box) == 2 and np.ndim(self.box[0]) == 0:
                box = [tuple(float(x) for x in self.box)] * dim
            else:
                box = [tuple(b) for b in self.box]
                if len(box) == 1:
                    box = box * dim
        if len(box) != dim:
            raise ValueError(f"box has {len(box)} intervals for dimension {dim}")
        lo = np.array([b[0] for b in box], dtype=float)
        hi = np.array([b[1] for b in box], dtype=float)
        if np.any(hi <= lo):
            raise ValueError("every box interval needs lo < hi")
        return lo, hi

    def points(self, dim):
        lo, hi = self.bounds(dim)
        sampler = qmc.Halton(d=dim, scramble=True, seed=self.seed)
        accepted = []
        drawn = 0
        limit = 1000 * self.n_points
        while len(accepted) < self.n_points:
            batch = qmc.scale(sampler.random(self.n_points), lo, hi)
            drawn += len(batch)
            for q in batch:
                if self.exclusion is None or not self.exclusion(q):
                    accepted.append(q)
                    if len(accepted) == self.n_points:
                        break
            if drawn >= limit and len(accepted) < self.n_points:
                raise ValueError("exclusion predicate rejects almost the whole box")
        return np.array(accepted)

    def rng(self, *stream):
        """Independent generator for a (point index, purpose) stream."""
        return np.random.default_rng([self.seed, *stream])


def random_unit_in(subspace, rng, count):
    """``count`` unit vectors of ``subspace`` from normalised Gaussian coordinates."""
    k = subspace.dim
    if k == 0:
        return np.zeros((0, subspace.ambient_dim))
    coeffs = rng.standard_normal((count, k))
    coeffs /= np.linalg.norm(coeffs, axis=1, keepdims=True)
    return coeffs @ subspace.basis.T


# ---------------------------------------------------------------------------
# Frames with memoisation


class Geometry:
    """A map together with tolerances and a per-point frame cache.

    Every public function that takes a ``MapSpec`` also accepts a
    ``Geometry``; passing one lets repeated computations at the same points
    (difference stencils in particular) reuse their SVDs.
    """

    def __init__(self, spec, tol=DEFAULT_TOL):
        self.spec = spec
        self.tol = tol
        self._frames = {}
        self._grads = {}
        self._hessians = {}

    @property
    def dim(self):
        return self.spec.domain_dim

    def frame(self, q):
        q = np.asarray(q, dtype=float)
        key = q.tobytes()
        hit = self._frames.get(key)
        if hit is None:
            hit = split_tangent(self.spec, q, self.tol, check_conformal=False)
            if len(self._frames) > 4096:
                self._frames.clear()
            self._frames[key] = hit
        return hit

    def hessian(self, q):
        """Exact second derivatives of F at ``q``, shape (n, d, d)."""
        q = np.asarray(q, dtype=float)
        key = q.tobytes()
        hit = self._hessians.get(key)
        if hit is None:
            hit = self.spec.hessian(q)
            if len(self._hessians) > 4096:
                self._hessians.clear()
            self._hessians[key] = hit
        return hit

    def step(self, p):
        return self.tol.fd_step(p)

    def ln_dilation(self, q):
        return math.log(self.frame(q).dilation)

    def grad_ln_dilation(self, p):
        p = np.asarray(p, dtype=float)
        key = p.tobytes()
        hit = self._grads.get(key)
        if hit is None:
            h = self.step(p)
            d = self.dim
            grad = np.empty(d)
            for j in range(d):
                e = np.zeros(d)
                e[j] = 1.0
                grad[j] = (self.ln_dilation(p + h * e) - self.ln_dilation(p - h * e)) / (2 * h)
            frame = self.frame(p)
            hit = (grad, project(frame.horizontal, grad), project(frame.vertical, grad))
            self._grads[key] = hit
        return hit


def as_geometry(spec, tol=None):
    if isinstance(spec, Geometry):
        if tol is not None and tol != spec.tol:
            return Geometry(spec.spec, tol)
        return spec
    return Geometry(spec, tol or DEFAULT_TOL)


# ---------------------------------------------------------------------------
# Reports


@dataclass
class ConformalityReport:
    passed: bool
    worst_residual: float
    worst_pair_residual: float
    dilations: list
    points: list
    critical_points: list
    nonconformal_points: list

    @property
    def dilation_summary(self):
        if not self.dilations:
            return {"mean": None, "min": None, "max": None}
        arr = np.array(self.dilations)
        return {"mean": float(arr.mean()), "min": float(arr.min()), "max": float(arr.max())}


def conformality_check(spec, plan=SamplingPlan(), tol=DEFAULT_TOL):
    """Check <F_*X, F_*Y> = λ(p)^2 <X, Y> on random horizontal pairs at every sample."""
    geo = as_geometry(spec, tol)
    tol = geo.tol
    worst, worst_pair = 0.0, 0.0
    dilations, points, critical, nonconformal = [], [], [], []
    for i, p in enumerate(plan.points(geo.dim)):
        try:
            frame = geo.frame(p)
        except CriticalPoint as exc:
            critical.append((i, p.tolist(), str(exc)))
            continue
        rng = plan.rng(i, 0)
        xs = random_unit_in(frame.horizontal, rng, plan.n_directions)
        ys = random_unit_in(frame.horizontal, rng, plan.n_directions)
        lam2 = frame.dilation ** 2
        pair = 0.0
        if len(xs):
            lhs = np.einsum("ij,ij->i", xs @ frame.jacobian.T, ys @ frame.jacobian.T)
            rhs = lam2 * np.einsum("ij,ij->i", xs, ys)
            pair = float(np.max(np.abs(lhs - rhs)) / lam2)
        worst = max(worst, frame.conformal_residual)
        worst_pair = max(worst_pair, pair)
        if max(frame.conformal_residual, pair) > tol.conformal_rel_tol:
            nonconformal.append((i, p.tolist(), max(frame.conformal_residual, pair)))
        dilations.append(frame.dilation)
        points.append(p)
    passed = not critical and not nonconformal and bool(points)
    return ConformalityReport(passed, worst, worst_pair, dilations, points, critical, nonconformal)


def require_regular(report):
    """Raise for rank trouble recorded in a conformality report."""
    if report.critical_points and not report.points:
        raise CriticalPoint("every sample point is critical")
    if report.critical_points:
        raise NonConstantRank(
            f"rank of F_* drops at {len(report.critical_points)} of "
            f"{len(report.critical_points) + len(report.points)} sample points")


def grad_ln_dilation(spec, p, tol=DEFAULT_TOL):
    """Gradient of ln λ by central differences, with its horizontal and vertical parts."""
    geo = as_geometry(spec, tol)
    p = as_vector(p, geo.dim)
    return geo.grad_ln_dilation(p)


@dataclass
class HomothetyVerdict:
    holds: bool
    max_horizontal_gradient: float
    skipped: list


def is_horizontally_homothetic(spec, plan=SamplingPlan(), tol=DEFAULT_TOL, points=None):
    geo = as_geometry(spec, tol)
    worst = 0.0
    skipped = []
    pts = plan.points(geo.dim) if points is None else points
    for i, p in enumerate(pts):
        try:
            _, horizontal, _ = geo.grad_ln_dilation(p)
        except CriticalPoint as exc:
            skipped.append((i, str(exc)))
            continue
        worst = max(worst, float(np.linalg.norm(horizontal)))
    return HomothetyVerdict(worst <= geo.tol.identity_tol, worst, skipped)
