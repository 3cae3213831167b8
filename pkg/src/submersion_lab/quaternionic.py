"""The standard hyperkähler triple (I, J, K) on flat R^{4m}."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch

# action on one block (e1, e2, e3, e4): column j is the image of e_{j+1}
_I_BLOCK = np.array([
    [0, -1, 0, 0],
    [1, 0, 0, 0],
    [0, 0, 0, -1],
    [0, 0, 1, 0],
], dtype=float)
_J_BLOCK = np.array([
    [0, 0, -1, 0],
    [0, 0, 0, 1],
    [1, 0, 0, 0],
    [0, -1, 0, 0],
], dtype=float)
_K_BLOCK = np.array([
    [0, 0, 0, -1],
    [0, 0, -1, 0],
    [0, 1, 0, 0],
    [1, 0, 0, 0],
], dtype=float)


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    name: str
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatch("complex structure must be a square matrix")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __call__(self, v):
        return apply(self, v)


@dataclass(frozen=True)
class HyperkahlerTriple:
    I: ComplexStructure
    J: ComplexStructure
    K: ComplexStructure
    m: int

    def __iter__(self):
        return iter((self.I, self.J, self.K))

    def __getitem__(self, name):
        return {"I": self.I, "J": self.J, "K": self.K}[name]

    @property
    def names(self):
        return ("I", "J", "K")


def standard_triple(m):
    """Block-diagonal I, J, K acting identically on each block of four coordinates."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    eye = np.eye(m)
    return HyperkahlerTriple(
        ComplexStructure("I", np.kron(eye, _I_BLOCK)),
        ComplexStructure("J", np.kron(eye, _J_BLOCK)),
        ComplexStructure("K", np.kron(eye, _K_BLOCK)),
        m,
    )


def apply(R, v):
    v = np.asarray(v, dtype=float)
    if v.shape != (R.dim,):
        raise DimensionMismatch(f"vector of shape {v.shape} does not match R^{R.dim}")
    return R.matrix @ v


def verify_triple(t):
    """Max-abs residuals of the quaternion relations and of the metric compatibility.

    Returns a dict of named residuals plus ``"ok"``; every residual is exactly
    zero for :func:`standard_triple` output.
    """
    I, J, K = t.I.matrix, t.J.matrix, t.K.matrix
    eye = np.eye(I.shape[0])

    def res(a):
        return float(np.max(np.abs(a)))

    report = {}
    for name, R in (("I", I), ("J", J), ("K", K)):
        report[f"{name}^2+id"] = res(R @ R + eye)
        report[f"{name}^T{name}-id"] = res(R.T @ R - eye)
    report["IJ-K"] = res(I @ J - K)
    report["IJ+JI"] = res(I @ J + J @ I)
    report["JK-I"] = res(J @ K - I)
    report["KI-J"] = res(K @ I - J)
    report["ok"] = all(v == 0.0 for v in report.values())
    return report
