"""Forward-mode dual numbers carrying a gradient and, optionally, a Hessian.

A ``Dual`` with ``hess=None`` is an ordinary first-order dual number with a
vector-valued infinitesimal part (one pass yields a full gradient). With a
Hessian block it is the multivariate form of a hyper-dual number: every
elementary operation propagates ``(value, gradient, Hessian)`` through the
second-order chain rule. Each update adds ``outer(a, b) + outer(b, a)`` or a
scalar multiple of a symmetric matrix, so Hessians stay *bitwise* symmetric.
"""

import math

import numpy as np

from .errors import EvaluationFailure


class Dual:
    __slots__ = ("val", "grad", "hess")

    def __init__(self, val, grad, hess=None):
        self.val = float(val)
        self.grad = grad
        self.hess = hess

    @classmethod
    def variable(cls, value, index, dim, second_order=False):
        grad = np.zeros(dim)
        grad[index] = 1.0
        hess = np.zeros((dim, dim)) if second_order else None
        return cls(value, grad, hess)

    def __repr__(self):
        return f"Dual({self.val!r}, grad={self.grad!r})"

    # -- helpers ---------------------------------------------------------

    def _lift(self, c):
        """Embed a plain number as a constant with the same order as ``self``."""
        grad = np.zeros_like(self.grad)
        hess = None if self.hess is None else np.zeros_like(self.hess)
        return Dual(c, grad, hess)

    def _chain(self, f0, f1, f2):
        """Apply a scalar function with derivatives f0, f1, f2 at ``self.val``."""
        grad = f1 * self.grad
        hess = None
        if self.hess is not None:
            hess = f2 * np.outer(self.grad, self.grad) + f1 * self.hess
        return Dual(f0, grad, hess)

    # -- arithmetic ------------------------------------------------------

    def __neg__(self):
        return Dual(-self.val, -self.grad, None if self.hess is None else -self.hess)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, Dual):
            return Dual(self.val + other, self.grad, self.hess)
        hess = None if self.hess is None else self.hess + other.hess
        return Dual(self.val + other.val, self.grad + other.grad, hess)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Dual):
            hess = None if self.hess is None else other * self.hess
            return Dual(self.val * other, other * self.grad, hess)
        a, b = self, other
        grad = a.val * b.grad + b.val * a.grad
        hess = None
        if a.hess is not None:
            cross = np.outer(a.grad, b.grad)
            hess = a.val * b.hess + b.val * a.hess + (cross + cross.T)
        return Dual(a.val * b.val, grad, hess)

    __rmul__ = __mul__

    def reciprocal(self):
        v = self.val
        if v == 0.0:
            raise EvaluationFailure("division by zero")
        return self._chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))

    def __truediv__(self, other):
        if not isinstance(other, Dual):
            if other == 0:
                raise EvaluationFailure("division by zero")
            return self * (1.0 / other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, other):
        if isinstance(other, Dual):
            return dual_pow(self, other)
        return power_const(self, float(other))

    def __rpow__(self, other):
        return dual_pow(self._lift(other), self)

    # -- elementary functions ---------------------------------------------

    def exp(self):
        e = math.exp(self.val)
        return self._chain(e, e, e)

    def log(self):
        v = self.val
        if v <= 0.0:
            raise EvaluationFailure(f"log of non-positive value {v!r}")
        return self._chain(math.log(v), 1.0 / v, -1.0 / (v * v))

    def sin(self):
        s, c = math.sin(self.val), math.cos(self.val)
        return self._chain(s, c, -s)

    def cos(self):
        s, c = math.sin(self.val), math.cos(self.val)
        return self._chain(c, -s, -c)

    def sqrt(self):
        v = self.val
        if v <= 0.0:
            raise EvaluationFailure(f"sqrt is not differentiable at {v!r}")
        r = math.sqrt(v)
        return self._chain(r, 0.5 / r, -0.25 / (r * v))

    def abs(self):
        v = self.val
        if v == 0.0:
            raise EvaluationFailure("abs is not differentiable at its kink (0)")
        s = 1.0 if v > 0 else -1.0
        return self._chain(abs(v), s, 0.0)


def power_const(x, c):
    """``x ** c`` for a constant exponent ``c``."""
    v = x.val
    if float(c).is_integer():
        n = int(c)
        if n == 0:
            return x._lift(1.0)
        if n < 0 and v == 0.0:
            raise EvaluationFailure("zero raised to a negative power")
        # derivatives of v**n, guarding 0**negative for the low-order terms
        f0 = v ** n
        f1 = n * v ** (n - 1) if n != 1 else 1.0
        f2 = n * (n - 1) * v ** (n - 2) if n not in (0, 1) else 0.0
        return x._chain(f0, f1, f2)
    if v <= 0.0:
        raise EvaluationFailure(f"non-integer power {c!r} of non-positive value {v!r}")
    return x._chain(v ** c, c * v ** (c - 1), c * (c - 1) * v ** (c - 2))


def dual_pow(base, expo):
    if not isinstance(base, Dual):
        if base <= 0:
            raise EvaluationFailure(f"variable exponent on non-positive base {base!r}")
        return (expo * math.log(base)).exp()
    return (expo * base.log()).exp()
