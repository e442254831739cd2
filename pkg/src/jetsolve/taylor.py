"""Truncated Taylor-series ("jet") arithmetic along a single direction.

A bundle of order p stores p+1 coefficients; entry k is the k-th Taylor
coefficient of the propagated curve, i.e. the k-th directional derivative
divided by k!.  Coefficients are either plain floats (univariate use) or
numpy arrays of one fixed shape (vector use); all arithmetic below works
identically for both since it only relies on elementwise +, -, *.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, ZeroPrimal

# Primal magnitudes below this are treated as a hard degeneracy; solvers
# layer their own (much larger) tolerances on top.
PRIMAL_FLOOR = 1e-300


def _min_abs(c):
    return float(np.min(np.abs(c)))


def _zeros_like(c):
    if isinstance(c, np.ndarray):
        return np.zeros_like(c, dtype=float)
    return 0.0


class TaylorBundle:
    """Value plus p directional-derivative coefficients, immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) < 2:
            raise ValueError("a bundle needs order >= 1 (at least two coefficients)")
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self):
        return self.coeffs[0]

    def __repr__(self):
        return f"TaylorBundle({list(self.coeffs)!r})"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, TaylorBundle):
            self._check_compatible(other)
            return TaylorBundle(a + b for a, b in zip(self.coeffs, other.coeffs))
        return TaylorBundle((self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TaylorBundle(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, TaylorBundle):
            self._check_compatible(other)
            a, b = self.coeffs, other.coeffs
            out = []
            for k in range(len(a)):
                acc = a[0] * b[k]
                for j in range(1, k + 1):
                    acc = acc + a[j] * b[k - j]
                out.append(acc)
            return TaylorBundle(out)
        return TaylorBundle(c * other for c in self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TaylorBundle):
            return self * reciprocal(other)
        return TaylorBundle(c / other for c in self.coeffs)

    def __rtruediv__(self, other):
        return reciprocal(self) * other

    def __pow__(self, exponent):
        return power(self, exponent)

    def __rpow__(self, base):
        # base ** self for a positive constant base
        if np.any(np.asarray(base) <= 0.0):
            raise DomainError("constant base of ** must be positive")
        return exp(self * math.log(base) if np.isscalar(base) else self * np.log(base))

    # -- comparisons read the primal only ----------------------------------

    def __lt__(self, other):
        return self.value < _primal(other)

    def __le__(self, other):
        return self.value <= _primal(other)

    def __gt__(self, other):
        return self.value > _primal(other)

    def __ge__(self, other):
        return self.value >= _primal(other)

    def _check_compatible(self, other):
        if self.order != other.order:
            raise ValueError(
                f"order mismatch: {self.order} vs {other.order}"
            )


def _primal(x):
    return x.value if isinstance(x, TaylorBundle) else x


def seed(x, v, p: int) -> TaylorBundle:
    """Bundle (x, v, 0, ..., 0) of order p >= 1."""
    if p < 1:
        raise ValueError("order must be >= 1")
    if isinstance(x, np.ndarray) or isinstance(v, np.ndarray):
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        if x.shape != v.shape:
            raise ValueError(f"shape mismatch: {x.shape} vs {v.shape}")
        zero = np.zeros_like(x)
        return TaylorBundle((x, v) + (zero,) * (p - 1))
    return TaylorBundle((float(x), float(v)) + (0.0,) * (p - 1))


def derivative(b: TaylorBundle, k: int):
    """k-th directional derivative, i.e. k! times coefficient k."""
    if not 0 <= k <= b.order:
        raise IndexError(f"derivative order {k} outside [0, {b.order}]")
    return math.factorial(k) * b.coeffs[k]


def reciprocal(f: TaylorBundle) -> TaylorBundle:
    """Coefficients of 1/f; requires the primal to stay away from zero."""
    f0 = f.coeffs[0]
    if _min_abs(f0) < PRIMAL_FLOOR:
        raise ZeroPrimal("reciprocal of a (near-)zero primal")
    g0 = 1.0 / f0
    out = [g0]
    for k in range(1, f.order + 1):
        acc = f.coeffs[1] * out[k - 1]
        for j in range(2, k + 1):
            acc = acc + f.coeffs[j] * out[k - j]
        out.append(-g0 * acc)
    return TaylorBundle(out)


def exp(f: TaylorBundle) -> TaylorBundle:
    g0 = np.exp(f.coeffs[0]) if isinstance(f.coeffs[0], np.ndarray) else math.exp(f.coeffs[0])
    out = [g0]
    for k in range(1, f.order + 1):
        acc = 1 * f.coeffs[1] * out[k - 1]
        for j in range(2, k + 1):
            acc = acc + j * f.coeffs[j] * out[k - j]
        out.append(acc / k)
    return TaylorBundle(out)


def log(f: TaylorBundle) -> TaylorBundle:
    f0 = f.coeffs[0]
    if np.any(np.asarray(f0) <= 0.0):
        raise DomainError("log of a non-positive primal")
    g0 = np.log(f0) if isinstance(f0, np.ndarray) else math.log(f0)
    out = [g0]
    for k in range(1, f.order + 1):
        acc = f.coeffs[k] * k
        for j in range(1, k):
            acc = acc - j * out[j] * f.coeffs[k - j]
        out.append(acc / (k * f0))
    return TaylorBundle(out)


def sin(f: TaylorBundle) -> TaylorBundle:
    return _sin_cos(f)[0]


def cos(f: TaylorBundle) -> TaylorBundle:
    return _sin_cos(f)[1]


def _sin_cos(f: TaylorBundle):
    f0 = f.coeffs[0]
    if isinstance(f0, np.ndarray):
        s0, c0 = np.sin(f0), np.cos(f0)
    else:
        s0, c0 = math.sin(f0), math.cos(f0)
    s, c = [s0], [c0]
    for k in range(1, f.order + 1):
        sa = _zeros_like(f0)
        ca = _zeros_like(f0)
        for j in range(1, k + 1):
            sa = sa + j * f.coeffs[j] * c[k - j]
            ca = ca + j * f.coeffs[j] * s[k - j]
        s.append(sa / k)
        c.append(-ca / k)
    return TaylorBundle(s), TaylorBundle(c)


def sqrt(f: TaylorBundle) -> TaylorBundle:
    if np.any(np.asarray(f.coeffs[0]) <= 0.0):
        raise DomainError("sqrt of a non-positive primal")
    return power(f, 0.5)


def power(f: TaylorBundle, exponent) -> TaylorBundle:
    """f ** exponent for an integer or real constant exponent."""
    if isinstance(exponent, TaylorBundle):
        return exp(log(f) * exponent)
    if float(exponent) == int(exponent) and abs(exponent) <= 64:
        return _int_power(f, int(exponent))
    f0 = f.coeffs[0]
    if np.any(np.asarray(f0) <= 0.0):
        raise DomainError("real power of a non-positive primal")
    r = float(exponent)
    g0 = f0 ** r
    out = [g0]
    # f g' = r f' g, in Taylor coefficients: k f0 g_k = sum_j (j(r+1)-k) f_j g_{k-j}
    for k in range(1, f.order + 1):
        acc = _zeros_like(f0)
        for j in range(1, k + 1):
            acc = acc + (j * (r + 1) - k) * f.coeffs[j] * out[k - j]
        out.append(acc / (k * f0))
    return TaylorBundle(out)


def _int_power(f: TaylorBundle, m: int) -> TaylorBundle:
    if m < 0:
        return reciprocal(_int_power(f, -m))
    if m == 0:
        one = _zeros_like(f.coeffs[0]) + 1.0
        return TaylorBundle((one,) + tuple(_zeros_like(f.coeffs[0]) for _ in range(f.order)))
    result = None
    base = f
    while m:
        if m & 1:
            result = base if result is None else result * base
        m >>= 1
        if m:
            base = base * base
    return result
