"""Shared oracles for the test suite.

These are deliberately independent of the library internals: polynomial
convolution via numpy, finite differences with Richardson extrapolation,
bisection, and a Thomas tridiagonal solve.
"""

import math

import numpy as np


def poly_mul_truncated(a, b, order):
    """Convolution of coefficient sequences, truncated at `order`."""
    full = np.convolve(np.asarray(a, float), np.asarray(b, float))
    return full[: order + 1]


def central_derivative(f, x, k, h):
    """k-th derivative by the central k-th difference, O(h^2)."""
    acc = 0.0
    for i in range(k + 1):
        acc += (-1) ** i * math.comb(k, i) * f(x + (k / 2 - i) * h)
    return acc / h ** k


def richardson_derivative(f, x, k, h=None, levels=2):
    """Central difference with `levels` Richardson halvings (O(h^{2+2*levels}))."""
    if h is None:
        h = 0.05 if k >= 3 else 0.01
    table = [central_derivative(f, x, k, h / 2 ** i) for i in range(levels + 1)]
    for m in range(1, levels + 1):
        factor = 4.0 ** m
        table = [
            (factor * table[i + 1] - table[i]) / (factor - 1.0)
            for i in range(len(table) - 1)
        ]
    return table[0]


def bisect(f, lo, hi, tol=1e-14, max_iter=200):
    flo, fhi = f(lo), f(hi)
    assert flo * fhi < 0, "oracle bracket must straddle the root"
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0 or hi - lo < tol:
            return mid
        if flo * fmid < 0:
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def thomas_solve(lower, diag, upper, rhs):
    """Tridiagonal solve by forward elimination / back substitution."""
    n = len(diag)
    c = np.array(upper, float)
    d = np.array(diag, float)
    b = np.array(rhs, float)
    a = np.array(lower, float)
    for i in range(1, n):
        w = a[i - 1] / d[i - 1]
        d[i] -= w * c[i - 1]
        b[i] -= w * b[i - 1]
    x = np.empty(n)
    x[-1] = b[-1] / d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = (b[i] - c[i] * x[i + 1]) / d[i]
    return x


def second_directional_fd(residual, x, a, h=1e-4):
    """(f(x+ha) - 2f(x) + f(x-ha)) / h^2 with one Richardson halving."""

    def probe(step):
        return (residual(x + step * a) - 2.0 * residual(x) + residual(x - step * a)) / step ** 2

    d1 = probe(h)
    d2 = probe(h / 2)
    return (4.0 * d2 - d1) / 3.0
