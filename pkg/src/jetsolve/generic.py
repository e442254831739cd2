"""Evaluation-mode dispatch for problem residuals.

Residual functions are written once against these helpers and then run in
three modes: plain floats / float arrays (primal evaluation), TaylorBundle
(derivative propagation), and object arrays of IndexSet (sparsity tracing).
The three modes share the same arithmetic sequence, so primal values agree
bitwise between modes.
"""

from __future__ import annotations

import math

import numpy as np

from . import taylor, tracer
from .taylor import TaylorBundle
from .tracer import IndexSet


def _is_tracer(x):
    return isinstance(x, IndexSet) or (
        isinstance(x, np.ndarray) and x.dtype == object
    )


def _map_tracer(x, name):
    if isinstance(x, IndexSet):
        return tracer.elementary(name, x)
    out = np.empty(x.shape, dtype=object)
    for i, s in enumerate(x.flat):
        out.flat[i] = tracer.elementary(name, s)
    return out


def exp(x):
    if isinstance(x, TaylorBundle):
        return taylor.exp(x)
    if _is_tracer(x):
        return _map_tracer(x, "exp")
    return np.exp(x) if isinstance(x, np.ndarray) else math.exp(x)


def log(x):
    if isinstance(x, TaylorBundle):
        return taylor.log(x)
    if _is_tracer(x):
        return _map_tracer(x, "log")
    return np.log(x) if isinstance(x, np.ndarray) else math.log(x)


def sin(x):
    if isinstance(x, TaylorBundle):
        return taylor.sin(x)
    if _is_tracer(x):
        return _map_tracer(x, "sin")
    return np.sin(x) if isinstance(x, np.ndarray) else math.sin(x)


def cos(x):
    if isinstance(x, TaylorBundle):
        return taylor.cos(x)
    if _is_tracer(x):
        return _map_tracer(x, "cos")
    return np.cos(x) if isinstance(x, np.ndarray) else math.cos(x)


def sqrt(x):
    if isinstance(x, TaylorBundle):
        return taylor.sqrt(x)
    if _is_tracer(x):
        return _map_tracer(x, "sqrt")
    return np.sqrt(x) if isinstance(x, np.ndarray) else math.sqrt(x)


def value(x):
    """Primal part of a value in any mode (float or float array)."""
    if isinstance(x, TaylorBundle):
        return x.value
    if isinstance(x, IndexSet):
        return x.val
    if isinstance(x, np.ndarray) and x.dtype == object:
        return np.array([s.val for s in x])
    return x


def take(x, idx):
    """Fancy-index a generic vector with an integer index array."""
    if isinstance(x, TaylorBundle):
        return TaylorBundle(c[idx] for c in x.coeffs)
    return x[idx]


def concat(*parts):
    """Concatenate generic vectors of the same mode."""
    if isinstance(parts[0], TaylorBundle):
        order = parts[0].order
        return TaylorBundle(
            np.concatenate([p.coeffs[k] for p in parts]) for k in range(order + 1)
        )
    return np.concatenate(parts)


def linear_apply(W, x):
    """Matrix-vector product W @ x for a constant matrix W."""
    if isinstance(x, TaylorBundle):
        return TaylorBundle(W @ c for c in x.coeffs)
    if isinstance(x, np.ndarray) and x.dtype == object:
        return np.dot(W, x)
    return W @ x
