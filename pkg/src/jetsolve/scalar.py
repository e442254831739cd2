"""Householder's method of arbitrary order for univariate equations.

The order-p update is x + g[p-1]/g[p] where g are the Taylor coefficients
of 1/f along the unit direction at x.  p=1 reduces to Newton's method,
p=2 to Halley's method; the iteration converges with order p+1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InsufficientData, ZeroPrimal
from .report import Counters, SolveReport, Status
from .taylor import PRIMAL_FLOOR, reciprocal, seed


@dataclass(frozen=True)
class ScalarSolveConfig:
    order: int = 2
    tol: float = 1e-12
    max_iter: int = 100

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


class _DegenerateStep(Exception):
    pass


def householder_step(f, x: float, p: int) -> float:
    """One order-p Householder update from x.

    Raises _DegenerateStep internally via householder_solve; callers using
    this directly see ZeroPrimal / _DegenerateStep on flat spots.
    """
    fx = f(seed(x, 1.0, p))
    g = reciprocal(fx)
    denom = g.coeffs[p]
    if abs(denom) <= PRIMAL_FLOOR:
        raise _DegenerateStep(f"vanishing order-{p} reciprocal coefficient at x={x}")
    return x + g.coeffs[p - 1] / denom


def householder_solve(f, x0: float, cfg: ScalarSolveConfig) -> SolveReport:
    x = float(x0)
    counters = Counters()
    iterates = [x]
    fx = f(x)
    counters.f_evals += 1
    residuals = [abs(fx)]
    status = Status.MAX_ITER
    iterations = 0
    while iterations < cfg.max_iter:
        if residuals[-1] <= cfg.tol:
            status = Status.CONVERGED
            break
        try:
            x = householder_step(f, x, cfg.order)
        except (ZeroPrimal, _DegenerateStep):
            status = Status.DEGENERATE
            break
        counters.f_evals += 1
        iterations += 1
        if not math.isfinite(x):
            status = Status.DIVERGED
            iterates.append(x)
            residuals.append(math.inf)
            break
        fx = f(x)
        counters.f_evals += 1
        iterates.append(x)
        residuals.append(abs(fx))
        if not math.isfinite(fx):
            status = Status.DIVERGED
            break
    if status is Status.MAX_ITER and residuals[-1] <= cfg.tol:
        status = Status.CONVERGED
    return SolveReport(
        root=x,
        status=status,
        iterations=iterations,
        residual_history=residuals,
        iterate_history=iterates,
        counters=counters,
    )


def empirical_order(iterate_history, root: float, num_pairs: int = 2) -> float:
    """Estimate the convergence order from the tail of an iterate sequence.

    Uses ratios log|e_{k+1}| / log|e_k| over the last num_pairs consecutive
    error pairs with both errors in (0, 1).
    """
    errors = [abs(x - root) for x in iterate_history]
    ratios = []
    for ek, ek1 in zip(errors, errors[1:]):
        if 0.0 < ek < 1.0 and 0.0 < ek1 < 1.0 and ek1 < ek:
            ratios.append(math.log(ek1) / math.log(ek))
    if not ratios:
        raise InsufficientData("no usable error pairs in (0, 1)")
    tail = ratios[-num_pairs:]
    return sum(tail) / len(tail)
