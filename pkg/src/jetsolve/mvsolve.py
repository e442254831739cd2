"""Newton and Halley iterations for systems of nonlinear equations.

Halley's update per iteration:

    a solves  J(x) a = -f(x)
    b solves  J(x) b = D2f(x)[a, a]
    x <- x + (a * a) / (a + b / 2)        (componentwise)

Both solves share one LU factorization of J(x); the second directional
derivative comes from a single order-2 Taylor evaluation of the residual.
A full-Hessian variant (NaiveHalley) is kept as an equivalence oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, SingularMatrix, ZeroPrimal
from .linalg import dense_jacobian, lu_factor, lu_solve
from .report import Counters, SolveReport, Status
from .sparsity import (
    Coloring,
    SparsityPattern,
    color_columns,
    compressed_jacobian,
    detect_pattern,
)
from .taylor import seed

NAIVE_HALLEY_MAX_N = 64
_DENOM_FLOOR = 1e-12


@dataclass(frozen=True)
class NonlinearProblem:
    n: int
    residual: Callable
    initial_guess: np.ndarray
    pattern: Optional[SparsityPattern] = None


@dataclass(frozen=True)
class MvSolveConfig:
    tol: float = 1e-8
    max_iter: int = 100
    jacobian_strategy: str = "dense"  # "dense" | "sparse"
    method: str = "halley"  # "newton" | "halley" | "naive-halley"

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.jacobian_strategy not in ("dense", "sparse"):
            raise ValueError(f"unknown jacobian strategy {self.jacobian_strategy!r}")
        if self.method not in ("newton", "halley", "naive-halley"):
            raise ValueError(f"unknown method {self.method!r}")


def second_directional(problem: NonlinearProblem, x, a) -> np.ndarray:
    """D2f(x)[a, a] from one order-2 Taylor evaluation."""
    out = problem.residual(seed(np.asarray(x, float), np.asarray(a, float), 2))
    return 2.0 * out.coeffs[2]


def _halley_update(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Componentwise a*a/(a + b/2), falling back to the Newton increment a
    where the denominator degenerates (the b -> 0 limit of the update)."""
    denom = a + 0.5 * b
    bad = np.abs(denom) <= _DENOM_FLOOR * (np.abs(a) + 1e-300)
    safe = np.where(bad, 1.0, denom)
    return np.where(bad, a, a * a / safe)


def halley_step(problem: NonlinearProblem, x, F, fx, counters=None) -> np.ndarray:
    """One Halley update given the factored Jacobian F and residual fx."""
    a = lu_solve(F, -np.asarray(fx, float))
    h = second_directional(problem, x, a)
    b = lu_solve(F, h)
    if counters is not None:
        counters.back_solves += 2
        counters.f_evals += 1
    return np.asarray(x, float) + _halley_update(a, b)


def _naive_hessian(problem: NonlinearProblem, x) -> np.ndarray:
    """Full n*n*n second-derivative array via n^2 directional probes."""
    n = problem.n
    if n > NAIVE_HALLEY_MAX_N:
        raise ValueError(f"naive Halley limited to n <= {NAIVE_HALLEY_MAX_N}")
    diag = np.empty((n, n))
    eye = np.eye(n)
    for i in range(n):
        diag[i] = second_directional(problem, x, eye[i])
    T = np.empty((n, n, n))
    for i in range(n):
        for j in range(i, n):
            if i == j:
                T[:, i, i] = diag[i]
            else:
                mixed = second_directional(problem, x, eye[i] + eye[j])
                T[:, i, j] = T[:, j, i] = 0.5 * (mixed - diag[i] - diag[j])
    return T


def solve(problem: NonlinearProblem, cfg: MvSolveConfig) -> SolveReport:
    x = np.array(problem.initial_guess, dtype=float)
    counters = Counters()
    pattern = coloring = None
    if cfg.jacobian_strategy == "sparse":
        pattern = problem.pattern or detect_pattern(problem)
        coloring = color_columns(pattern)

    def jacobian(xv):
        if cfg.jacobian_strategy == "sparse":
            counters.f_evals += coloring.num_colors
            return compressed_jacobian(problem, xv, pattern, coloring)
        counters.f_evals += problem.n
        return dense_jacobian(problem, xv)

    fx = np.asarray(problem.residual(x), dtype=float)
    counters.f_evals += 1
    res = float(np.max(np.abs(fx)))
    residuals = [res]
    iterates = [x.copy()]
    status = Status.MAX_ITER
    iterations = 0
    while iterations < cfg.max_iter:
        if residuals[-1] <= cfg.tol:
            status = Status.CONVERGED
            break
        try:
            F = lu_factor(jacobian(x))
            counters.factorizations += 1
            a = lu_solve(F, -fx)
            counters.back_solves += 1
            if cfg.method == "newton":
                x = x + a
            elif cfg.method == "halley":
                h = second_directional(problem, x, a)
                counters.f_evals += 1
                b = lu_solve(F, h)
                counters.back_solves += 1
                x = x + _halley_update(a, b)
            else:  # naive-halley: explicit Hessian contraction, test oracle
                T = _naive_hessian(problem, x)
                counters.f_evals += problem.n * (problem.n + 1) // 2 + problem.n
                h = np.einsum("kij,i,j->k", T, a, a)
                b = lu_solve(F, h)
                counters.back_solves += 1
                x = x + _halley_update(a, b)
        except (SingularMatrix, ZeroPrimal, DomainError):
            status = Status.DEGENERATE
            break
        iterations += 1
        if not np.all(np.isfinite(x)):
            status = Status.DIVERGED
            iterates.append(x.copy())
            residuals.append(float("inf"))
            break
        fx = np.asarray(problem.residual(x), dtype=float)
        counters.f_evals += 1
        iterates.append(x.copy())
        residuals.append(float(np.max(np.abs(fx))))
        if not np.isfinite(residuals[-1]):
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
