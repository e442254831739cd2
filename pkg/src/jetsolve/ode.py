"""Implicit trapezoid and TR-BDF2 steppers with a pluggable inner solver.

Stage equations are solved with the system Newton/Halley solver, so a stiff
integration doubles as a workload comparison between the two.  Step size is
controlled by step doubling: advance once with h and twice with h/2, compare,
and accept the fine result when the discrepancy is within tolerance.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import InnerSolveFailed, StepSizeUnderflow, ZeroReference
from .mvsolve import MvSolveConfig, NonlinearProblem, solve
from .report import Counters
from .sparsity import color_columns, detect_pattern

_TRBDF2_GAMMA = 2.0 - math.sqrt(2.0)


@dataclass(frozen=True)
class StepperConfig:
    scheme: str = "trapezoid"  # "trapezoid" | "trbdf2"
    inner: str = "newton"  # "newton" | "halley"
    abstol: float = 1e-6
    reltol: float = 1e-4
    h_init: float = 1e-3
    h_min: float = 1e-10
    h_max: float = 1.0
    jacobian_strategy: str = "sparse"
    inner_tol_factor: float = 0.01  # inner tol = factor * abstol
    inner_max_iter: int = 25

    def __post_init__(self):
        if self.scheme not in ("trapezoid", "trbdf2"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.inner not in ("newton", "halley"):
            raise ValueError(f"unknown inner solver {self.inner!r}")
        if not 0.0 < self.h_min <= self.h_init <= self.h_max:
            raise ValueError("require 0 < h_min <= h_init <= h_max")
        if self.abstol <= 0 or self.reltol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class StepStats:
    nonlinear_iterations: int = 0
    counters: Counters = field(default_factory=Counters)

    def merge(self, other: "StepStats"):
        self.nonlinear_iterations += other.nonlinear_iterations
        self.counters.merge(other.counters)


@dataclass
class WorkPrecisionRecord:
    scheme: str
    inner: str
    tolerance: float
    error: float
    wall_time: float
    total_steps: int
    rejected_steps: int
    total_nonlinear_iterations: int
    total_factorizations: int
    total_back_solves: int


class _StageSolver:
    """Solves stage equations z - c*rhs(t, z) = rhs_const for one problem."""

    def __init__(self, problem, cfg: StepperConfig):
        self.problem = problem
        self.cfg = cfg
        self.pattern = None
        if cfg.jacobian_strategy == "sparse":
            # stage residual structure = rhs structure + diagonal, constant in t
            probe = NonlinearProblem(
                n=problem.n,
                residual=lambda z: z - self.problem.rhs(problem.t0, z),
                initial_guess=problem.y0,
            )
            self.pattern = detect_pattern(probe)

    def solve_stage(self, t_stage, coeff, const, guess):
        """Solve z - coeff * rhs(t_stage, z) - const = 0, warm started at guess."""
        rhs = self.problem.rhs

        def residual(z):
            return z - coeff * rhs(t_stage, z) - const

        inner_problem = NonlinearProblem(
            n=self.problem.n,
            residual=residual,
            initial_guess=guess,
            pattern=self.pattern,
        )
        mv_cfg = MvSolveConfig(
            tol=self.cfg.inner_tol_factor * self.cfg.abstol,
            max_iter=self.cfg.inner_max_iter,
            jacobian_strategy=self.cfg.jacobian_strategy,
            method=self.cfg.inner,
        )
        report = solve(inner_problem, mv_cfg)
        if not report.converged:
            raise InnerSolveFailed(
                f"inner {self.cfg.inner} solve failed at t={t_stage} "
                f"(status {report.status.value})"
            )
        stats = StepStats(
            nonlinear_iterations=report.iterations, counters=report.counters
        )
        return report.root, stats


def implicit_step(problem, t, y, h, cfg: StepperConfig, _solver=None):
    """One step of the configured scheme from (t, y); returns (y_next, stats)."""
    solver = _solver or _StageSolver(problem, cfg)
    y = np.asarray(y, dtype=float)
    stats = StepStats()
    f_now = np.asarray(problem.rhs(t, y), dtype=float)
    stats.counters.f_evals += 1
    if cfg.scheme == "trapezoid":
        const = y + 0.5 * h * f_now
        y_next, s = solver.solve_stage(t + h, 0.5 * h, const, y)
        stats.merge(s)
        return y_next, stats
    # TR-BDF2: trapezoid to t + gamma*h, then BDF2 to t + h
    g = _TRBDF2_GAMMA
    const1 = y + 0.5 * g * h * f_now
    y_mid, s1 = solver.solve_stage(t + g * h, 0.5 * g * h, const1, y)
    stats.merge(s1)
    d = g * (2.0 - g)
    const2 = (y_mid - (1.0 - g) ** 2 * y) / d
    coeff2 = (1.0 - g) / (2.0 - g) * h
    y_next, s2 = solver.solve_stage(t + h, coeff2, const2, y_mid)
    stats.merge(s2)
    return y_next, stats


def integrate(problem, cfg: StepperConfig):
    """Adaptive integration from t0 to t_end; returns (y_end, record)."""
    start = time.perf_counter()
    solver = _StageSolver(problem, cfg)
    t = problem.t0
    y = np.array(problem.y0, dtype=float)
    h = cfg.h_init
    total = StepStats()
    steps = 0
    rejected = 0
    while t < problem.t_end - 1e-14 * max(1.0, abs(problem.t_end)):
        h = min(h, problem.t_end - t)
        try:
            y_big, s_big = implicit_step(problem, t, y, h, cfg, solver)
            y_h1, s1 = implicit_step(problem, t, y, 0.5 * h, cfg, solver)
            y_fine, s2 = implicit_step(problem, t + 0.5 * h, y_h1, 0.5 * h, cfg, solver)
            total.merge(s_big)
            total.merge(s1)
            total.merge(s2)
        except InnerSolveFailed:
            rejected += 1
            h = 0.5 * h
            if h < cfg.h_min:
                raise StepSizeUnderflow(f"step underflow at t={t}")
            continue
        # both schemes are second order; doubling error estimate 2^2 - 1 = 3
        err = float(np.max(np.abs(y_fine - y_big))) / 3.0
        scale = cfg.abstol + cfg.reltol * max(
            float(np.max(np.abs(y))), float(np.max(np.abs(y_fine)))
        )
        if err <= scale:
            y = y_fine
            t += h
            steps += 1
        else:
            rejected += 1
        factor = 0.9 * (scale / max(err, 1e-300)) ** (1.0 / 3.0)
        h *= min(5.0, max(0.2, factor))
        h = min(h, cfg.h_max)
        if h < cfg.h_min:
            raise StepSizeUnderflow(f"step underflow at t={t}")
    record = WorkPrecisionRecord(
        scheme=cfg.scheme,
        inner=cfg.inner,
        tolerance=cfg.reltol,
        error=float("nan"),
        wall_time=time.perf_counter() - start,
        total_steps=steps,
        rejected_steps=rejected,
        total_nonlinear_iterations=total.nonlinear_iterations,
        total_factorizations=total.counters.factorizations,
        total_back_solves=total.counters.back_solves,
    )
    return y, record


def relative_l2_error(y, y_ref) -> float:
    y = np.asarray(y, float)
    y_ref = np.asarray(y_ref, float)
    if y.shape != y_ref.shape:
        raise ValueError("shape mismatch")
    denom = float(np.sum(y_ref * y_ref))
    if denom == 0.0:
        raise ZeroReference("reference solution has zero norm")
    return float(np.sum((y - y_ref) ** 2)) / denom
