"""Solve reports and work counters shared by the scalar and system solvers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Status(enum.Enum):
    CONVERGED = "Converged"
    MAX_ITER = "MaxIter"
    DEGENERATE = "Degenerate"
    DIVERGED = "Diverged"


@dataclass
class Counters:
    f_evals: int = 0
    factorizations: int = 0
    back_solves: int = 0

    def merge(self, other: "Counters") -> None:
        self.f_evals += other.f_evals
        self.factorizations += other.factorizations
        self.back_solves += other.back_solves


@dataclass
class SolveReport:
    root: object
    status: Status
    iterations: int
    residual_history: list = field(default_factory=list)
    iterate_history: list = field(default_factory=list)
    counters: Counters = field(default_factory=Counters)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED
