"""Jacobian sparsity detection, greedy coloring, compressed recovery.

Sparsity is detected symbolically by pushing index sets through the residual
once; structurally orthogonal columns are then grouped by a greedy coloring
so the whole Jacobian is recovered from num_colors directional evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import CsMatrix
from .taylor import seed
from .tracer import IndexSet


@dataclass(frozen=True)
class SparsityPattern:
    n: int
    rows: tuple  # rows[i] = sorted tuple of column indices

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def max_row_degree(self) -> int:
        return max((len(r) for r in self.rows), default=0)

    def contains(self, i: int, j: int) -> bool:
        return j in self.rows[i]

    def dump(self, path) -> None:
        """Write one `row col` pair per line."""
        with open(path, "w") as fh:
            for i, row in enumerate(self.rows):
                for j in row:
                    fh.write(f"{i} {j}\n")


@dataclass(frozen=True)
class Coloring:
    colors: np.ndarray

    @property
    def num_colors(self) -> int:
        return int(self.colors.max()) + 1 if len(self.colors) else 0


def detect_pattern(problem) -> SparsityPattern:
    x0 = np.asarray(problem.initial_guess, dtype=float)
    n = problem.n
    tracer_vec = np.empty(n, dtype=object)
    for j in range(n):
        tracer_vec[j] = IndexSet(frozenset((j,)), x0[j])
    out = problem.residual(tracer_vec)
    rows = []
    for entry in out:
        if isinstance(entry, IndexSet):
            rows.append(tuple(sorted(entry.deps)))
        else:  # constant output row
            rows.append(())
    if len(rows) != n:
        raise ValueError("residual output length differs from problem dimension")
    return SparsityPattern(n=n, rows=tuple(rows))


def color_columns(pattern: SparsityPattern) -> Coloring:
    """Greedy sequential coloring in natural column order."""
    n = pattern.n
    # columns sharing a row conflict
    col_rows = [[] for _ in range(n)]
    for i, row in enumerate(pattern.rows):
        for j in row:
            col_rows[j].append(i)
    colors = np.full(n, -1, dtype=int)
    row_colors = [set() for _ in range(n)]  # colors already present in each row
    for j in range(n):
        used = set()
        for i in col_rows[j]:
            used |= row_colors[i]
        c = 0
        while c in used:
            c += 1
        colors[j] = c
        for i in col_rows[j]:
            row_colors[i].add(c)
    return Coloring(colors=colors)


def compressed_jacobian(
    problem, x: np.ndarray, pattern: SparsityPattern, coloring: Coloring
) -> CsMatrix:
    """Recover the Jacobian from one directional evaluation per color."""
    x = np.asarray(x, dtype=float)
    n = problem.n
    rows_idx, cols_idx, vals = [], [], []
    # column lists per color, and per-row column lookup
    by_color = [[] for _ in range(coloring.num_colors)]
    for j in range(n):
        by_color[coloring.colors[j]].append(j)
    for k, cols in enumerate(by_color):
        v = np.zeros(n)
        v[cols] = 1.0
        out = problem.residual(seed(x, v, 1))
        deriv = out.coeffs[1]
        in_color = np.zeros(n, dtype=bool)
        in_color[cols] = True
        for i, row in enumerate(pattern.rows):
            for j in row:
                if in_color[j]:
                    rows_idx.append(i)
                    cols_idx.append(j)
                    vals.append(deriv[i])
    return CsMatrix.from_coo(n, rows_idx, cols_idx, vals)


def validate_coloring(pattern: SparsityPattern, coloring: Coloring) -> bool:
    """Direct pairwise scan: no two same-colored columns share a row."""
    for row in pattern.rows:
        seen = {}
        for j in row:
            c = coloring.colors[j]
            if c in seen:
                return False
            seen[c] = j
    return True
