"""Dense/sparse LU factorization with explicit reuse, plus Jacobian assembly.

A single LuFactors object serves any number of back-substitutions, which is
what makes the two linear solves per Halley iteration share one O(n^3) (or
sparse) factorization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import SingularMatrix
from .taylor import seed

PIVOT_RTOL = 1e-14


@dataclass(frozen=True)
class CsMatrix:
    """Square compressed-column matrix."""

    n: int
    colptr: np.ndarray
    rowind: np.ndarray
    values: np.ndarray

    def to_scipy(self) -> sp.csc_matrix:
        return sp.csc_matrix(
            (self.values, self.rowind, self.colptr), shape=(self.n, self.n)
        )

    def to_dense(self) -> np.ndarray:
        return self.to_scipy().toarray()

    @classmethod
    def from_coo(cls, n, rows, cols, vals) -> "CsMatrix":
        m = sp.csc_matrix((vals, (rows, cols)), shape=(n, n))
        m.sort_indices()
        return cls(n=n, colptr=m.indptr, rowind=m.indices, values=m.data)


class LuFactors:
    """Reusable LU factorization of a square matrix (row-pivoted)."""

    def __init__(self, kind, handle, n):
        self.kind = kind  # "dense" | "sparse"
        self._handle = handle
        self.n = n

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        rhs = np.asarray(rhs, dtype=float)
        if self.kind == "dense":
            return sla.lu_solve(self._handle, rhs)
        return self._handle.solve(rhs)

    # factor access for reconstruction checks
    @property
    def L(self):
        if self.kind == "dense":
            lu, _ = self._handle
            return np.tril(lu, -1) + np.eye(self.n)
        return self._handle.L.toarray()

    @property
    def U(self):
        if self.kind == "dense":
            lu, _ = self._handle
            return np.triu(lu)
        return self._handle.U.toarray()

    @property
    def row_perm(self):
        """Permutation p such that A[p] = L @ U."""
        if self.kind == "dense":
            _, piv = self._handle
            p = np.arange(self.n)
            for i, j in enumerate(piv):
                p[i], p[j] = p[j], p[i]
            return p
        return np.argsort(self._handle.perm_r)


def lu_factor(A) -> LuFactors:
    if isinstance(A, CsMatrix):
        return _lu_sparse(A)
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    scale = np.max(np.abs(A)) if n else 0.0
    lu, piv = sla.lu_factor(A, check_finite=True)
    diag = np.abs(np.diag(lu))
    if np.any(diag <= PIVOT_RTOL * scale):
        raise SingularMatrix("pivot below threshold in dense LU")
    return LuFactors("dense", (lu, piv), n)


def _lu_sparse(A: CsMatrix) -> LuFactors:
    m = A.to_scipy()
    scale = np.max(np.abs(m.data)) if m.nnz else 0.0
    try:
        handle = spla.splu(
            m,
            permc_spec="NATURAL",
            diag_pivot_thresh=1.0,
            options={"SymmetricMode": False},
        )
    except RuntimeError as exc:  # SuperLU reports exact singularity this way
        raise SingularMatrix(str(exc)) from exc
    diag = np.abs(handle.U.diagonal())
    if np.any(diag <= PIVOT_RTOL * scale):
        raise SingularMatrix("pivot below threshold in sparse LU")
    return LuFactors("sparse", handle, A.n)


def lu_solve(F: LuFactors, rhs: np.ndarray) -> np.ndarray:
    return F.solve(rhs)


def dense_jacobian(problem, x: np.ndarray) -> np.ndarray:
    """Jacobian column by column from first-order directional evaluations."""
    x = np.asarray(x, dtype=float)
    n = problem.n
    J = np.empty((n, n))
    for j in range(n):
        v = np.zeros(n)
        v[j] = 1.0
        out = problem.residual(seed(x, v, 1))
        J[:, j] = out.coeffs[1]
    return J
