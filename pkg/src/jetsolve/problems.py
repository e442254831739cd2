"""Benchmark problem library.

Univariate suite (six classic test equations), the discretized Chandrasekhar
H-equation (dense Jacobian), and the 2D Brusselator reaction-diffusion system
(steady-state nonlinear problem and time-dependent ODE), all written against
the generic-scalar helpers so they evaluate in plain, Taylor, and tracer mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import generic
from .mvsolve import NonlinearProblem


# -- univariate suite --------------------------------------------------------

@dataclass(frozen=True)
class UnivariateCase:
    id: int
    residual: Callable
    x0: float
    reference_root: float
    note: str


_OMEGA = 0.5671432904097838  # root of x = exp(-x), also of log(x) + x = 0


def univariate_suite():
    return [
        UnivariateCase(1, lambda x: x * x - 2.0, 1.0, math.sqrt(2.0), "sqrt(2)"),
        UnivariateCase(2, lambda x: generic.sqrt(x) - math.pi, 10.0, math.pi ** 2,
                       "pi^2"),
        UnivariateCase(3, lambda x: x - generic.exp(-x), 0.0, _OMEGA,
                       "Omega constant"),
        UnivariateCase(4, lambda x: x * x - 2.0 ** x, 3.3, 4.0,
                       "x^2 = 2^x, upper root"),
        UnivariateCase(5, lambda x: x + generic.sin(x) - 1.0, 0.5,
                       0.5109734293885691, "bisection root of x + sin x = 1"),
        UnivariateCase(6, lambda x: generic.log(x) + x, 1.0, _OMEGA,
                       "Omega constant (log x = -x)"),
    ]


# -- Chandrasekhar H-equation ------------------------------------------------

@dataclass(frozen=True)
class ChandrasekharConfig:
    n: int
    c: float = 0.9

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 < self.c < 1.0:
            raise ValueError("c must lie in (0, 1)")


def chandrasekhar(cfg: ChandrasekharConfig) -> NonlinearProblem:
    """Midpoint-rule discretization of the H-equation; dense coupling."""
    n = cfg.n
    mu = (np.arange(1, n + 1) - 0.5) / n
    # W[i, j] = (c / 2n) * mu_i / (mu_i + mu_j)
    W = (cfg.c / (2.0 * n)) * mu[:, None] / (mu[:, None] + mu[None, :])

    def residual(H):
        s = generic.linear_apply(W, H)
        return H - 1.0 / (1.0 - s)

    return NonlinearProblem(
        n=n, residual=residual, initial_guess=np.ones(n), pattern=None
    )


# -- Brusselator -------------------------------------------------------------

@dataclass(frozen=True)
class BrusselatorConfig:
    K: int
    A: float = 3.4
    B: float = 1.0
    alpha: float = 10.0
    source_active: bool = True

    def __post_init__(self):
        if self.K < 3:
            raise ValueError("K must be >= 3")
        if min(self.A, self.B, self.alpha) <= 0:
            raise ValueError("parameters must be positive")


def _grid(cfg: BrusselatorConfig):
    K = cfg.K
    coords = np.arange(K) / K  # nodes i/K, spacing h = 1/K, periodic wrap
    X, Y = np.meshgrid(coords, coords, indexing="ij")
    return X.ravel(), Y.ravel()


@lru_cache(maxsize=None)
def _neighbor_indices(K: int):
    idx = np.arange(K * K).reshape(K, K)
    return (
        np.roll(idx, 1, axis=0).ravel(),
        np.roll(idx, -1, axis=0).ravel(),
        np.roll(idx, 1, axis=1).ravel(),
        np.roll(idx, -1, axis=1).ravel(),
    )


def brusselator_source(x, y, t) -> np.ndarray:
    """Localized source: 5 inside the disk around (0.3, 0.6), once t >= 1.1."""
    inside = (x - 0.3) ** 2 + (y - 0.6) ** 2 <= 0.1 ** 2
    if np.isscalar(inside):
        return 5.0 if (inside and t >= 1.1) else 0.0
    return np.where(inside & (t >= 1.1), 5.0, 0.0)


def brusselator_initial_state(cfg: BrusselatorConfig) -> np.ndarray:
    x, y = _grid(cfg)
    u0 = 22.0 * (y * (1.0 - y)) ** 1.5
    v0 = 27.0 * (x * (1.0 - x)) ** 1.5
    return np.concatenate([u0, v0])


def _brusselator_rates(cfg: BrusselatorConfig, z, source: np.ndarray):
    """(du/dt, dv/dt) of the discretized system for a packed state z."""
    K = cfg.K
    m = K * K
    inv_h2 = float(K * K)  # 1 / h^2 with h = 1/K
    up, down, left, right = _neighbor_indices(K)
    u = generic.take(z, np.arange(m))
    v = generic.take(z, np.arange(m, 2 * m))

    def lap(w):
        return (
            generic.take(w, up)
            + generic.take(w, down)
            + generic.take(w, left)
            + generic.take(w, right)
            - 4.0 * w
        )

    uuv = u * u * v
    du = cfg.B + uuv - (cfg.A + 1.0) * u + cfg.alpha * inv_h2 * lap(u) + source
    dv = cfg.A * u - uuv + cfg.alpha * inv_h2 * lap(v)
    return du, dv


def brusselator_steady(cfg: BrusselatorConfig) -> NonlinearProblem:
    x, y = _grid(cfg)
    source = brusselator_source(x, y, math.inf) if cfg.source_active else np.zeros(
        cfg.K * cfg.K
    )

    def residual(z):
        du, dv = _brusselator_rates(cfg, z, source)
        return generic.concat(du, dv)

    return NonlinearProblem(
        n=2 * cfg.K * cfg.K,
        residual=residual,
        initial_guess=brusselator_initial_state(cfg),
        pattern=None,
    )


@dataclass(frozen=True)
class OdeProblem:
    n: int
    rhs: Callable  # rhs(t, state) in any generic mode
    t0: float
    t_end: float
    y0: np.ndarray


def brusselator_rhs(cfg: BrusselatorConfig, t0=0.0, t_end=11.5) -> OdeProblem:
    x, y = _grid(cfg)

    def rhs(t, z):
        source = brusselator_source(x, y, t)
        du, dv = _brusselator_rates(cfg, z, source)
        return generic.concat(du, dv)

    return OdeProblem(
        n=2 * cfg.K * cfg.K,
        rhs=rhs,
        t0=t0,
        t_end=t_end,
        y0=brusselator_initial_state(cfg),
    )
