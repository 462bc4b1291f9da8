"""Sine-basis discretisation of the source and the Gram system it induces.

A source ``F = sum_k F_k X_k`` with ``X_k = sqrt(2/l) sin(k pi x / l)``
produces the boundary trace ``sum_k F_k G_k(t)``, where

    G_k(t) = P int_0^{ct/2} X_k(xi) (Phi'(t - 2 xi/c) - Phi'(0)) dxi

and ``P = kappa c0 / (c (c + c0))``.  The kernels depend only on the
medium and the pulse, so they are computed once and reused for any data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .model import PhysicalConfig, Signal
from .numerics import UniformGrid, trapezoid_integrate

PROJECTION_NODES = 2001


@dataclass(frozen=True)
class Basis:
    """First ``N`` Dirichlet eigenfunctions of ``-d^2/dx^2`` on ``(0, l)``."""

    l: float
    N: int

    def __post_init__(self):
        if not self.l > 0:
            raise ValueError(f"l must be positive, got {self.l}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")

    @property
    def eigenvalues(self) -> NDArray[np.float64]:
        return np.arange(1, self.N + 1) * math.pi / self.l

    def modes(self, x) -> NDArray[np.float64]:
        """``(N, len(x))`` array of all basis functions at ``x``."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return math.sqrt(2.0 / self.l) * np.sin(np.multiply.outer(self.eigenvalues, x))


def basis_eval(b: Basis, k: int, x):
    if not 1 <= k <= b.N:
        raise ValueError(f"mode index {k} outside 1..{b.N}")
    v = math.sqrt(2.0 / b.l) * np.sin(k * math.pi * np.asarray(x, dtype=float) / b.l)
    return float(v) if np.ndim(v) == 0 else v


def projection_grid(l: float) -> UniformGrid:
    return UniformGrid.over(0.0, l, PROJECTION_NODES - 1)


def project(b: Basis, s, cfg: PhysicalConfig) -> NDArray[np.float64]:
    """Fourier sine coefficients ``F_k = int_0^l F X_k dx``."""
    grid = projection_grid(b.l)
    f = s.evaluate(grid.nodes, cfg.l)
    return trapezoid_integrate(b.modes(grid.nodes) * f, grid.step)


def synthesize(b: Basis, coeffs, x):
    """Partial sum ``sum_k F_k X_k(x)``."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (b.N,):
        raise ValueError(f"expected {b.N} coefficients, got shape {coeffs.shape}")
    v = coeffs @ b.modes(x)
    return float(v[0]) if np.ndim(x) == 0 else v


@dataclass(frozen=True)
class Kernels:
    """Boundary responses ``G_1 .. G_N`` of the basis sources on the time grid."""

    grid: UniformGrid
    values: NDArray[np.float64] = field(repr=False)  # shape (N, grid.count)
    prefactor: float

    @property
    def N(self) -> int:
        return self.values.shape[0]

    def truncated(self, n: int) -> "Kernels":
        if not 1 <= n <= self.N:
            raise ValueError(f"cannot truncate {self.N} kernels to {n}")
        return Kernels(self.grid, self.values[:n], self.prefactor)

    def signal(self, k: int) -> Signal:
        return Signal(self.grid, self.values[k - 1])

    def combine(self, coeffs) -> Signal:
        return Signal(self.grid, np.asarray(coeffs, dtype=float) @ self.values)


def kernel_functions(cfg: PhysicalConfig, p, b: Basis) -> Kernels:
    """Sample every ``G_k`` on the ``M + 1`` time nodes."""
    tg = cfg.time_grid()
    xg = cfg.depth_grid()
    modes = b.modes(xg.nodes)
    # Phi'((m - j) dt) - Phi'(0): the retarded argument is an exact multiple of dt
    dphi = p.evaluate(tg.nodes, 1) - p.evaluate(0.0, 1)
    G = np.zeros((b.N, tg.count))
    for m in range(1, tg.count):
        G[:, m] = trapezoid_integrate(modes[:, : m + 1] * dphi[m::-1], xg.step)
    return Kernels(tg, cfg.prefactor * G, cfg.prefactor)


@dataclass(frozen=True)
class GramSystem:
    """Normal equations ``(A + alpha I) F = b`` of the discrete Tikhonov functional."""

    kernels: Kernels
    data: Signal
    matrix: NDArray[np.float64] = field(repr=False)
    rhs: NDArray[np.float64]
    alpha: float

    @property
    def N(self) -> int:
        return self.kernels.N

    def truncated(self, n: int, alpha: float | None = None) -> "GramSystem":
        """Leading ``n x n`` block; the Gram entries do not depend on ``N``."""
        return GramSystem(
            self.kernels.truncated(n),
            self.data,
            self.matrix[:n, :n],
            self.rhs[:n],
            self.alpha if alpha is None else alpha,
        )


def gram_matrix(kernels: Kernels) -> NDArray[np.float64]:
    n = kernels.N
    G = kernels.values
    A = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            A[i, j] = A[j, i] = trapezoid_integrate(G[i] * G[j], kernels.grid.step)
    return A


def assemble(kernels: Kernels, g: Signal, alpha: float = 0.0) -> GramSystem:
    """Gram matrix ``A_ij = (G_i, G_j)`` and data vector ``b_j = (G_j, g)`` on ``[0, T]``."""
    if alpha < 0:
        raise ValueError(f"alpha must be non-negative, got {alpha}")
    if g.grid != kernels.grid:
        raise ValueError("data and kernels are sampled on different time grids")
    rhs = trapezoid_integrate(kernels.values * g.values, g.grid.step)
    return GramSystem(kernels, g, gram_matrix(kernels), np.atleast_1d(rhs), float(alpha))
