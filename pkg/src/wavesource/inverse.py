"""Regularised solution of the Gram system and its quality measures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from .model import PhysicalConfig, Signal
from .numerics import (
    NotPositiveDefiniteError,
    cholesky_solve,
    condition_number,
    trapezoid_integrate,
)
from .spectral import Basis, GramSystem, Kernels, assemble, projection_grid, synthesize


class SolverError(RuntimeError):
    """The regularised normal equations could not be solved."""


@dataclass(frozen=True)
class Reconstruction:
    coeffs: NDArray[np.float64]
    alpha: float
    N: int
    discrepancy: float
    cond: float
    rel_error: float | None = None

    def profile(self, l: float, x) -> NDArray[np.float64]:
        return synthesize(Basis(l, self.N), self.coeffs, x)


def discrepancy(kernels: Kernels, coeffs, g: Signal) -> float:
    """L2 norm of the data residual ``sum_k F_k G_k - g``."""
    r = np.asarray(coeffs, dtype=float) @ kernels.values - g.values
    return math.sqrt(trapezoid_integrate(r * r, g.grid.step))


def solve(sys: GramSystem) -> Reconstruction:
    shifted = sys.matrix + sys.alpha * np.eye(sys.N)
    try:
        coeffs = cholesky_solve(shifted, sys.rhs)
    except NotPositiveDefiniteError as exc:
        raise SolverError(f"N={sys.N}, alpha={sys.alpha}: {exc}") from exc
    return Reconstruction(
        coeffs=coeffs,
        alpha=sys.alpha,
        N=sys.N,
        discrepancy=discrepancy(sys.kernels, coeffs, sys.data),
        cond=condition_number(sys.matrix, sys.alpha),
    )


def profile_rel_error(truth, cfg: PhysicalConfig, x, values) -> float:
    """``||F - F_rec|| / ||F||`` in L2(0, l) for a reconstruction sampled at ``x``.

    The reconstruction is linearly interpolated onto the 2001-node projection grid.
    """
    grid = projection_grid(cfg.l)
    f = truth.evaluate(grid.nodes, cfg.l)
    ref = math.sqrt(trapezoid_integrate(f * f, grid.step))
    if ref == 0:
        raise ValueError("relative error undefined for a zero source")
    d = f - np.interp(grid.nodes, x, values)
    return math.sqrt(trapezoid_integrate(d * d, grid.step)) / ref


def rel_error(truth, rec: Reconstruction, basis: Basis, cfg: PhysicalConfig) -> float:
    """Relative L2(0, l) error of the partial sum against the true source."""
    grid = projection_grid(cfg.l)
    return profile_rel_error(truth, cfg, grid.nodes, synthesize(basis, rec.coeffs, grid.nodes))


def discrepancy_curve(kernels: Kernels, g: Signal, scan: Sequence[int], alpha: float = 0.0):
    """Discrepancy for each cut-off in ``scan`` from one Gram assembly."""
    full = assemble(kernels.truncated(max(scan)), g, alpha)
    etas = []
    for n in scan:
        sub = full.truncated(n)
        try:
            coeffs = cholesky_solve(sub.matrix + alpha * np.eye(n), sub.rhs)
        except NotPositiveDefiniteError as exc:
            raise SolverError(f"N={n}, alpha={alpha}: {exc}") from exc
        etas.append(discrepancy(sub.kernels, coeffs, g))
    return etas


def select_cutoff(kernels: Kernels, g: Signal, gamma1: float, scan: Sequence[int]) -> int:
    """Discrepancy principle for the cut-off ``N``.

    Returns the largest ``N`` in ``scan`` whose unregularised residual is
    still at least the absolute noise level ``gamma1``; fitting further
    modes would only fit noise.  Without noise this is ``max(scan)``; if
    every residual is already below ``gamma1`` the smallest ``N`` is used.
    """
    scan = list(scan)
    if not scan:
        raise ValueError("empty cut-off scan")
    if scan != sorted(set(scan)):
        raise ValueError("cut-off scan must be strictly ascending")
    if gamma1 < 0:
        raise ValueError(f"noise level must be non-negative, got {gamma1}")
    if len(scan) == 1:
        return scan[0]
    if gamma1 == 0:
        return scan[-1]
    etas = discrepancy_curve(kernels, g, scan)
    admissible = [n for n, eta in zip(scan, etas) if eta >= gamma1]
    return max(admissible) if admissible else scan[0]


def error_bound(sys: GramSystem, gamma1: float) -> float:
    """A-priori bound ``C(A, alpha) sqrt(N) C1 gamma1`` on the coefficient perturbation.

    ``C1`` is the largest kernel norm ``max_j ||G_j||``.
    """
    if gamma1 < 0:
        raise ValueError(f"noise level must be non-negative, got {gamma1}")
    if gamma1 == 0:
        return 0.0
    c1 = math.sqrt(float(np.max(np.diag(sys.matrix))))
    return condition_number(sys.matrix, sys.alpha) * math.sqrt(sys.N) * c1 * gamma1
