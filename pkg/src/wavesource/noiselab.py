"""Random perturbation of boundary data at a prescribed relative level."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Signal
from .numerics import RngState, normal_samples, trapezoid_integrate

# Noise cells on [0, T]; 200 cells of 0.06 ns at the default record length.
DEFAULT_NOISE_NODES = 200


@dataclass(frozen=True)
class NoiseSpec:
    """Relative level ``gamma``, generator seed, and number of noise cells ``nodes``."""

    gamma: float
    seed: int = 1
    nodes: int = DEFAULT_NOISE_NODES

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")
        if self.nodes < 1:
            raise ValueError(f"noise needs at least one cell, got {self.nodes}")


def hat_noise(xi: np.ndarray, T: float, t) -> np.ndarray:
    """``n(t) = sum_j xi_j eta((t - j tau)/tau)`` with ``tau = T / (len(xi) - 1)``.

    A sum of unit hat functions is the piecewise-linear interpolant of the
    nodal values, which is what is evaluated here.
    """
    nodes = np.linspace(0.0, T, len(xi))
    return np.interp(t, nodes, xi)


def perturb(g: Signal, spec: NoiseSpec) -> tuple[Signal, float]:
    """Return ``(g + delta_g, ||delta_g||)`` with ``||delta_g|| = gamma ||g||`` exactly."""
    if spec.gamma == 0:
        return g, 0.0
    gnorm = g.norm()
    if gnorm == 0:
        raise ValueError("cannot scale relative noise to zero data")
    state = RngState(spec.seed)
    T = g.grid.stop - g.grid.start
    while True:
        xi = normal_samples(state, spec.nodes + 1)
        n = hat_noise(xi, T, g.grid.nodes - g.grid.start)
        nnorm = math.sqrt(trapezoid_integrate(n * n, g.grid.step))
        if nnorm > 0:
            break
    gamma1 = spec.gamma * gnorm
    return Signal(g.grid, g.values + gamma1 * n / nnorm), gamma1
