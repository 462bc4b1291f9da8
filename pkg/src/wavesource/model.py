"""Physical setup: medium constants, probing pulse and spacewise sources.

Units are nanoseconds and metres throughout, so a wave speed of
0.15 m/ns is 1.5e8 m/s and a pulse frequency ``omega`` is in rad/ns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .numerics import UniformGrid, trapezoid_integrate

# Gaussian tails below this are set to exactly zero (finite support).
GAUSSIAN_CUTOFF = 1e-12


@dataclass(frozen=True)
class PhysicalConfig:
    """Medium and acquisition parameters.

    Attributes
    ----------
    c : float
        Wave speed in the probed medium (m/ns).
    c0 : float
        Wave speed on the air side (m/ns).
    T : float
        Record length (ns).
    kappa : float
        Amplitude of the effective source ``H = kappa * Phi''``.
    M : int
        Number of time intervals on ``[0, T]``.
    """

    c: float = 0.15
    c0: float = 0.3
    T: float = 12.0
    kappa: float = 1.0
    M: int = 1200

    def __post_init__(self):
        for name in ("c", "c0", "T"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.kappa == 0:
            raise ValueError("kappa must be non-zero")
        if int(self.M) != self.M or self.M < 2:
            raise ValueError(f"M must be an integer >= 2, got {self.M}")

    @property
    def l(self) -> float:
        """Deepest point reached by a reflection that returns within ``T``."""
        return self.c * self.T / 2

    @property
    def dt(self) -> float:
        return self.T / self.M

    @property
    def prefactor(self) -> float:
        """``kappa * c0 / (c (c + c0))``, the boundary-trace constant."""
        return self.kappa * self.c0 / (self.c * (self.c + self.c0))

    def time_grid(self, oversample: int = 1) -> UniformGrid:
        return UniformGrid.over(0.0, self.T, self.M * oversample)

    def depth_grid(self, oversample: int = 1) -> UniformGrid:
        # depth step c*dt/2: node j is reached and returned from at t = j*dt
        return UniformGrid.over(0.0, self.l, self.M * oversample)


@dataclass(frozen=True)
class Pulse:
    """Damped sinusoid ``sin(omega t + beta) exp(-nu t) - phi0`` for ``t >= 0``.

    Build with :func:`pulse_make` so that ``Phi(0) = Phi'(0) = 0``.
    """

    omega: float
    nu: float
    beta: float
    phi0: float

    def evaluate(self, t: ArrayLike, order: int = 0) -> NDArray[np.float64] | float:
        """``Phi`` or one of its first three derivatives; zero for ``t < 0``.

        With ``s = -nu + i omega = r exp(i (pi - beta))`` the n-th derivative
        of the damped sine is ``r**n exp(-nu t) sin(omega t + beta + n (pi - beta))``.
        """
        if order not in (0, 1, 2, 3):
            raise ValueError(f"derivative order must be 0..3, got {order}")
        t = np.asarray(t, dtype=float)
        tt = np.maximum(t, 0.0)
        r = math.hypot(self.omega, self.nu)
        phase = self.omega * tt + self.beta + order * (math.pi - self.beta)
        v = r**order * np.exp(-self.nu * tt) * np.sin(phase)
        if order == 0:
            v = v - self.phi0
        v = np.where(t < 0, 0.0, v)
        return float(v) if v.ndim == 0 else v


@dataclass(frozen=True)
class QuadraticPulse:
    """``Phi(t) = curvature * t**2 / 2``: constant ``Phi''`` and vanishing ``Phi'''``.

    Degenerate test waveform for which the Volterra kernel is identically zero.
    """

    curvature: float = 1.0

    def evaluate(self, t: ArrayLike, order: int = 0):
        if order not in (0, 1, 2, 3):
            raise ValueError(f"derivative order must be 0..3, got {order}")
        t = np.asarray(t, dtype=float)
        tt = np.maximum(t, 0.0)
        a = self.curvature
        v = (0.5 * a * tt**2, a * tt, np.full_like(tt, a), np.zeros_like(tt))[order]
        v = np.where(t < 0, 0.0, v)
        return float(v) if v.ndim == 0 else v


def pulse_make(omega: float, nu: float) -> Pulse:
    """Pulse with phase and offset chosen so that ``Phi(0) = Phi'(0) = 0``."""
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if nu < 0:
        raise ValueError(f"nu must be non-negative, got {nu}")
    beta = math.atan2(omega, nu)
    return Pulse(float(omega), float(nu), beta, math.sin(beta))


def pulse_eval(p, t, derivative: int = 0):
    return p.evaluate(t, derivative)


def effective_source(cfg: PhysicalConfig, p, t, derivative: int = 0):
    """``H(t) = kappa * Phi''(t)`` (or ``H'`` with ``derivative=1``), zero for ``t < 0``."""
    return cfg.kappa * p.evaluate(t, 2 + derivative)


def background_field(cfg: PhysicalConfig, p, z, t):
    """Incident field of the unperturbed half-space, ``-kappa/c**2 * Phi(t -+ z/c)``."""
    z = np.asarray(z, dtype=float)
    t = np.asarray(t, dtype=float)
    amp = -cfg.kappa / cfg.c**2
    delay = np.where(z < 0, -z / cfg.c0, z / cfg.c)
    v = amp * p.evaluate(t - delay, 0)
    return float(v) if np.ndim(v) == 0 else v


# --- sources -----------------------------------------------------------------


def _check_depth(x: NDArray[np.float64], l: float) -> None:
    tol = 1e-12 * l
    if np.any(x < -tol) or np.any(x > l + tol):
        raise ValueError(f"depth outside [0, {l}]")


@dataclass(frozen=True)
class GaussianMix:
    """Sum of ``a * exp(-((x - m l) / (w l))**2)`` over ``(a, m, w)`` triples."""

    terms: tuple[tuple[float, float, float], ...]
    variant = "gaussian-mix"

    def evaluate(self, x, l):
        x = np.asarray(x, dtype=float)
        v = np.zeros_like(x)
        for amp, center, width in self.terms:
            v = v + amp * np.exp(-(((x - center * l) / (width * l)) ** 2))
        return np.where(np.abs(v) < GAUSSIAN_CUTOFF, 0.0, v)


@dataclass(frozen=True)
class Hat:
    """Linear finite element ``max(0, 1 - |u|)`` with ``u = 4 (x - l/2) / l``."""

    amplitude: float = 1.0
    variant = "hat"

    def evaluate(self, x, l):
        u = 4.0 * (np.asarray(x, dtype=float) - 0.5 * l) / l
        return self.amplitude * np.maximum(0.0, 1.0 - np.abs(u))


@dataclass(frozen=True)
class Box:
    """Piecewise constant ``amplitude`` on ``[lo l, hi l]``."""

    amplitude: float = 1.0
    lo: float = 0.35
    hi: float = 0.65
    variant = "box"

    def __post_init__(self):
        if not 0 < self.lo < self.hi < 1:
            raise ValueError("box support must satisfy 0 < lo < hi < 1 (fractions of l)")

    def evaluate(self, x, l):
        x = np.asarray(x, dtype=float)
        return np.where((x >= self.lo * l) & (x <= self.hi * l), self.amplitude, 0.0)


@dataclass(frozen=True)
class Fourier:
    """Finite sine series ``sum F_k sqrt(2/l) sin(k pi x / l)``."""

    coeffs: tuple[float, ...]
    variant = "fourier"

    def evaluate(self, x, l):
        x = np.asarray(x, dtype=float)
        k = np.arange(1, len(self.coeffs) + 1)
        modes = math.sqrt(2.0 / l) * np.sin(np.multiply.outer(x, k) * math.pi / l)
        return modes @ np.asarray(self.coeffs, dtype=float)


SourceSpec = GaussianMix | Hat | Box | Fourier


def two_gaussians() -> GaussianMix:
    """Smooth two-bump test source used for the parameter study."""
    return GaussianMix(((1.0, 0.3, 0.15), (1.0, 0.7, 0.1)))


def three_gaussians() -> GaussianMix:
    """Narrow three-bump source with a small negative lobe."""
    return GaussianMix(((-0.1, 0.3, 0.05), (0.1, 0.5, 0.05), (1.0, 0.7, 0.05)))


CATALOG = {
    "F1": two_gaussians,
    "F2": three_gaussians,
    "F3": Hat,
    "F4": Box,
}


def source_from_dict(d: dict) -> SourceSpec:
    """Build a source from ``{"variant": ..., "params": {...}}`` or a catalog name."""
    variant = d.get("variant")
    params = dict(d.get("params", {}))
    if variant in CATALOG:
        if params:
            raise ValueError(f"catalog source {variant} takes no params")
        return CATALOG[variant]()
    if variant == "gaussian-mix":
        return GaussianMix(tuple(tuple(float(v) for v in term) for term in params.pop("terms")))
    if variant == "hat":
        return Hat(**params)
    if variant == "box":
        return Box(**params)
    if variant == "fourier":
        return Fourier(tuple(float(v) for v in params.pop("coeffs")))
    raise ValueError(f"unknown source variant {variant!r}")


def source_eval(s: SourceSpec, cfg: PhysicalConfig, x):
    """Pointwise ``F(x)`` on ``[0, l]``."""
    xa = np.asarray(x, dtype=float)
    _check_depth(xa, cfg.l)
    v = s.evaluate(xa, cfg.l)
    return float(v) if np.ndim(v) == 0 else v


@dataclass(frozen=True)
class Signal:
    """Samples of a function on a uniform grid."""

    grid: UniformGrid
    values: NDArray[np.float64] = field(repr=False)

    def __post_init__(self):
        if len(self.values) != self.grid.count:
            raise ValueError(f"{len(self.values)} values for a {self.grid.count}-node grid")

    @property
    def nodes(self):
        return self.grid.nodes

    def norm(self) -> float:
        """L2 norm over the grid span, by the trapezoid rule."""
        return math.sqrt(trapezoid_integrate(self.values**2, self.grid.step))

    def at(self, t):
        """Piecewise-linear interpolant of the samples."""
        return np.interp(t, self.grid.nodes, self.values)

    def __add__(self, other: "Signal") -> "Signal":
        if other.grid != self.grid:
            raise ValueError("signals live on different grids")
        return Signal(self.grid, self.values + other.values)

    def scaled(self, factor: float) -> "Signal":
        return Signal(self.grid, factor * self.values)


def signal_inner(a: Signal, b: Signal) -> float:
    if a.grid != b.grid:
        raise ValueError("signals live on different grids")
    return float(trapezoid_integrate(a.values * b.values, a.grid.step))


def l2_distance(a: Sequence[float], b: Sequence[float], step: float) -> float:
    d = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    return math.sqrt(trapezoid_integrate(d * d, step))
