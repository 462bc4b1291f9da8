"""Direct reconstruction through a Volterra equation of the second kind.

Differentiating the data twice turns the inverse problem into

    ghat(x) = F(x) + 2/(c H(0)) int_0^x F(xi) H'(2 (x - xi)/c) dxi,
    ghat(x) = 2 (c + c0) g''(2x/c) / (c0 H(0)),

which is marched forward in depth with the product trapezoid rule.
"""

from __future__ import annotations

import numpy as np
from scipy.ndimage import gaussian_filter1d

from .model import PhysicalConfig, Signal, effective_source
from .numerics import UniformGrid


class SingularKernelError(ValueError):
    """``H(0) = 0``: the equation is of the first kind and cannot be marched."""


class MarchingBreakdownError(ArithmeticError):
    """The diagonal weight of the marching step vanished."""


def differentiate_twice(g: Signal, smooth_width: float = 0.0) -> Signal:
    """Second derivative by central differences, second-order one-sided at the ends.

    ``smooth_width`` (ns) is the standard deviation of a Gaussian mollifier
    applied to the samples first; 0 disables smoothing.
    """
    if g.grid.count < 5:
        raise ValueError("need at least 5 samples to difference twice")
    if smooth_width < 0:
        raise ValueError(f"smooth_width must be non-negative, got {smooth_width}")
    y = np.asarray(g.values, dtype=float)
    h = g.grid.step
    if smooth_width > 0:
        y = gaussian_filter1d(y, smooth_width / h, mode="nearest")
    d2 = np.empty_like(y)
    d2[1:-1] = (y[2:] - 2 * y[1:-1] + y[:-2]) / h**2
    d2[0] = (2 * y[0] - 5 * y[1] + 4 * y[2] - y[3]) / h**2
    d2[-1] = (2 * y[-1] - 5 * y[-2] + 4 * y[-3] - y[-4]) / h**2
    return Signal(g.grid, d2)


def volterra_solve(cfg: PhysicalConfig, p, g2: Signal) -> Signal:
    """Recover ``F`` on ``[0, l]`` from samples of ``g''`` on ``[0, T]``.

    The depth grid has as many nodes as ``g2``; ``g''(2x/c)`` is linearly
    interpolated (exact node hits when ``g2`` spans ``[0, T]``).
    """
    h0 = float(effective_source(cfg, p, 0.0))
    if h0 == 0.0:
        raise SingularKernelError("H(0) = 0: the source cannot be marched in depth")
    xg = UniformGrid.over(0.0, cfg.l, g2.grid.count - 1)
    x = xg.nodes
    dx = xg.step
    ghat = 2 * (cfg.c + cfg.c0) * g2.at(2 * x / cfg.c) / (cfg.c0 * h0)
    kern = 2.0 / (cfg.c * h0) * effective_source(cfg, p, 2 * x / cfg.c, 1)

    diag = 1.0 + 0.5 * dx * kern[0]
    if abs(diag) < 1e-8:
        raise MarchingBreakdownError(f"diagonal weight {diag:.3e} is too close to zero")
    F = np.zeros_like(ghat)
    F[0] = ghat[0]
    for m in range(1, len(x)):
        # trapezoid over xi_0..xi_m; the xi_m term is moved to the left side
        hist = 0.5 * kern[m] * F[0] + kern[m - 1 : 0 : -1] @ F[1:m]
        F[m] = (ghat[m] - dx * hist) / diag
    return Signal(xg, F)
