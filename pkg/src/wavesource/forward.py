"""Synthetic boundary data ``g(t) = u(0, t; F)`` from the representation formula.

The depth step is tied to the time step, ``dxi = c dt / 2``, so the moving
upper limit ``c t_m / 2`` is always the node ``xi_m`` and the retarded time
``t_m - 2 xi_j / c`` is exactly ``(m - j) dt``.  All integrals become
discrete convolutions with trapezoid end corrections.
"""

from __future__ import annotations

import numpy as np

from .model import PhysicalConfig, Signal, effective_source
from .numerics import cumulative_trapezoid


def moving_limit_integral(f: np.ndarray, h: np.ndarray, step: float) -> np.ndarray:
    """``I_m = int_0^{x_m} f(xi) h(x_m - xi) dxi`` for every node ``m`` (trapezoid).

    ``f`` and ``h`` are sampled on the same uniform grid starting at 0.
    """
    n = len(f)
    full = np.convolve(f, h)[:n]
    return step * (full - 0.5 * f[0] * h - 0.5 * f * h[0])


def _source_samples(cfg: PhysicalConfig, s, oversample: int) -> np.ndarray:
    xi = cfg.depth_grid(oversample).nodes
    return np.asarray(s.evaluate(np.minimum(xi, cfg.l), cfg.l), dtype=float)


def _trace_integral(cfg, p, s, oversample: int, h_order: int) -> np.ndarray:
    """``c0/(c(c+c0)) int_0^{ct/2} F(xi) H^(h_order)(t - 2 xi/c) dxi`` on the fine grid."""
    if oversample < 1:
        raise ValueError(f"oversample must be >= 1, got {oversample}")
    tg = cfg.time_grid(oversample)
    f = _source_samples(cfg, s, oversample)
    h = effective_source(cfg, p, tg.nodes, h_order)
    dxi = cfg.depth_grid(oversample).step
    return cfg.c0 / (cfg.c * (cfg.c + cfg.c0)) * moving_limit_integral(f, h, dxi)


def derivative_trace(cfg: PhysicalConfig, p, s, oversample: int = 1) -> Signal:
    """Sampled ``g'(t)``, the time derivative of the boundary trace."""
    gp = _trace_integral(cfg, p, s, oversample, 0)
    return Signal(cfg.time_grid(), gp[::oversample].copy())


def boundary_trace(cfg: PhysicalConfig, p, s, oversample: int = 1) -> Signal:
    """Sampled ``g(t) = u(0, t; F)``.

    The inner depth integral gives ``g'`` on a grid refined by
    ``oversample``; a running trapezoid in time then integrates it from
    ``g(0) = 0``.  Use ``oversample >= 2`` when the data feed the inverse
    solver, so that the data and the kernels do not share a discretisation.
    """
    gp = _trace_integral(cfg, p, s, oversample, 0)
    g = cumulative_trapezoid(gp, cfg.dt / oversample)
    return Signal(cfg.time_grid(), g[::oversample].copy())


def second_derivative_trace(cfg: PhysicalConfig, p, s, oversample: int = 1) -> Signal:
    """Sampled ``g''(t)`` from the closed-form ``H'``.

    ``g'' = c0/(c(c+c0)) [F(ct/2) H(0) c/2 + int_0^{ct/2} F(xi) H'(t - 2 xi/c) dxi]``.
    """
    integral = _trace_integral(cfg, p, s, oversample, 1)
    f = _source_samples(cfg, s, oversample)
    h0 = effective_source(cfg, p, 0.0)
    local = cfg.c0 / (cfg.c * (cfg.c + cfg.c0)) * f * h0 * cfg.c / 2
    return Signal(cfg.time_grid(), (local + integral)[::oversample].copy())
