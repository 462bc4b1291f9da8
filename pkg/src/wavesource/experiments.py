"""Synthetic experiments: condition numbers, discrepancies and noisy recoveries.

Each runner returns a list of row dicts in a fixed grid order so that the
CSV writers produce byte-identical output for identical inputs.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .config import RunConfig
from .forward import boundary_trace, second_derivative_trace
from .inverse import (
    Reconstruction,
    error_bound,
    profile_rel_error,
    rel_error,
    select_cutoff,
    solve,
)
from .model import PhysicalConfig, Signal, source_eval
from .noiselab import NoiseSpec, perturb
from .numerics import condition_number
from .spectral import Basis, Kernels, assemble, gram_matrix, kernel_functions, projection_grid
from .volterra import differentiate_twice, volterra_solve

OMEGAS = (8.0, 1.0)
CUTOFFS = (5, 8, 11, 14, 17, 20)
ALPHAS = (0.0, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1)
GAMMAS = (0.0, 0.01, 0.03, 0.05, 0.07, 0.10, 0.20)
SELECTION_SCAN = tuple(range(5, 21))
VOLTERRA_REFINE = 8


@lru_cache(maxsize=16)
def cached_kernels(cfg: PhysicalConfig, pulse, n: int) -> Kernels:
    return kernel_functions(cfg, pulse, Basis(cfg.l, n))


def table1(run: RunConfig, omegas=OMEGAS, cutoffs=CUTOFFS, alphas=ALPHAS) -> list[dict]:
    """Condition number of ``A^N + alpha I`` over the (omega, N, alpha) grid."""
    cfg = run.physical()
    rows = []
    for omega in omegas:
        kernels = cached_kernels(cfg, run.pulse(omega), max(cutoffs))
        A = gram_matrix(kernels)
        for n in cutoffs:
            for alpha in alphas:
                rows.append({"omega": omega, "N": n, "alpha": alpha,
                             "cond": condition_number(A[:n, :n], alpha)})
    return rows


def clean_data(run: RunConfig, omega: float, source=None) -> Signal:
    cfg = run.physical()
    s = run.source_spec() if source is None else source
    return boundary_trace(cfg, run.pulse(omega), s, run.oversample)


def table2(run: RunConfig, omegas=OMEGAS, cutoffs=CUTOFFS, alphas=ALPHAS) -> list[dict]:
    """Discrepancy of noise-free reconstructions over the (omega, N, alpha) grid."""
    cfg = run.physical()
    rows = []
    for omega in omegas:
        kernels = cached_kernels(cfg, run.pulse(omega), max(cutoffs))
        g = clean_data(run, omega)
        full = assemble(kernels, g)
        gnorm = g.norm()
        for n in cutoffs:
            for alpha in alphas:
                eta = solve(full.truncated(n, alpha)).discrepancy
                rows.append({"omega": omega, "N": n, "alpha": alpha,
                             "eta": eta, "eta_over_gnorm": eta / gnorm})
    return rows


@dataclass(frozen=True)
class NoisyTrial:
    seed: int
    gamma1: float
    N: int
    rel_error: float
    discrepancy: float
    coeffs: np.ndarray


def noisy_trials(run: RunConfig, omega: float, gamma: float, seeds, n: int | None = None,
                 scan=SELECTION_SCAN) -> list[NoisyTrial]:
    """Reconstruct from independently perturbed copies of the same clean data.

    With ``n=None`` every trial picks its own cut-off by the discrepancy principle.
    """
    cfg = run.physical()
    truth = run.source_spec()
    nmax = max(max(scan), n or 0)
    kernels = cached_kernels(cfg, run.pulse(omega), nmax)
    g = clean_data(run, omega)
    out = []
    for seed in seeds:
        gn, gamma1 = perturb(g, NoiseSpec(gamma, seed, run.noise_nodes))
        full = assemble(kernels, gn)
        cut = n if n is not None else select_cutoff(kernels, gn, gamma1, scan)
        rec = solve(full.truncated(cut, run.alpha))
        out.append(NoisyTrial(seed, gamma1, cut, rel_error(truth, rec, Basis(cfg.l, cut), cfg),
                              rec.discrepancy, rec.coeffs))
    return out


def table3(run: RunConfig, seeds, omegas=OMEGAS, gammas=GAMMAS, scan=SELECTION_SCAN) -> list[dict]:
    """Cut-off selection and recovery statistics per (omega, gamma) over a seed ensemble.

    The reported ``N_selected`` is the (lower) median of the per-seed
    discrepancy-principle choices; the error and discrepancy medians are
    then taken over all seeds at that common cut-off.
    """
    rows = []
    for omega in omegas:
        for gamma in gammas:
            picks = noisy_trials(run, omega, gamma, seeds, None, scan)
            n_sel = int(statistics.median_low([t.N for t in picks]))
            trials = noisy_trials(run, omega, gamma, seeds, n_sel, scan)
            rows.append({
                "omega": omega,
                "gamma": gamma,
                "gamma1": trials[0].gamma1,
                "N_selected": n_sel,
                "eps_F_median": float(np.median([t.rel_error for t in trials])),
                "eta_median": float(np.median([t.discrepancy for t in trials])),
            })
    return rows


@dataclass
class ReconstructionResult:
    t: np.ndarray
    g_clean: np.ndarray
    g_noisy: np.ndarray
    x: np.ndarray
    F_true: np.ndarray
    F_rec: np.ndarray
    rel_error: float
    gamma1: float
    spectral: Reconstruction | None = None


def reconstruct(run: RunConfig) -> ReconstructionResult:
    """Single reconstruction with the configured source, noise and method."""
    cfg = run.physical()
    pulse = run.pulse()
    truth = run.source_spec()
    g = boundary_trace(cfg, pulse, truth, run.oversample)
    gn, gamma1 = perturb(g, NoiseSpec(run.gamma, run.seed, run.noise_nodes))
    x = projection_grid(cfg.l).nodes
    F_true = source_eval(truth, cfg, x)
    spectral = None
    if run.method == "spectral":
        kernels = cached_kernels(cfg, pulse, run.N)
        spectral = solve(assemble(kernels, gn, run.alpha))
        F_rec = spectral.profile(cfg.l, x)
    else:
        F_rec = np.interp(x, *_volterra_profile(run, cfg, pulse, truth, gn))
    return ReconstructionResult(g.nodes, g.values, gn.values, x, F_true, F_rec,
                                profile_rel_error(truth, cfg, x, F_rec), gamma1, spectral)


def _volterra_profile(run, cfg, pulse, truth, gn):
    if run.gamma == 0 and run.smooth_width is None:
        # the marching error is amplified by roughly (omega^2 + nu^2) T, so
        # clean data are regenerated on a finer grid instead of reusing gn
        fine = replace(cfg, M=cfg.M * VOLTERRA_REFINE)
        g2 = second_derivative_trace(fine, pulse, truth, run.oversample)
    else:
        width = 5 * cfg.T / run.noise_nodes if run.smooth_width is None else run.smooth_width
        g2 = differentiate_twice(gn, width)
    sol = volterra_solve(cfg, pulse, g2)
    return sol.nodes, sol.values


def coefficient_perturbation(run: RunConfig, omega: float, gamma: float, seed: int, n: int):
    """``(||F_noisy - F_clean||, a-priori bound)`` for one realisation."""
    cfg = run.physical()
    kernels = cached_kernels(cfg, run.pulse(omega), n)
    g = clean_data(run, omega)
    gn, gamma1 = perturb(g, NoiseSpec(gamma, seed, run.noise_nodes))
    clean = solve(assemble(kernels, g, run.alpha))
    sys = assemble(kernels, gn, run.alpha)
    noisy = solve(sys)
    return float(np.linalg.norm(noisy.coeffs - clean.coeffs)), error_bound(sys, gamma1)

