import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from wavesource import (
    Basis,
    Fourier,
    GaussianMix,
    assemble,
    basis_eval,
    boundary_trace,
    kernel_functions,
    project,
    pulse_make,
    solve,
    synthesize,
    two_gaussians,
)
from wavesource.experiments import CUTOFFS, cached_kernels
from wavesource.numerics import condition_number, trapezoid_integrate
from wavesource.spectral import gram_matrix, projection_grid


def test_basis_midpoint(cfg):
    assert basis_eval(Basis(cfg.l, 3), 1, cfg.l / 2) == pytest.approx(math.sqrt(2 / 0.9), abs=1e-9)
    assert math.sqrt(2 / 0.9) == pytest.approx(1.49071, abs=1e-5)


@pytest.mark.parametrize("k", range(1, 21))
def test_basis_vanishes_at_ends(cfg, k):
    b = Basis(cfg.l, 20)
    assert abs(basis_eval(b, k, 0.0)) <= 1e-12
    assert abs(basis_eval(b, k, cfg.l)) <= 1e-12


def test_basis_index_range(cfg):
    b = Basis(cfg.l, 4)
    for k in (0, 5):
        with pytest.raises(ValueError):
            basis_eval(b, k, 0.1)


def test_eigenvalues_increasing(cfg):
    lam = Basis(cfg.l, 20).eigenvalues
    assert np.all(np.diff(lam) > 0)
    assert lam[0] == pytest.approx(math.pi / cfg.l)


@pytest.mark.parametrize("n", [8, 20])
def test_orthonormality(cfg, n):
    grid = projection_grid(cfg.l)
    X = Basis(cfg.l, n).modes(grid.nodes)
    gram = trapezoid_integrate(X[:, None, :] * X[None, :, :], grid.step)
    assert np.max(np.abs(gram - np.eye(n))) < 1e-8


def test_project_basis_element(cfg):
    e3 = Fourier((0.0, 0.0, 1.0))
    assert np.allclose(project(Basis(cfg.l, 6), e3, cfg), [0, 0, 1, 0, 0, 0], atol=1e-8)


def test_project_zero(cfg):
    assert np.all(project(Basis(cfg.l, 5), GaussianMix(()), cfg) == 0.0)


def test_projection_truncation_f1(cfg):
    b = Basis(cfg.l, 20)
    F = two_gaussians()
    grid = projection_grid(cfg.l)
    f = F.evaluate(grid.nodes, cfg.l)
    d = f - synthesize(b, project(b, F, cfg), grid.nodes)
    err = math.sqrt(trapezoid_integrate(d * d, grid.step) / trapezoid_integrate(f * f, grid.step))
    assert err < 0.01


def test_synthesize_examples(cfg):
    b = Basis(cfg.l, 4)
    assert np.all(synthesize(b, np.zeros(4), np.linspace(0, cfg.l, 7)) == 0.0)
    assert synthesize(b, [1, 0, 0, 0], cfg.l / 2) == pytest.approx(1.49071, abs=1e-5)
    with pytest.raises(ValueError):
        synthesize(b, [1, 0], 0.1)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=12, max_size=12))
def test_parseval(coeffs):
    l = 0.9
    grid = projection_grid(l)
    f = synthesize(Basis(l, 12), coeffs, grid.nodes)
    energy = float(np.sum(np.square(coeffs)))
    assert trapezoid_integrate(f * f, grid.step) == pytest.approx(energy, rel=1e-6, abs=1e-12)


def test_kernels_vanish_at_zero(kernels8, kernels1):
    assert np.all(kernels8.values[:, 0] == 0.0)
    assert np.all(kernels1.values[:, 0] == 0.0)


def _g1_integrand(cfg, p, t):
    P = cfg.prefactor
    d0 = p.evaluate(0.0, 1)
    return lambda xi: P * basis_eval(Basis(cfg.l, 1), 1, xi) * (p.evaluate(t - 2 * xi / cfg.c, 1) - d0)


def test_g1_at_T_matches_refined_quadrature(cfg, pulse1, kernels1):
    fine = replace(cfg, M=10 * cfg.M)
    ref = kernel_functions(fine, pulse1, Basis(cfg.l, 1)).values[0, -1]
    assert kernels1.values[0, -1] == pytest.approx(ref, rel=1e-6)


def test_g1_at_T_matches_adaptive_quadrature(cfg, pulse1, kernels1):
    ref, _ = quad(_g1_integrand(cfg, pulse1, cfg.T), 0.0, cfg.l, epsabs=1e-13, epsrel=1e-12, limit=200)
    assert kernels1.values[0, -1] == pytest.approx(ref, rel=1e-6)


@pytest.mark.parametrize("seed", range(3))
def test_kernel_combination_matches_forward_trace(cfg, pulse1, seed):
    fine = replace(cfg, M=2400)
    f = np.random.default_rng(seed).normal(size=6)
    kern = kernel_functions(fine, pulse1, Basis(fine.l, 6))
    g = boundary_trace(fine, pulse1, Fourier(tuple(f)), oversample=2)
    combo = kern.combine(f).values
    assert np.linalg.norm(combo - g.values) / np.linalg.norm(g.values) < 1e-5


def test_assemble_consistency(kernels8):
    f = np.random.default_rng(3).normal(size=kernels8.N)
    sys = assemble(kernels8, kernels8.combine(f))
    assert np.linalg.norm(sys.matrix @ f - sys.rhs) <= 1e-10 * np.linalg.norm(sys.rhs)


def test_assemble_zero_data(kernels8):
    g = kernels8.combine(np.zeros(kernels8.N))
    assert np.all(assemble(kernels8, g).rhs == 0.0)


def test_assemble_symmetric_and_psd(kernels8, kernels1):
    for kern in (kernels8, kernels1):
        A = assemble(kern, kern.signal(1)).matrix
        assert np.array_equal(A, A.T)
        lam = np.linalg.eigvalsh(A)
        assert lam[0] >= -1e-10 * lam[-1]


def test_assemble_rejects_grid_mismatch(cfg, pulse8, kernels8):
    other = boundary_trace(replace(cfg, M=600), pulse8, two_gaussians())
    with pytest.raises(ValueError):
        assemble(kernels8, other)


def test_assemble_rejects_negative_alpha(kernels8):
    with pytest.raises(ValueError):
        assemble(kernels8, kernels8.signal(1), -1e-3)


def test_truncation_is_leading_block(kernels8):
    full = assemble(kernels8, kernels8.signal(2))
    small = assemble(kernels8.truncated(7), kernels8.signal(2))
    sub = full.truncated(7)
    assert np.array_equal(sub.matrix, small.matrix)
    assert np.array_equal(sub.rhs, small.rhs)


@pytest.mark.parametrize("lam", [1e-3, 7.0])
def test_kappa_scale_invariance(cfg, pulse8, lam):
    F = two_gaussians()
    scaled = replace(cfg, kappa=lam)
    base = assemble(kernel_functions(cfg, pulse8, Basis(cfg.l, 11)), boundary_trace(cfg, pulse8, F, 2))
    other = assemble(kernel_functions(scaled, pulse8, Basis(cfg.l, 11)), boundary_trace(scaled, pulse8, F, 2))
    assert np.allclose(other.matrix, lam**2 * base.matrix, rtol=1e-9, atol=0)
    assert np.allclose(other.rhs, lam**2 * base.rhs, rtol=1e-9, atol=1e-300)
    assert np.allclose(solve(other).coeffs, solve(base).coeffs, rtol=1e-9, atol=1e-9)
    assert condition_number(other.matrix) == pytest.approx(condition_number(base.matrix), rel=1e-9)


@pytest.mark.parametrize("omega", [1.0, 8.0])
def test_condition_number_nondecreasing_in_n(cfg, omega):
    A = gram_matrix(cached_kernels(cfg, pulse_make(omega, 0.2), 20))
    conds = [condition_number(A[:n, :n]) for n in CUTOFFS]
    assert all(b >= a for a, b in zip(conds, conds[1:]))
