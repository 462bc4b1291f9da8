import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavesource.numerics import (
    NotPositiveDefiniteError,
    RngState,
    SingularMatrixError,
    UniformGrid,
    cholesky_factor,
    cholesky_solve,
    condition_number,
    normal_samples,
    sym_eigvals,
    trapezoid_integrate,
)


def random_spd(rng, n, cond=100.0):
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    lam = np.geomspace(1.0, cond, n)
    return (q * lam) @ q.T


def test_grid_nodes():
    g = UniformGrid.over(0.0, 12.0, 1200)
    assert g.count == 1201
    assert g.nodes[-1] == pytest.approx(12.0, abs=1e-12)
    with pytest.raises(ValueError):
        UniformGrid(0.0, 0.1, 1)
    with pytest.raises(ValueError):
        UniformGrid(0.0, -0.1, 5)


def test_trapezoid_linear_exact():
    x = np.linspace(0, 1, 101)
    assert trapezoid_integrate(x, x[1]) == pytest.approx(0.5, abs=1e-15)


def test_trapezoid_sine():
    x = np.linspace(0, math.pi, 1001)
    assert abs(trapezoid_integrate(np.sin(x), x[1]) - 2.0) < 1e-5


def test_trapezoid_second_order():
    errs = []
    for n in (50, 100):
        x = np.linspace(0, 1, n + 1)
        errs.append(abs(trapezoid_integrate(x**3, x[1]) - 0.25))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.01)


def test_trapezoid_needs_two_samples():
    with pytest.raises(ValueError):
        trapezoid_integrate([1.0], 0.1)


@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=50),
       st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=50))
def test_trapezoid_linearity(a, b):
    n = min(len(a), len(b))
    f, g = np.array(a[:n]), np.array(b[:n])
    lhs = trapezoid_integrate(f + g, 0.1)
    rhs = trapezoid_integrate(f, 0.1) + trapezoid_integrate(g, 0.1)
    assert lhs == pytest.approx(rhs, abs=1e-9 * (1 + np.abs(f).sum() + np.abs(g).sum()))


def test_cholesky_identity():
    np.testing.assert_allclose(cholesky_solve(np.eye(3), [1, 2, 3]), [1, 2, 3])


def test_cholesky_two_by_two():
    np.testing.assert_allclose(cholesky_solve([[4, 2], [2, 3]], [2, 1]), [0.5, 0.0], atol=1e-15)


def test_cholesky_indefinite():
    with pytest.raises(NotPositiveDefiniteError):
        cholesky_solve([[1, 2], [2, 1]], [1, 1])


def test_cholesky_reads_lower_triangle_only():
    a = np.array([[4.0, 999.0], [2.0, 3.0]])
    np.testing.assert_allclose(cholesky_solve(a, [2, 1]), [0.5, 0.0], atol=1e-15)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 20), st.floats(1.0, 1e6), st.integers(0, 2**32 - 1))
def test_cholesky_residual(n, cond, seed):
    rng = np.random.default_rng(seed)
    a = random_spd(rng, n, cond)
    b = rng.standard_normal(n)
    x = cholesky_solve(a, b)
    assert np.linalg.norm(a @ x - b) <= 1e-10 * np.linalg.norm(b) * max(1.0, cond / 1e3)


def test_eigvals_diagonal():
    np.testing.assert_allclose(sym_eigvals(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])


def test_eigvals_two_by_two():
    np.testing.assert_allclose(sym_eigvals([[2, 1], [1, 2]]), [1, 3], atol=1e-14)


def test_eigvals_product_is_cholesky_determinant():
    rng = np.random.default_rng(5)
    a = random_spd(rng, 5, 50.0)
    det = np.prod(np.diag(cholesky_factor(a))) ** 2
    assert np.prod(sym_eigvals(a)) == pytest.approx(det, rel=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**32 - 1))
def test_eigvals_match_lapack_and_permutation(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((n, n))
    a = m + m.T
    lam = sym_eigvals(a)
    np.testing.assert_allclose(lam, np.linalg.eigvalsh(a), atol=1e-10 * np.linalg.norm(a))
    perm = rng.permutation(n)
    np.testing.assert_allclose(sym_eigvals(a[np.ix_(perm, perm)]), lam, atol=1e-10 * np.linalg.norm(a))


def test_condition_number_examples():
    assert condition_number(np.eye(4), 0.0) == pytest.approx(1.0)
    assert condition_number(np.diag([4.0, 1.0]), 1.0) == pytest.approx(2.5)
    with pytest.raises(SingularMatrixError):
        condition_number(np.diag([1.0, 0.0]), 0.0)
    with pytest.raises(ValueError):
        condition_number(np.eye(2), -1.0)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2**32 - 1))
def test_condition_number_nonincreasing_in_alpha(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((n, n))
    a = m @ m.T + 1e-3 * np.eye(n)
    conds = [condition_number(a, alpha) for alpha in (0.0, 1e-5, 1e-3, 1e-1, 1.0, 10.0)]
    assert all(c2 <= c1 * (1 + 1e-12) for c1, c2 in zip(conds, conds[1:]))


def test_normal_samples_deterministic():
    a = normal_samples(RngState(42), 64)
    b = normal_samples(RngState(42), 64)
    np.testing.assert_array_equal(a, b)


def test_normal_samples_distinct_seeds():
    a = normal_samples(RngState(1), 10)
    b = normal_samples(RngState(2), 10)
    assert not np.any(a == b)


def test_normal_samples_moments():
    x = normal_samples(RngState(2016), 100_000)
    assert abs(x.mean()) < 0.02
    assert abs(x.std() - 1.0) < 0.02


def test_normal_samples_state_advances():
    st_ = RngState(7)
    a = normal_samples(st_, 3)
    b = normal_samples(st_, 3)
    assert st_.counter == 8
    assert not np.array_equal(a, b)


def _reference_stream(seed, n):
    # independent uint64 re-derivation: splitmix64 seeding, xorshift64* output
    with np.errstate(over="ignore"):
        x = np.uint64(seed) + np.uint64(0x9E3779B97F4A7C15)
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        x = x ^ (x >> np.uint64(31))
        out = []
        for _ in range(n):
            x ^= x >> np.uint64(12)
            x ^= x << np.uint64(25)
            x ^= x >> np.uint64(27)
            out.append(int(x * np.uint64(0x2545F4914F6CDD1D)))
    return out


@pytest.mark.parametrize("seed", [0, 1, 12345, 2**64 - 1])
def test_rng_matches_reference_stream(seed):
    s = RngState(seed)
    assert [s.next_u64() for _ in range(100)] == _reference_stream(seed, 100)


def test_box_muller_first_pair():
    u = _reference_stream(3, 2)
    u1, u2 = [((v >> 11) + 0.5) * 2.0**-53 for v in u]
    r = math.sqrt(-2 * math.log(u1))
    expected = [r * math.cos(2 * math.pi * u2), r * math.sin(2 * math.pi * u2)]
    np.testing.assert_allclose(normal_samples(RngState(3), 2), expected, rtol=1e-15)


def test_rng_rejects_bad_seed():
    with pytest.raises(ValueError):
        RngState(-1)
    with pytest.raises(ValueError):
        normal_samples(RngState(1), 0)
