"""Small numerical kernels shared by the rest of the package.

Everything here is deliberately self-contained: composite trapezoid
quadrature, a Cholesky solver and a cyclic Jacobi eigensolver for the
small (n <= ~30) symmetric systems the reconstruction produces, and an
explicit 64-bit pseudo-random generator so that noisy experiments are
bit-reproducible independently of numpy's generator versions.

Symmetric matrices are passed as square ndarrays; only the lower
triangle is ever read.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

_MASK64 = (1 << 64) - 1


class NotPositiveDefiniteError(ValueError):
    """Raised when a Cholesky pivot is not safely positive."""


class SingularMatrixError(ValueError):
    """Raised when a shifted matrix has a non-positive smallest eigenvalue."""


@dataclass(frozen=True)
class UniformGrid:
    """Equispaced nodes ``start + i * step`` for ``i = 0 .. count - 1``."""

    start: float
    step: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise ValueError(f"grid needs at least 2 nodes, got {self.count}")
        if not self.step > 0:
            raise ValueError(f"grid step must be positive, got {self.step}")

    @classmethod
    def over(cls, start: float, stop: float, intervals: int) -> "UniformGrid":
        return cls(float(start), (stop - start) / intervals, intervals + 1)

    @property
    def stop(self) -> float:
        return self.start + (self.count - 1) * self.step

    @property
    def nodes(self) -> NDArray[np.float64]:
        return self.start + self.step * np.arange(self.count, dtype=float)

    def refined(self, factor: int) -> "UniformGrid":
        return UniformGrid(self.start, self.step / factor, (self.count - 1) * factor + 1)


def trapezoid_integrate(samples: ArrayLike, step: float) -> float | NDArray[np.float64]:
    """Composite trapezoid rule along the last axis.

    Parameters
    ----------
    samples : array_like
        Node values; a 2-D array integrates each row.
    step : float
        Node spacing.
    """
    y = np.asarray(samples, dtype=float)
    if y.shape[-1] < 2:
        raise ValueError("trapezoid rule needs at least 2 samples")
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    return step * (y.sum(axis=-1) - 0.5 * (y[..., 0] + y[..., -1]))


def cumulative_trapezoid(samples: ArrayLike, step: float) -> NDArray[np.float64]:
    """Running trapezoid integral starting from 0 at the first node."""
    y = np.asarray(samples, dtype=float)
    out = np.zeros_like(y)
    np.cumsum(0.5 * step * (y[1:] + y[:-1]), out=out[1:])
    return out


def _as_symmetric(a: ArrayLike) -> NDArray[np.float64]:
    m = np.array(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    low = np.tril(m)
    return low + np.tril(m, -1).T


def cholesky_factor(a: ArrayLike) -> NDArray[np.float64]:
    """Lower-triangular ``L`` with ``L @ L.T == a``.

    Raises
    ------
    NotPositiveDefiniteError
        If a pivot drops below ``1e-14 * max(diag(a))``.
    """
    m = _as_symmetric(a)
    n = m.shape[0]
    tol = 1e-14 * max(float(np.max(np.diag(m))), 0.0)
    L = np.zeros_like(m)
    for j in range(n):
        pivot = m[j, j] - L[j, :j] @ L[j, :j]
        if not pivot > tol:
            raise NotPositiveDefiniteError(
                f"pivot {pivot:.3e} at row {j} is not positive; "
                "the system is singular or indefinite (try alpha > 0)"
            )
        L[j, j] = math.sqrt(pivot)
        L[j + 1 :, j] = (m[j + 1 :, j] - L[j + 1 :, :j] @ L[j, :j]) / L[j, j]
    return L


def cholesky_solve(a: ArrayLike, b: ArrayLike) -> NDArray[np.float64]:
    """Solve ``a x = b`` for symmetric positive definite ``a``."""
    L = cholesky_factor(a)
    rhs = np.asarray(b, dtype=float)
    n = L.shape[0]
    if rhs.shape != (n,):
        raise ValueError(f"rhs has shape {rhs.shape}, expected ({n},)")
    y = np.zeros(n)
    for i in range(n):
        y[i] = (rhs[i] - L[i, :i] @ y[:i]) / L[i, i]
    x = np.zeros(n)
    for i in reversed(range(n)):
        x[i] = (y[i] - L[i + 1 :, i] @ x[i + 1 :]) / L[i, i]
    return x


def sym_eigvals(a: ArrayLike, max_sweeps: int = 100) -> NDArray[np.float64]:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.

    Sweeps continue until the off-diagonal Frobenius norm is below
    ``1e-12 * ||a||_F``.
    """
    m = _as_symmetric(a)
    n = m.shape[0]
    scale = np.linalg.norm(m)
    if n == 1 or scale == 0.0:
        return np.sort(np.diag(m))
    tol = 1e-12 * scale
    for _ in range(max_sweeps):
        off = math.sqrt(max(float(np.sum(m * m) - np.sum(np.diag(m) ** 2)), 0.0))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                if apq == 0.0:
                    continue
                diff = m[q, q] - m[p, p]
                if abs(apq) < 1e-300 * max(abs(diff), 1.0):
                    m[p, q] = m[q, p] = 0.0
                    continue
                theta = diff / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # rotate rows then columns p, q
                rp, rq = m[p, :].copy(), m[q, :].copy()
                m[p, :] = c * rp - s * rq
                m[q, :] = s * rp + c * rq
                cp, cq = m[:, p].copy(), m[:, q].copy()
                m[:, p] = c * cp - s * cq
                m[:, q] = s * cp + c * cq
                m[p, q] = m[q, p] = 0.0
    return np.sort(np.diag(m))


def condition_number(a: ArrayLike, alpha: float = 0.0) -> float:
    """2-norm condition number of ``a + alpha * I`` for PSD ``a``."""
    if alpha < 0:
        raise ValueError(f"alpha must be non-negative, got {alpha}")
    lam = sym_eigvals(a)
    lo, hi = lam[0] + alpha, lam[-1] + alpha
    if not lo > 0:
        raise SingularMatrixError(f"smallest shifted eigenvalue {lo:.3e} is not positive")
    return float(hi / lo)


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class RngState:
    """xorshift64* generator state.

    The 64-bit seed is scrambled with one splitmix64 step so that small or
    zero seeds still give a non-zero, well-mixed starting state.
    """

    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
        self.seed = seed
        self.state = _splitmix64(seed) or 0x9E3779B97F4A7C15
        self.counter = 0

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self.state = x
        self.counter += 1
        return (x * 0x2545F4914F6CDD1D) & _MASK64

    def uniform(self) -> float:
        """Uniform deviate in the open interval (0, 1)."""
        return ((self.next_u64() >> 11) + 0.5) * 2.0**-53

    def __repr__(self):
        return f"RngState(seed={self.seed}, counter={self.counter})"


def normal_samples(state: RngState, count: int) -> NDArray[np.float64]:
    """Standard normal deviates by the Box-Muller transform.

    Each pair of uniforms yields two deviates; for odd ``count`` the last
    spare is dropped so the stream position depends only on ``count``.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    out = np.empty(count + (count & 1))
    for i in range(0, count, 2):
        u1, u2 = state.uniform(), state.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        out[i] = r * math.cos(2.0 * math.pi * u2)
        out[i + 1] = r * math.sin(2.0 * math.pi * u2)
    return out[:count]
