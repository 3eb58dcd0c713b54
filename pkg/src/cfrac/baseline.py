"""Reference error bound from differential balanced truncation.

The competing method reduces the same lattice by deleting whole repeated
units and certifies the error by (n - r) / (1 - gamma)^2 with gamma = l *
lam, where l is the spectral radius of an n x n tridiagonal coupling matrix
whose last row is zero.  The bound is tight for short chains but grows
linearly in n, whereas the region-calculus bound saturates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BaselineBound",
    "tridiag_matrix",
    "spectral_quantity",
    "power_iteration",
    "balanced_truncation_bound",
]


@dataclass(frozen=True)
class BaselineBound:
    n: int
    r: int
    lam: float
    l: float
    gamma: float
    bound: float


def tridiag_matrix(n: int) -> np.ndarray:
    """n x n matrix: tridiag(1, -2, 1) on the first n-1 rows, zero last row."""
    if n < 2:
        raise ValueError("need n >= 2")
    m = np.zeros((n, n))
    idx = np.arange(n - 1)
    m[idx, idx] = -2.0
    m[idx[:-1], idx[:-1] + 1] = 1.0
    m[idx[:-1] + 1, idx[:-1]] = 1.0
    m[n - 2, n - 1] = 1.0
    return m


def spectral_quantity(n: int) -> float:
    """Largest eigenvalue magnitude of :func:`tridiag_matrix`.

    The zero last row makes the matrix block triangular, so its spectrum is
    {0} plus that of the leading (n-1) x (n-1) Toeplitz block
    tridiag(1, -2, 1), whose extreme eigenvalue gives the closed form
    2 - 2 cos((n-1) pi / n).  Converges to 4 from below.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    return 2.0 - 2.0 * math.cos((n - 1) * math.pi / n)


def power_iteration(matrix: np.ndarray, iters: int = 300_000, tol: float = 1e-14, seed: int = 0) -> float:
    """Dominant eigenvalue magnitude; the numeric cross-check for the closed form.

    The extreme eigenvalues cluster as the matrix grows, so the iteration
    budget is generous; the Rayleigh quotient is sign-stable even though the
    dominant eigenvalue is negative.
    """
    a = np.asarray(matrix, dtype=float)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(a.shape[0])
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(iters):
        y = a @ x
        ny = np.linalg.norm(y)
        if ny == 0.0:
            return 0.0
        lam_new = float(x @ y)  # Rayleigh quotient, ||x|| = 1
        x = y / ny
        if abs(lam_new - lam) <= tol * max(1.0, abs(lam_new)):
            lam = lam_new
            break
        lam = lam_new
    return abs(lam)


def balanced_truncation_bound(n: int, r: int, lam: float) -> BaselineBound:
    """Error bound (n - r) / (1 - gamma)^2 with gamma = l(n) * lam.

    gamma = 1 puts the bound at infinity (the method's certificate breaks
    down there); the returned record carries bound = inf in that case.
    """
    if n <= r:
        raise ValueError("need n > r")
    l = spectral_quantity(n)
    gamma = l * lam
    if gamma == 1.0:
        bound = math.inf
    else:
        bound = (n - r) / (1.0 - gamma) ** 2
    return BaselineBound(n, r, lam, l, gamma, bound)
