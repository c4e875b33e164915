"""
Roots of unity, Fourier polygons and circulant spectra.

Conventions:
    eps = exp(2 pi i / n)
    v_t = (1, eps^t, eps^{2t}, ..., eps^{(n-1)t})       (unnormalized, leading 1)
    P   = sum_t z_t v_t                                 (dft/idft are inverse)
    mu_t = sum_j c_j eps^{jt}                           (circulant with first row c)

Exponents are reduced mod n before any trigonometry, so eps^j is never
obtained by repeated multiplication. Quarter turns are returned exactly.
The DFT is a direct O(n^2) product with a cached matrix: n stays at desk
scale and exact index bookkeeping matters more than speed.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .exceptions import SpecError
from .models import ComplexPolygon, Spectrum

__all__ = [
    "root_power",
    "root_powers",
    "fourier_matrix",
    "fourier_vector",
    "dft",
    "idft",
    "circulant_spectrum",
]

_QUARTER_TURNS = np.array([1, 1j, -1, -1j], dtype=complex)


def root_power(n: int, j: int) -> complex:
    """eps^j for eps = exp(2 pi i / n)."""
    if n < 1:
        raise SpecError(f"n must be >= 1, got {n}")
    r = j % n
    if (4 * r) % n == 0:
        return complex(_QUARTER_TURNS[(4 * r) // n])
    angle = 2.0 * math.pi * r / n
    return complex(math.cos(angle), math.sin(angle))


def root_powers(n: int, exponents: np.ndarray | int) -> np.ndarray:
    """Vectorized root_power over an integer array of exponents."""
    if n < 1:
        raise SpecError(f"n must be >= 1, got {n}")
    r = np.mod(np.asarray(exponents, dtype=np.int64), n)
    angle = (2.0 * np.pi / n) * r
    out = np.cos(angle) + 1j * np.sin(angle)
    exact = (4 * r) % n == 0
    if np.any(exact):
        out = np.where(exact, _QUARTER_TURNS[((4 * r) // n) % 4], out)
    return out


@lru_cache(maxsize=16)
def fourier_matrix(n: int) -> np.ndarray:
    """Read-only E with E[j, t] = eps^{jt}; column t is v_t."""
    idx = np.arange(n, dtype=np.int64)
    matrix = root_powers(n, np.outer(idx, idx))
    matrix.setflags(write=False)
    return matrix


def fourier_vector(n: int, t: int) -> ComplexPolygon:
    """The polygon v_t; regular with distinct vertices iff gcd(t, n) = 1."""
    if n < 4:
        raise SpecError(f"n must be >= 4, got {n}")
    return ComplexPolygon(root_powers(n, np.arange(n, dtype=np.int64) * (t % n)))


def dft(polygon: ComplexPolygon) -> np.ndarray:
    """Coefficients z with polygon = sum_t z_t v_t."""
    n = polygon.n
    return np.conj(fourier_matrix(n)) @ polygon.vertices / n


def idft(z: np.ndarray | list[complex]) -> ComplexPolygon:
    """The polygon sum_t z_t v_t."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    return ComplexPolygon(fourier_matrix(z.size) @ z)


def circulant_spectrum(first_row: np.ndarray | list[complex]) -> Spectrum:
    """Eigenvalues of the circulant matrix with the given first row."""
    c = np.asarray(first_row, dtype=complex).reshape(-1)
    if c.size < 1:
        raise SpecError("a circulant matrix needs n >= 1")
    # E is symmetric, so (E @ c)[t] = sum_j c_j eps^{jt}
    return Spectrum(fourier_matrix(c.size) @ c)
