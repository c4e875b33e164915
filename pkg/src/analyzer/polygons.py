"""
Polygon construction, ratio recovery and DFT-support classification.

A polygon is affinely regular exactly when its DFT support (z_0 dropped)
lies in {t, n - t} with gcd(t, n) = 1, and regular when it is a single such
index. Star traversals (t != +-1) count as regular.
"""
from __future__ import annotations

import logging
import math
from typing import Mapping, Optional, Sequence

import numpy as np

from ..config import DEFAULT_TOL
from ..cyclotomic import dft, fourier_matrix, fourier_vector
from ..exceptions import GeometryError, SpecError
from ..models import (
    AffineCycleMap,
    ComplexPolygon,
    PolygonClass,
    PolygonLabel,
    RecurrenceSpec,
    Remark5Witness,
)
from ..number_theory.witnesses import satisfies_branch
from .recurrence import regular_ratio

logger = logging.getLogger(__name__)

# rounding headroom of an n-point DFT, in units of eps * max |p_j|
NOISE_ULPS = 16

__all__ = [
    "make_combination",
    "residue_translation",
    "recover_ratio",
    "classify_polygon",
    "coxeter_lambda",
    "affine_cycle_map",
    "counterexample_polygon",
    "remark4_polygon",
]


def make_combination(n: int, coeffs: Mapping[int, complex]) -> ComplexPolygon:
    """sum_t z_t v_t; indices are reduced mod n and repeated ones accumulate."""
    if n < 4:
        raise SpecError(f"n must be >= 4, got {n}")
    z = np.zeros(n, dtype=complex)
    for t, value in coeffs.items():
        z[t % n] += value
    polygon = ComplexPolygon(fourier_matrix(n) @ z)
    if not polygon.is_pairwise_distinct():
        logger.debug("combination %s on n=%d has coincident vertices", dict(coeffs), n)
    return polygon


def residue_translation(polygon: ComplexPolygon, t0: int, shifts: Sequence[complex]) -> ComplexPolygon:
    """Translate p_j by shifts[j mod t0]."""
    if t0 < 2:
        raise SpecError(f"t0 must be >= 2, got {t0}")
    if len(shifts) != t0:
        raise SpecError(f"expected {t0} shifts, got {len(shifts)}")
    offsets = np.asarray(shifts, dtype=complex)[np.arange(polygon.n) % t0]
    return ComplexPolygon(polygon.vertices + offsets)


def recover_ratio(
    polygon: ComplexPolygon, m1: int, m2: int, k: int, tol: float = DEFAULT_TOL
) -> Optional[complex]:
    """
    The w with p_{j+m1} - p_{j+m2} = w (p_{j+k} - p_j) for every j, or None.

    w is read off the index with the largest |p_{j+k} - p_j| and then checked
    against all n equations.

    Raises:
        GeometryError: if the vertices are not pairwise distinct.
    """
    if not polygon.is_pairwise_distinct(tol):
        raise GeometryError("recover_ratio needs pairwise distinct vertices")
    den = polygon.shifted(k) - polygon.vertices
    num = polygon.shifted(m1) - polygon.shifted(m2)
    scale = polygon.diameter

    j = int(np.argmax(np.abs(den)))
    if abs(den[j]) <= tol * scale:
        logger.info("degenerate differences: p_{j+%d} = p_j for every j", k)
        return None
    w = complex(num[j] / den[j])

    residual = float(np.abs(num - w * den).max())
    if residual > tol * scale * (1 + abs(w)):
        logger.debug("no common ratio for (%d, %d, %d): residual %.3e", m1, m2, k, residual)
        return None
    return w


def classify_polygon(polygon: ComplexPolygon, tol: float = DEFAULT_TOL) -> PolygonClass:
    """
    Label a polygon by the support of its DFT with z_0 dropped.

    The support is every t != 0 with |z_t| above both tol * max |z_t| and the
    rounding floor of the transform, NOISE_ULPS * n * eps * max |p_j|. A polygon
    with no coefficient above that floor is constant. Both thresholds scale with
    the polygon, so the label does not depend on its size or position.
    """
    n = polygon.n
    z = np.abs(dft(polygon))
    z[0] = 0.0
    peak = float(z.max())
    floor = NOISE_ULPS * n * np.finfo(float).eps * float(np.abs(polygon.vertices).max())
    if peak <= floor:
        return PolygonClass(PolygonLabel.CONSTANT, ())

    support = tuple(int(t) for t in np.flatnonzero(z > max(tol * peak, floor)))
    t = support[0]
    if math.gcd(t, n) == 1:
        if len(support) == 1:
            return PolygonClass(PolygonLabel.REGULAR, support, t)
        if len(support) == 2 and support[1] == n - t:
            return PolygonClass(PolygonLabel.AFFINELY_REGULAR, support, t)
    return PolygonClass(PolygonLabel.OTHER, support)


def coxeter_lambda(polygon: ComplexPolygon, tol: float = DEFAULT_TOL) -> Optional[float]:
    """The real lambda >= 0 with p_{j+2} - p_{j-1} = lambda (p_{j+1} - p_j), or None."""
    w = recover_ratio(polygon, 2, -1, 1, tol)
    if w is None or abs(w.imag) > tol * (1 + abs(w)) or w.real < -tol:
        return None
    return max(w.real, 0.0)


def affine_cycle_map(polygon: ComplexPolygon, tol: float = DEFAULT_TOL) -> Optional[AffineCycleMap]:
    """Least-squares fit of z -> a z + b conj(z) + c onto p_j -> p_{j+1}; None if it misses."""
    v = polygon.vertices
    design = np.column_stack([v, np.conj(v), np.ones_like(v)])
    target = polygon.shifted(1)
    (a, b, c), *_ = np.linalg.lstsq(design, target, rcond=None)
    residual = float(np.abs(design @ np.array([a, b, c]) - target).max())
    if residual > tol * max(1.0, polygon.diameter):
        return None
    return AffineCycleMap(complex(a), complex(b), complex(c), residual)


def counterexample_polygon(spec: RecurrenceSpec, witness: Remark5Witness, x: float) -> ComplexPolygon:
    """P(x) = x v_t + (1 - x) v_t'; pairwise distinct for all but finitely many x."""
    if not satisfies_branch(spec, witness.t, witness.t_prime, witness.branch):
        raise SpecError(f"({witness.t}, {witness.t_prime}) is not a {witness.branch} witness for {spec}")
    return make_combination(spec.n, {witness.t: x, witness.t_prime: 1 - x})


def remark4_polygon(
    spec: RecurrenceSpec, shifts: Sequence[complex], t: int = 1
) -> tuple[ComplexPolygon, complex]:
    """
    The regular n-gon v_t with its residue classes mod t0 = gcd(n, k, m) translated.

    The result still satisfies the recurrence with the regular polygon's w,
    but is not affinely regular once the shifts differ.

    Returns:
        (polygon, w)
    """
    t0 = math.gcd(spec.n, spec.k, spec.m)
    if t0 < 2:
        raise SpecError(f"{spec}: gcd(n, k, m1 - m2) = 1, nothing to translate")
    w = regular_ratio(spec, t)
    if w is None or abs(w) <= DEFAULT_TOL:
        raise SpecError(f"{spec}: v_{t} gives no nonzero ratio")
    return residue_translation(fourier_vector(spec.n, t), t0, shifts), w
