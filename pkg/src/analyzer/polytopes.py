"""
Polytopes with a cyclic symmetry p_j -> p_{j+1}.

For n >= 5 points spanning R^d these are equivalent:
    - |p_{j+k} - p_j| does not depend on j, for every k;
    - some isometry phi has phi(p_j) = p_{j+1};
    - P is an orbit of a block rotation, i.e. similar to Q(k_1, ..., k_s)
      up to the amplitude of each rotation block.

Q(k_1, ..., k_s) has vertices q_m on the unit sphere, built from the blocks
(cos 2 pi k_i m / n, sin 2 pi k_i m / n) and, when d is odd, a last
coordinate (-1)^m. Every check here first centers the vertices at their
centroid and scales to unit mean radius.
"""
from __future__ import annotations

import logging
import math
from typing import Optional, Sequence

import numpy as np

from ..config import DEFAULT_TOL
from ..cyclotomic import circulant_spectrum
from ..exceptions import GeometryError, SpecError
from ..models import (
    CyclicIsometry,
    DistanceProfile,
    FrequencyRecovery,
    FrequencySet,
    GramReport,
    JohnCheck,
    PolytopeVerification,
    PolytopeVertices,
)

logger = logging.getLogger(__name__)

__all__ = [
    "orbit_polytope",
    "build_q",
    "distance_profile",
    "cyclic_isometry",
    "gram_report",
    "john_condition",
    "john_position",
    "recover_frequencies",
    "interleaved_example",
    "verify_polytope",
]

# eigenvalues with |Im| above this are rotation pairs
_IMAG_EPS = 1e-7
# n * theta / 2 pi must land this close to an integer
_FREQ_EPS = 1e-6


def _as_frequencies(n: int, ks: FrequencySet | Sequence[int]) -> FrequencySet:
    return ks if isinstance(ks, FrequencySet) else FrequencySet(n, tuple(ks))


def orbit_polytope(
    n: int,
    ks: FrequencySet | Sequence[int],
    amplitudes: Optional[Sequence[float]] = None,
    reflection_amplitude: Optional[float] = None,
) -> PolytopeVertices:
    """
    Orbit of a block rotation: block i is a_i (cos 2 pi k_i m / n, sin 2 pi k_i m / n),
    followed by r (-1)^m when reflection_amplitude r is given.
    """
    ks = _as_frequencies(n, ks)
    amps = np.ones(ks.s) if amplitudes is None else np.asarray(amplitudes, dtype=float)
    if amps.shape != (ks.s,):
        raise SpecError(f"expected {ks.s} amplitudes, got {amps.size}")
    if reflection_amplitude is not None and n % 2:
        raise SpecError(f"a (-1)^m coordinate needs n even, got n={n}")

    m = np.arange(n)
    angles = 2.0 * np.pi * np.outer(m, ks.ks) / n
    columns = np.empty((n, 2 * ks.s))
    columns[:, 0::2] = np.cos(angles) * amps
    columns[:, 1::2] = np.sin(angles) * amps
    if reflection_amplitude is not None:
        sign = np.where(m % 2 == 0, 1.0, -1.0)
        columns = np.column_stack([columns, reflection_amplitude * sign])
    return PolytopeVertices(columns)


def build_q(n: int, d: int, ks: FrequencySet | Sequence[int], isotropic: bool = False) -> PolytopeVertices:
    """
    Q(k_1, ..., k_s) with every q_m on the unit sphere.

    Even d scales every block by 1/sqrt(s). Odd d scales every coordinate by
    1/sqrt(s + 1); with isotropic=True it uses sqrt(2/d) for the blocks and
    1/sqrt(d) for the last coordinate instead, which puts Q in John position.
    """
    if d < 2:
        raise SpecError(f"dimension must be >= 2, got {d}")
    ks = _as_frequencies(n, ks)
    s = d // 2
    if ks.s != s:
        raise SpecError(f"d={d} needs {s} frequencies, got {ks.s}")
    if d % 2 == 0:
        return orbit_polytope(n, ks, [1 / math.sqrt(s)] * s)
    if n % 2:
        raise SpecError(f"odd d needs n even, got n={n}")
    if isotropic:
        return orbit_polytope(n, ks, [math.sqrt(2 / d)] * s, 1 / math.sqrt(d))
    scale = 1 / math.sqrt(s + 1)
    return orbit_polytope(n, ks, [scale] * s, scale)


def distance_profile(polytope: PolytopeVertices, tol: float = DEFAULT_TOL) -> DistanceProfile:
    """Mean and spread of |p_{j+k} - p_j| over j, for k = 1 .. n//2."""
    x = polytope.vertices
    means, spreads = [], []
    for k in range(1, polytope.n // 2 + 1):
        dist = np.linalg.norm(np.roll(x, -k, axis=0) - x, axis=1)
        mean = float(dist.mean())
        means.append(mean)
        spreads.append(float(np.abs(dist - mean).max()))
    invariant = max(spreads) <= tol * polytope.diameter
    return DistanceProfile(tuple(means), tuple(spreads), invariant)


def _normalized(polytope: PolytopeVertices) -> tuple[np.ndarray, float]:
    """Centered vertices divided by their mean radius, and that radius."""
    centered = polytope.centered
    radius = float(np.linalg.norm(centered, axis=1).mean())
    return centered / radius, radius


def _affine_frame(x: np.ndarray) -> list[int]:
    """d + 1 affinely independent rows, each chosen farthest from the span so far."""
    n, d = x.shape
    frame = [0]
    basis = np.zeros((0, d))
    diffs = x - x[0]
    for _ in range(d):
        residual = diffs - (diffs @ basis.T) @ basis if basis.size else diffs.copy()
        norms = np.linalg.norm(residual, axis=1)
        norms[frame] = -1.0
        j = int(np.argmax(norms))
        if norms[j] <= 1e-12:
            raise GeometryError("vertices do not span R^d")
        frame.append(j)
        basis = np.vstack([basis, residual[j] / norms[j]])
    return frame


def cyclic_isometry(polytope: PolytopeVertices, tol: float = DEFAULT_TOL) -> Optional[CyclicIsometry]:
    """
    The isometry with phi(p_j) = p_{j+1}, or None.

    The map is solved exactly on an affinely independent frame of d + 1
    vertices, then must be orthogonal and carry every vertex to its successor.
    """
    x, radius = _normalized(polytope)
    y = np.roll(x, -1, axis=0)
    d = polytope.d

    frame = _affine_frame(x)
    system = np.column_stack([x[frame], np.ones(d + 1)])
    solution = np.linalg.solve(system, y[frame])
    linear, offset = solution[:d].T, solution[d]

    orthogonality = float(np.abs(linear.T @ linear - np.eye(d)).max())
    residual = float(np.linalg.norm(x @ linear.T + offset - y, axis=1).max())
    if orthogonality > tol or residual > tol:
        logger.debug("no cyclic isometry: orthogonality %.3e, residual %.3e", orthogonality, residual)
        return None

    eigenvalues = np.linalg.eigvals(linear)
    angles = sorted(float(np.angle(e)) for e in eigenvalues if e.imag > _IMAG_EPS)
    negatives = int(np.sum((np.abs(eigenvalues.imag) <= _IMAG_EPS) & (np.abs(eigenvalues.real + 1) <= 1e-6)))
    angles.extend([math.pi] * (negatives // 2))

    centroid = polytope.centroid
    translation = centroid - linear @ centroid + radius * offset
    return CyclicIsometry(
        rotation=linear,
        translation=translation,
        block_angles=tuple(angles),
        reflection_count=negatives % 2,
        residual=max(orthogonality, residual),
    )


def gram_report(polytope: PolytopeVertices, tol: float = DEFAULT_TOL) -> GramReport:
    """Gram matrix of sqrt(d/n) (p_j - c) / r and its projector diagnostics."""
    n, d = polytope.n, polytope.d
    centered = polytope.centered
    radii = np.linalg.norm(centered, axis=1)
    radius = float(radii.mean())
    on_sphere = float(np.abs(radii - radius).max()) <= tol * radius

    scaled = math.sqrt(d / n) * centered / radius
    gram = scaled @ scaled.T
    lag = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    deviation = float(np.abs(gram - gram[0, lag]).max())

    eigenvalues = np.linalg.eigvalsh(gram)
    spectrum = circulant_spectrum(gram[0])
    mu = spectrum.values
    return GramReport(
        gram=gram,
        circulant_deviation=deviation,
        is_circulant=deviation <= tol,
        idempotency_residual=float(np.linalg.norm(gram @ gram - gram)),
        trace=float(np.trace(gram)),
        eigenvalues=eigenvalues,
        near_one=int(np.sum(np.abs(eigenvalues - 1) <= tol)),
        near_zero=int(np.sum(np.abs(eigenvalues) <= tol)),
        spectrum=spectrum,
        mu0_is_zero=abs(spectrum[0]) <= tol,
        unit_frequencies=tuple(int(t) for t in np.flatnonzero(np.abs(mu - 1) <= tol)),
        on_sphere=on_sphere,
    )


def john_condition(polytope: PolytopeVertices, tol: float = DEFAULT_TOL) -> JohnCheck:
    """
    sum lambda p_j = 0 and sum lambda p_j p_j^T = I with lambda = d/n.

    Uses the vertices as given: an off-center polytope fails.
    """
    x = polytope.vertices
    weight = polytope.d / polytope.n
    residual_sum = float(np.linalg.norm(weight * x.sum(axis=0)))
    residual_identity = float(np.linalg.norm(weight * x.T @ x - np.eye(polytope.d)))
    return JohnCheck(
        holds=residual_sum <= tol and residual_identity <= tol,
        residual_sum=residual_sum,
        residual_identity=residual_identity,
        weight=weight,
    )


def john_position(polytope: PolytopeVertices) -> PolytopeVertices:
    """
    Whiten the centered vertices: X M^{-1/2} / sqrt(d) with M = X^T X / n.

    The result satisfies the John condition with lambda = d/n. When P has a
    cyclic isometry it is also inscribed in the unit sphere.
    """
    x = polytope.centered
    moment = x.T @ x / polytope.n
    evals, evecs = np.linalg.eigh(moment)
    if evals.min() <= 1e-12 * evals.max():
        raise GeometryError("second-moment matrix is singular")
    inv_sqrt = (evecs / np.sqrt(evals)) @ evecs.T
    return PolytopeVertices(x @ inv_sqrt / math.sqrt(polytope.d))


def _procrustes_residual(source: np.ndarray, target: np.ndarray) -> float:
    """Max vertex distance after the best orthogonal map source -> target."""
    u, _, vt = np.linalg.svd(source.T @ target)
    return float(np.linalg.norm(source @ (u @ vt) - target, axis=1).max())


def recover_frequencies(polytope: PolytopeVertices, tol: float = DEFAULT_TOL) -> Optional[FrequencyRecovery]:
    """
    Read k_i off the rotation angles of the cyclic isometry and fit Q(k) to P.

    Returns None when there is no isometry or the angles do not give
    d//2 distinct frequencies in (0, n/2). Otherwise the residual of the best
    orthogonal alignment of unit-radius P onto Q is returned, not thresholded.
    For odd d both the printed and the isotropic Q are tried.
    """
    isometry = cyclic_isometry(polytope, tol)
    if isometry is None:
        return None
    n, d = polytope.n, polytope.d

    ks = []
    for theta in isometry.block_angles:
        exact = n * theta / (2 * math.pi)
        k = round(exact)
        if abs(exact - k) > _FREQ_EPS:
            logger.debug("angle %.12f is not a multiple of 2 pi / %d", theta, n)
            return None
        ks.append(k)
    ks.sort()
    if (
        len(ks) != d // 2
        or isometry.reflection_count != d % 2
        or len(set(ks)) != len(ks)
        or not all(0 < 2 * k < n for k in ks)
    ):
        logger.debug("angles give frequencies %s, reflections %d", ks, isometry.reflection_count)
        return None
    frequencies = FrequencySet(n, tuple(ks))

    source, _ = _normalized(polytope)
    variants = {"canonical": build_q(n, d, frequencies)}
    if d % 2:
        variants["isotropic"] = build_q(n, d, frequencies, isotropic=True)
    residuals = {name: _procrustes_residual(source, q.centered) for name, q in variants.items()}
    best = min(residuals, key=residuals.get)
    return FrequencyRecovery(frequencies, residuals[best], best, residuals)


def interleaved_example(k: int) -> PolytopeVertices:
    """
    Two regular k-gons in orthogonal planes of R^4, taken alternately:
    p_{2s} = (cos 2 pi s/k, sin 2 pi s/k, 0, 0), p_{2s+1} = (0, 0, cos 2 pi s/k, sin 2 pi s/k).
    """
    if k < 3:
        raise SpecError(f"k must be >= 3, got {k}")
    angle = 2.0 * np.pi * np.arange(k) / k
    ring = np.column_stack([np.cos(angle), np.sin(angle)])
    vertices = np.zeros((2 * k, 4))
    vertices[0::2, :2] = ring
    vertices[1::2, 2:] = ring
    return PolytopeVertices(vertices)


def verify_polytope(polytope: PolytopeVertices, tol: float = DEFAULT_TOL, normalize: bool = False) -> PolytopeVerification:
    """
    Run every check on one polytope.

    Gram and John checks use the vertices as given, or their John position
    when normalize is set. Distance, isometry and frequency checks always
    use the input.
    """
    target = john_position(polytope) if normalize else polytope
    return PolytopeVerification(
        profile=distance_profile(polytope, tol),
        isometry=cyclic_isometry(polytope, tol),
        gram=gram_report(target, tol),
        john=john_condition(target, tol),
        recovery=recover_frequencies(polytope, tol),
        normalized=normalize,
    )
