"""
Side and diagonal lengths of the regular n-gon, d_j = sin(j pi / n).

lemma3_scan looks for two distinct index pairs with d_k/d_l = d_k'/d_l' != 1.
Each candidate is certified in extended precision through the cross product
d_k d_l' - d_k' d_l: a pair is declared equal below EQUAL_BELOW and distinct
above DISTINCT_ABOVE, and anything in between raises PrecisionGapError.

Collisions do exist once 6 | n and n >= 12, because of the identity
d_j d_{n/2 - j} = d_{n/6} d_{2j}. For example d_3/d_2 = d_6/d_3 = sqrt(2)
when n = 12, and d_7/d_1 = d_20/d_2 when n = 42.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor, as_completed

import mpmath
import numpy as np

from ..exceptions import PrecisionGapError, SpecError
from ..models import RatioCollision

logger = logging.getLogger(__name__)

__all__ = [
    "CERT_DPS",
    "EQUAL_BELOW",
    "DISTINCT_ABOVE",
    "diagonal_length",
    "lemma3_scan",
    "lemma3_scan_range",
    "ratio_lookup",
]

CERT_DPS = 40
EQUAL_BELOW = mpmath.mpf("1e-24")
DISTINCT_ABOVE = mpmath.mpf("1e-20")

# Float ratios closer than this (relative) go to extended precision; anything
# farther apart is already distinct by many orders of magnitude.
_SCREEN = 1e-9


def diagonal_length(n: int, j: int) -> float:
    """d_j = sin(j pi / n) for 1 <= j <= n/2."""
    if n < 4:
        raise SpecError(f"n must be >= 4, got {n}")
    if not 1 <= j <= n // 2:
        raise SpecError(f"diagonal index must lie in [1, {n // 2}], got {j}")
    return math.sin(j * math.pi / n)


def _ratio_pairs(n: int) -> list[tuple[int, int]]:
    # k > l keeps every ratio above 1; ratios below 1 are the reciprocals
    half = n // 2
    return [(k, l) for k in range(2, half + 1) for l in range(1, k)]


def _certify(dk, dl_prime, dk_prime, dl) -> bool:
    diff = abs(dk * dl_prime - dk_prime * dl)
    if diff < EQUAL_BELOW:
        return True
    if diff > DISTINCT_ABOVE:
        return False
    raise PrecisionGapError(f"cross-product difference {mpmath.nstr(diff, 5)} is undecided")


def lemma3_scan(n: int) -> list[RatioCollision]:
    """All collisions d_k/d_l = d_k'/d_l' != 1 with k > l, k' > l', (k,l) < (k',l')."""
    if n < 4:
        raise SpecError(f"n must be >= 4, got {n}")
    pairs = _ratio_pairs(n)
    if len(pairs) < 2:
        return []

    d = np.sin(np.arange(n // 2 + 1) * np.pi / n)
    ratios = np.array([d[k] / d[l] for k, l in pairs])
    order = np.argsort(ratios, kind="stable")

    candidates: list[tuple[int, int]] = []
    for a in range(len(order)):
        b = a + 1
        while b < len(order) and ratios[order[b]] - ratios[order[a]] <= _SCREEN * ratios[order[a]]:
            candidates.append(tuple(sorted((pairs[order[a]], pairs[order[b]]))))
            b += 1

    collisions: list[RatioCollision] = []
    with mpmath.workdps(CERT_DPS):
        dm = [mpmath.sin(j * mpmath.pi / n) for j in range(n // 2 + 1)]
        for (k, l), (kp, lp) in sorted(set(candidates)):
            if _certify(dm[k], dm[lp], dm[kp], dm[l]):
                collisions.append(RatioCollision(n, k, l, kp, lp, float(dm[k] / dm[l])))

    logger.info("n=%d: %d ratio pairs, %d candidates, %d collisions",
                n, len(pairs), len(candidates), len(collisions))
    return collisions


def lemma3_scan_range(n_min: int, n_max: int, workers: int = 1) -> dict[int, list[RatioCollision]]:
    """lemma3_scan for every n in [n_min, n_max], one task per n."""
    if n_min < 4 or n_max < n_min:
        raise SpecError(f"need 4 <= n_min <= n_max, got {n_min}, {n_max}")
    ns = range(n_min, n_max + 1)
    if workers <= 1:
        return {n: lemma3_scan(n) for n in ns}

    results: dict[int, list[RatioCollision]] = {}
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futures = {ex.submit(lemma3_scan, n): n for n in ns}
        for fut in as_completed(futures):
            results[futures[fut]] = fut.result()
    return dict(sorted(results.items()))


def ratio_lookup(n: int, r: float, tol: float) -> list[tuple[int, int]]:
    """All (k, l) in [1, n/2]^2 with |d_k / d_l - r| <= tol."""
    if not r > 0:
        raise SpecError(f"ratio must be positive, got {r}")
    half = n // 2
    d = np.sin(np.arange(half + 1) * np.pi / n)
    return [(k, l) for k in range(1, half + 1) for l in range(1, half + 1)
            if abs(d[k] / d[l] - r) <= tol]
