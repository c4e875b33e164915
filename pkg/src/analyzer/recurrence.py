"""
Spectral analysis of the recurrence p_{j+m1} - p_{j+m2} = w (p_{j+k} - p_j).

The recurrence is a circulant system C p = 0 whose first row has c_0 = w,
c_k = -w, c_m1 = 1, c_m2 = -1. Its eigenvalues are

    mu_t = w (1 - eps^{tk}) + eps^{tm1} - eps^{tm2}

with eigenvector v_t, so the solution space is spanned by the v_t with
mu_t = 0. mu_0 = 0 always; a further zero at t with eps^{tk} != 1 forces

    w = w_t = (eps^{tm1} - eps^{tm2}) / (eps^{tk} - 1)

and the admissible ratios are exactly the distinct values w_t.
"""
from __future__ import annotations

import cmath
import logging
import math
from typing import Optional

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..cyclotomic import fourier_vector, root_power, root_powers
from ..exceptions import ClassificationError, SpecError
from ..models import (
    CaseLabel,
    CaseReport,
    ComplexPolygon,
    HypothesisFlags,
    RatioFamily,
    RecurrenceSpec,
    Spectrum,
    Verdict,
    VerdictKind,
)

logger = logging.getLogger(__name__)

__all__ = [
    "RecurrenceAnalyzer",
    "recurrence_eigenvalue",
    "regular_ratio",
    "recurrence_residual",
    "is_degenerate_family",
    "admissible_ratios",
    "classify",
    "solution_basis",
]


def recurrence_eigenvalue(spec: RecurrenceSpec, w: complex, t: int) -> complex:
    """mu_t = w (1 - eps^{tk}) + eps^{tm1} - eps^{tm2}."""
    n = spec.n
    return w * (1 - root_power(n, t * spec.k)) + root_power(n, t * spec.m1) - root_power(n, t * spec.m2)


def regular_ratio(spec: RecurrenceSpec, t: int) -> Optional[complex]:
    """
    Closed form of w_t, or None when eps^{tk} = 1:

        w_t = exp(i pi t (m1 + m2 - k) / n) * sin(pi t (m1 - m2) / n) / sin(pi t k / n)
    """
    n, two_n = spec.n, 2 * spec.n
    if (t * spec.k) % n == 0:
        return None
    phase = cmath.exp(1j * math.pi * ((t * (spec.m1 + spec.m2 - spec.k)) % two_n) / n)
    num = math.sin(math.pi * ((t * (spec.m1 - spec.m2)) % two_n) / n)
    den = math.sin(math.pi * ((t * spec.k) % two_n) / n)
    return phase * num / den


def recurrence_residual(polygon: ComplexPolygon, m1: int, m2: int, k: int, w: complex) -> float:
    """max_j |p_{j+m1} - p_{j+m2} - w (p_{j+k} - p_j)|."""
    lhs = polygon.shifted(m1) - polygon.shifted(m2)
    rhs = w * (polygon.shifted(k) - polygon.vertices)
    return float(np.abs(lhs - rhs).max())


def is_degenerate_family(n: int, zero_set: tuple[int, ...] | list[int]) -> bool:
    """Every polygon spanned by the family repeats with period n/g, g = gcd(n, zero_set)."""
    return math.gcd(n, *zero_set) > 1


class RecurrenceAnalyzer:
    """Spectrum, admissible ratios and case classification for one spec."""

    def __init__(self, spec: RecurrenceSpec, tolerances: Tolerances = DEFAULT_TOLERANCES):
        """
        Args:
            spec: the recurrence (n, m1, m2, k)
            tolerances: zero, grouping, realness and unit-modulus thresholds
        """
        self.spec = spec
        self.tol = tolerances
        s = np.arange(spec.n, dtype=np.int64)
        self._eps_k = root_powers(spec.n, s * spec.k)
        self._eps_m1 = root_powers(spec.n, s * spec.m1)
        self._eps_m2 = root_powers(spec.n, s * spec.m2)
        self._families: Optional[list[RatioFamily]] = None

    # ── spectrum ─────────────────────────────────────────────────────

    def eigenvalues(self, w: complex) -> np.ndarray:
        """mu_0, ..., mu_{n-1} for the given w."""
        return w * (1 - self._eps_k) + self._eps_m1 - self._eps_m2

    def zero_threshold(self, w: complex) -> float:
        return self.tol.zero * (1.0 + float(np.abs(self.spec.first_row(w)).sum()))

    def zero_set(self, w: complex) -> tuple[int, ...]:
        mu = self.eigenvalues(w)
        mu[0] = 0  # exact: w - w + 1 - 1
        return Spectrum(mu).zero_set(self.zero_threshold(w))

    # ── ratios ───────────────────────────────────────────────────────

    def _ratio_candidates(self) -> tuple[np.ndarray, np.ndarray]:
        t = np.arange(1, self.spec.n, dtype=np.int64)
        generators = (t * self.spec.k) % self.spec.n != 0
        t = t[generators]
        w = (self._eps_m1[t] - self._eps_m2[t]) / (self._eps_k[t] - 1)
        return t, w

    def admissible_ratios(self) -> list[RatioFamily]:
        """Distinct nonzero w_t, each with its spectrally verified zero set."""
        if self._families is not None:
            return self._families

        groups: list[tuple[complex, list[int]]] = []
        for t, w in zip(*self._ratio_candidates()):
            w = complex(w)
            if abs(w) <= self.tol.zero:
                continue  # t m = 0 (mod n): w_t = 0 solves nothing
            for rep, members in groups:
                if abs(w - rep) <= self.tol.grouping * (1 + abs(rep)):
                    members.append(int(t))
                    break
            else:
                groups.append((w, [int(t)]))

        families = []
        for rep, members in groups:
            zero = self.zero_set(rep)
            missing = set(members) - set(zero)
            if missing:
                logger.warning("%s: w=%s groups t=%s but mu_t != 0 there", self.spec, rep, sorted(missing))
            families.append(RatioFamily(
                w=rep,
                zero_set=zero,
                is_unit_modulus=abs(abs(rep) - 1) <= self.tol.unit_modulus,
                generators=tuple(members),
            ))
        logger.debug("%s: %d admissible ratios", self.spec, len(families))
        self._families = families
        return families

    # ── classification ───────────────────────────────────────────────

    def _case_label(self, extras: list[int], real: bool) -> CaseLabel:
        n = self.spec.n
        ext = set(extras)
        negated = {(n - t) % n for t in ext}
        if not ext:
            return CaseLabel.A
        if len(ext) == 1 and not real:
            return CaseLabel.B
        if real and len(ext) <= 2 and ext == negated:
            return CaseLabel.C
        if n % 2 == 0 and not real and len(ext) == 2:
            a, b = sorted(ext)
            if (a + b) % n != 0:
                return CaseLabel.D
        if n % 2 == 0 and real and len(ext) == 4 and ext == negated and n // 2 not in ext:
            return CaseLabel.E
        raise ClassificationError(
            f"{self.spec}: zero set {sorted(ext | {0})} matches none of the cases A-E "
            f"(w {'real' if real else 'not real'})",
            zero_set=tuple(sorted(ext | {0})),
        )

    def _verdict(self, label: CaseLabel, extras: list[int]) -> Verdict:
        n = self.spec.n
        units = [t for t in extras if math.gcd(t, n) == 1]
        if label is CaseLabel.A or not units:
            return Verdict(VerdictKind.DEGENERATE)
        t = units[0]
        if label is CaseLabel.B:
            return Verdict(VerdictKind.REGULAR, t)
        if label is CaseLabel.C:
            return Verdict(VerdictKind.AFFINELY_REGULAR, t)
        others = [u for u in extras if u not in (t, (n - t) % n)]
        return Verdict(VerdictKind.COUNTEREXAMPLE, t, others[0])

    def classify(self, w: complex) -> CaseReport:
        """Terminal case A-E and verdict for the ratio w."""
        if abs(w) <= self.tol.zero:
            raise SpecError("w = 0 is never an admissible ratio")
        zero = self.zero_set(w)
        extras = [t for t in zero if t != 0]
        label = self._case_label(extras, abs(w.imag) <= self.tol.real)
        return CaseReport(
            spec=self.spec,
            w=complex(w),
            case_label=label,
            zero_set=zero,
            hypothesis_flags=HypothesisFlags(self.spec.gcd_condition, self.spec.evenness_bound),
            verdict=self._verdict(label, extras),
            congruence_check=self.spec.congruence,
        )

    def solution_basis(self, w: complex) -> list[ComplexPolygon]:
        """The Fourier polygons v_t, t in the zero set, each checked against the recurrence."""
        if abs(w) <= self.tol.zero:
            raise SpecError("w = 0 is never an admissible ratio")
        spec = self.spec
        basis = [fourier_vector(spec.n, t) for t in self.zero_set(w)]
        for t, v in zip(self.zero_set(w), basis):
            residual = recurrence_residual(v, spec.m1, spec.m2, spec.k, w)
            if residual > self.zero_threshold(w):
                raise ClassificationError(f"{spec}: v_{t} leaves residual {residual:.3e}")
        return basis


# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
#  Functional API
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

def _tolerances(tol: Optional[float]) -> Tolerances:
    return DEFAULT_TOLERANCES if tol is None else Tolerances.uniform(tol)


def admissible_ratios(spec: RecurrenceSpec, tol: Optional[float] = None) -> list[RatioFamily]:
    return RecurrenceAnalyzer(spec, _tolerances(tol)).admissible_ratios()


def classify(spec: RecurrenceSpec, w: complex, tol: Optional[float] = None) -> CaseReport:
    return RecurrenceAnalyzer(spec, _tolerances(tol)).classify(w)


def solution_basis(spec: RecurrenceSpec, w: complex, tol: Optional[float] = None) -> list[ComplexPolygon]:
    return RecurrenceAnalyzer(spec, _tolerances(tol)).solution_basis(w)
