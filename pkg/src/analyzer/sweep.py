"""
Exhaustive check of the regular / affinely regular conclusion over all specs.

For every spec with the gcd and evenness hypotheses and every admissible
ratio with |w| != 1, the classification must be case B with
m1 + m2 != k (mod n), or case C with m1 + m2 = k and w real. Families whose
zero set shares a factor with n only span polygons with repeated vertices and
are counted as degenerate, not as violations.

Specs that fail the hypotheses form the control group: there, case D/E
counterexample families are expected and recorded as detections.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, Optional

import pandas as pd

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..exceptions import ClassificationError, SpecError
from ..models import CaseLabel, RatioFamily, RecurrenceSpec, VerdictKind
from .recurrence import RecurrenceAnalyzer, is_degenerate_family

logger = logging.getLogger(__name__)

__all__ = [
    "SweepViolation",
    "ControlDetection",
    "SpecAudit",
    "NSweep",
    "SweepReport",
    "audit_spec",
    "sweep_n",
    "theorem2_sweep",
]


@dataclass(frozen=True)
class SweepViolation:
    spec: RecurrenceSpec
    w: complex
    zero_set: tuple[int, ...]
    reason: str

    def sort_key(self) -> tuple:
        s = self.spec
        return s.n, s.m1, s.m2, s.k, round(self.w.real, 9), round(self.w.imag, 9)


@dataclass(frozen=True)
class ControlDetection:
    """A counterexample family found on a spec outside the hypotheses."""
    spec: RecurrenceSpec
    w: complex
    zero_set: tuple[int, ...]
    case_label: CaseLabel
    t: int
    t_prime: int

    def sort_key(self) -> tuple:
        s = self.spec
        return s.n, s.m1, s.m2, s.k, self.t, self.t_prime


@dataclass(frozen=True)
class SpecAudit:
    spec: RecurrenceSpec
    hypotheses_hold: bool
    families_checked: int = 0
    passed: int = 0
    degenerate: int = 0
    unit_modulus_skipped: int = 0
    unclassified: int = 0
    violations: tuple[SweepViolation, ...] = ()
    control_detections: tuple[ControlDetection, ...] = ()


@dataclass(frozen=True)
class NSweep:
    """Totals for one n."""
    n: int
    specs_checked: int = 0
    control_specs: int = 0
    families_checked: int = 0
    passed: int = 0
    degenerate: int = 0
    unit_modulus_skipped: int = 0
    control_unclassified: int = 0
    violations: tuple[SweepViolation, ...] = ()
    control_detections: tuple[ControlDetection, ...] = ()


@dataclass(frozen=True)
class SweepReport:
    n_min: int
    n_max: int
    include_control: bool
    per_n: tuple[NSweep, ...] = field(default_factory=tuple)

    def _total(self, name: str) -> int:
        return sum(getattr(row, name) for row in self.per_n)

    @property
    def specs_checked(self) -> int:
        return self._total("specs_checked")

    @property
    def families_checked(self) -> int:
        return self._total("families_checked")

    @property
    def passed(self) -> int:
        return self._total("passed")

    @property
    def degenerate(self) -> int:
        return self._total("degenerate")

    @property
    def unit_modulus_skipped(self) -> int:
        return self._total("unit_modulus_skipped")

    @property
    def violations(self) -> list[SweepViolation]:
        return sorted((v for row in self.per_n for v in row.violations), key=SweepViolation.sort_key)

    @property
    def control_detections(self) -> list[ControlDetection]:
        return sorted((c for row in self.per_n for c in row.control_detections), key=ControlDetection.sort_key)

    @property
    def ok(self) -> bool:
        return not any(row.violations for row in self.per_n)

    def to_frame(self) -> pd.DataFrame:
        """One row per n with the counts, violations and detections."""
        rows = [{
            "n": row.n,
            "specs": row.specs_checked,
            "families": row.families_checked,
            "passed": row.passed,
            "degenerate": row.degenerate,
            "unit_skipped": row.unit_modulus_skipped,
            "violations": len(row.violations),
            "control_specs": row.control_specs,
            "control_detections": len(row.control_detections),
        } for row in self.per_n]
        return pd.DataFrame(rows).set_index("n") if rows else pd.DataFrame()


def _check_family(analyzer: RecurrenceAnalyzer, family: RatioFamily) -> Optional[str]:
    """None when the family passes or is degenerate, else the violation reason."""
    spec = analyzer.spec
    try:
        report = analyzer.classify(family.w)
    except ClassificationError:
        if is_degenerate_family(spec.n, family.zero_set):
            return None
        return "zero set outside cases A-E"

    if report.verdict.kind is VerdictKind.DEGENERATE:
        return None
    if report.case_label is CaseLabel.B:
        return "case B with m1 + m2 = k (mod n)" if spec.congruence else None
    if report.case_label is CaseLabel.C:
        if not spec.congruence:
            return "case C with m1 + m2 != k (mod n)"
        return None if family.is_real(analyzer.tol.real) else "case C with non-real w"
    return f"case {report.case_label} {report.verdict}"


def audit_spec(spec: RecurrenceSpec, tolerances: Tolerances = DEFAULT_TOLERANCES) -> SpecAudit:
    """Classify every admissible family of one spec."""
    analyzer = RecurrenceAnalyzer(spec, tolerances)
    hypotheses = spec.hypotheses_hold
    counts = {"families_checked": 0, "passed": 0, "degenerate": 0, "unit_modulus_skipped": 0, "unclassified": 0}
    violations: list[SweepViolation] = []
    detections: list[ControlDetection] = []

    for family in analyzer.admissible_ratios():
        if not hypotheses:
            try:
                report = analyzer.classify(family.w)
            except ClassificationError:
                counts["unclassified"] += 1
                continue
            if report.verdict.kind is VerdictKind.COUNTEREXAMPLE and not family.is_unit_modulus:
                detections.append(ControlDetection(
                    spec, family.w, family.zero_set, report.case_label,
                    report.verdict.t, report.verdict.t_prime,
                ))
            continue

        if family.is_unit_modulus:
            counts["unit_modulus_skipped"] += 1
            continue
        counts["families_checked"] += 1
        reason = _check_family(analyzer, family)
        if reason is not None:
            logger.warning("%s: w=%s violates (%s)", spec, family.w, reason)
            violations.append(SweepViolation(spec, family.w, family.zero_set, reason))
        elif is_degenerate_family(spec.n, family.zero_set):
            counts["degenerate"] += 1
        else:
            counts["passed"] += 1

    return SpecAudit(spec, hypotheses, violations=tuple(violations), control_detections=tuple(detections), **counts)


def _specs(n: int):
    for m1 in range(n):
        for m2 in range(n):
            if m1 == m2:
                continue
            for k in range(1, n):
                yield RecurrenceSpec(n, m1, m2, k)


def sweep_n(n: int, include_control: bool = False, tolerances: Tolerances = DEFAULT_TOLERANCES) -> NSweep:
    """All specs (n, m1, m2, k) with 0 <= m1, m2 < n and 0 < k < n."""
    totals = dict(specs_checked=0, control_specs=0, families_checked=0, passed=0,
                  degenerate=0, unit_modulus_skipped=0, control_unclassified=0)
    violations: list[SweepViolation] = []
    detections: list[ControlDetection] = []

    for spec in _specs(n):
        if not spec.hypotheses_hold and not include_control:
            continue
        audit = audit_spec(spec, tolerances)
        if audit.hypotheses_hold:
            totals["specs_checked"] += 1
            totals["families_checked"] += audit.families_checked
            totals["passed"] += audit.passed
            totals["degenerate"] += audit.degenerate
            totals["unit_modulus_skipped"] += audit.unit_modulus_skipped
            violations.extend(audit.violations)
        else:
            totals["control_specs"] += 1
            totals["control_unclassified"] += audit.unclassified
            detections.extend(audit.control_detections)

    logger.info("n=%d: %d specs, %d families, %d violations",
                n, totals["specs_checked"], totals["families_checked"], len(violations))
    return NSweep(n, violations=tuple(violations), control_detections=tuple(detections), **totals)


def theorem2_sweep(
    n_max: int,
    *,
    n_min: int = 4,
    include_control: bool = False,
    workers: int = 1,
    tol: Optional[float] = None,
    on_progress: Optional[Callable[[NSweep], None]] = None,
) -> SweepReport:
    """
    Sweep every n in [n_min, n_max].

    Args:
        n_max: largest polygon size
        n_min: smallest polygon size (>= 4)
        include_control: also audit specs that fail the hypotheses
        workers: process count; one task per n
        tol: uniform tolerance override
        on_progress: called with each finished NSweep, in completion order
    """
    if n_min < 4 or n_max < n_min:
        raise SpecError(f"need 4 <= n_min <= n_max, got {n_min}, {n_max}")
    tolerances = DEFAULT_TOLERANCES if tol is None else Tolerances.uniform(tol)
    ns = range(n_min, n_max + 1)

    results: list[NSweep] = []
    if workers <= 1:
        for n in ns:
            row = sweep_n(n, include_control, tolerances)
            results.append(row)
            if on_progress:
                on_progress(row)
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futures = [ex.submit(sweep_n, n, include_control, tolerances) for n in ns]
            for fut in as_completed(futures):
                row = fut.result()
                results.append(row)
                if on_progress:
                    on_progress(row)

    results.sort(key=lambda row: row.n)
    return SweepReport(n_min, n_max, include_control, tuple(results))
