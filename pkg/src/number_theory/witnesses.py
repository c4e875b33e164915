"""
Counterexample witnesses for even n.

For even n and gcd(n, k, m1 - m2) = 1, a polygon that satisfies the
recurrence but is not affinely regular exists exactly when some unit t and
some t' != +-t (mod n) give the same ratio w_t = w_t'. With h = n/2 that
happens in one of two ways:

    CaseI:   t'k = tk,    t'm2 = tm1 + h,        t'm1 = tm2 + h
    CaseII:  t'k = -tk,   t'm1 = tm1 - tk + h,   t'm2 = tm2 - tk + h

all mod n. The CaseII system here carries -tk. With +tk the two ratios
differ by the factor eps^{2tk}.

remark5_witnesses enumerates all pairs by brute force; congruence_partner
builds the same partners from the CRT system each branch implies, so each
route can be checked against the other.
"""
from __future__ import annotations

import logging
import math

import numpy as np

from ..exceptions import SpecError
from ..models import CongruencePair, RecurrenceSpec, Remark5Branch, Remark5Witness
from .congruence import crt_solve

logger = logging.getLogger(__name__)

__all__ = [
    "satisfies_branch",
    "remark5_witnesses",
    "congruence_system",
    "congruence_partner",
]


def _branch_mask(spec: RecurrenceSpec, t, tp, branch: Remark5Branch):
    """Elementwise test of a branch's three congruences (ints or int arrays)."""
    n, h = spec.n, spec.n // 2
    m1, m2, k = spec.m1, spec.m2, spec.k
    if branch is Remark5Branch.CASE_I:
        return (((t - tp) * k) % n == 0) \
            & ((t * m1 + h - tp * m2) % n == 0) \
            & ((t * m2 + h - tp * m1) % n == 0)
    return (((t + tp) * k) % n == 0) \
        & ((t * m1 - t * k + h - tp * m1) % n == 0) \
        & ((t * m2 - t * k + h - tp * m2) % n == 0)


def satisfies_branch(spec: RecurrenceSpec, t: int, t_prime: int, branch: Remark5Branch) -> bool:
    if spec.n % 2:
        return False
    return bool(_branch_mask(spec, t, t_prime, branch))


def _check_preconditions(spec: RecurrenceSpec) -> None:
    if spec.n % 2:
        raise SpecError(f"counterexample witnesses need n even, got n={spec.n}")
    if not spec.gcd_condition:
        raise SpecError(f"gcd(n, k, m1 - m2) must be 1 for {spec}")


def remark5_witnesses(spec: RecurrenceSpec) -> list[Remark5Witness]:
    """
    All witnesses (t, t') with gcd(n, t) = 1 and t' != +-t, by exhaustive search.

    A pair whose exchange (t', t) satisfies the same branch is reported once,
    with t < t' and exchange_closed set; otherwise every orientation found is
    kept as its own entry.
    """
    _check_preconditions(spec)
    n = spec.n
    values = np.arange(1, n, dtype=np.int64)
    t = values[np.gcd(values, n) == 1][:, None]
    tp = values[None, :]
    admissible = ((tp - t) % n != 0) & ((tp + t) % n != 0)

    witnesses: list[Remark5Witness] = []
    for branch in Remark5Branch:
        rows, cols = np.nonzero(_branch_mask(spec, t, tp, branch) & admissible)
        found = {(int(t[r, 0]), int(tp[0, c])) for r, c in zip(rows, cols)}
        for a, b in sorted(found):
            closed = (b, a) in found
            if closed and a > b:
                continue
            witnesses.append(Remark5Witness(a, b, branch, exchange_closed=closed))

    witnesses.sort(key=lambda x: (x.t, x.t_prime, x.branch))
    logger.debug("%s: %d witnesses", spec, len(witnesses))
    return witnesses


def congruence_system(spec: RecurrenceSpec, t: int, branch: Remark5Branch) -> CongruencePair:
    """
    The two-modulus system a partner t' of t must satisfy.

    CaseI:  t' = t (mod n/gcd(n,k)),  t' = -t (mod n/gcd(n,m))
    CaseII: t' = -t (mod n/gcd(n,k)), t' = t (mod n/gcd(n,m))
    """
    mod_k, mod_m = spec.n // spec.gcd_k, spec.n // spec.gcd_m
    if branch is Remark5Branch.CASE_I:
        return CongruencePair(t, mod_k, -t, mod_m)
    return CongruencePair(-t, mod_k, t, mod_m)


def congruence_partner(spec: RecurrenceSpec, t: int, branch: Remark5Branch) -> list[int]:
    """Partners t' of t in [1, n) for the branch, built via the CRT."""
    _check_preconditions(spec)
    n = spec.n
    if math.gcd(n, t) != 1:
        return []
    solution = crt_solve(congruence_system(spec, t, branch))
    if solution is None:
        return []
    residue, lcm = solution
    partners = []
    for candidate in range(residue, n, lcm):
        if candidate == 0 or (candidate - t) % n == 0 or (candidate + t) % n == 0:
            continue
        if satisfies_branch(spec, t, candidate, branch):
            partners.append(candidate)
    return partners
