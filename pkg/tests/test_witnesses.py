import math

import pytest

from src.analyzer.recurrence import regular_ratio
from src.exceptions import SpecError
from src.models import CongruencePair, RecurrenceSpec, Remark5Branch
from src.number_theory.congruence import crt_solve
from src.number_theory.witnesses import (
    congruence_partner,
    congruence_system,
    remark5_witnesses,
    satisfies_branch,
)


def _valid_specs(n):
    for m1 in range(n):
        for m2 in range(n):
            if m1 == m2:
                continue
            for k in range(1, n):
                spec = RecurrenceSpec(n, m1, m2, k)
                if spec.gcd_condition:
                    yield spec


class TestRemark5Witnesses:
    def test_thirty_gon_example(self, thirty_spec):
        found = {(w.t, w.t_prime, w.branch) for w in remark5_witnesses(thirty_spec)}
        assert (1, 11, Remark5Branch.CASE_I) in found

    def test_example_congruences_by_hand(self, thirty_spec):
        # 1*6 = 11*6, 1*7 + 15 = 11*2, 1*2 + 15 = 11*7 (mod 30)
        assert (1 * 6 - 11 * 6) % 30 == 0
        assert (7 + 15 - 22) % 30 == 0
        assert (2 + 15 - 77) % 30 == 0
        assert satisfies_branch(thirty_spec, 1, 11, Remark5Branch.CASE_I)

    def test_hexagon_has_none(self):
        assert remark5_witnesses(RecurrenceSpec(6, 2, 1, 1)) == []

    def test_rejects_odd_n(self):
        with pytest.raises(SpecError):
            remark5_witnesses(RecurrenceSpec(15, 5, 3, 2))

    def test_rejects_shared_factor(self):
        with pytest.raises(SpecError):
            remark5_witnesses(RecurrenceSpec(8, 4, 2, 2))

    def test_odd_n_satisfies_nothing(self):
        assert not satisfies_branch(RecurrenceSpec(9, 2, 1, 3), 1, 4, Remark5Branch.CASE_I)

    def test_witness_invariants(self):
        for n in range(4, 17, 2):
            for spec in _valid_specs(n):
                for w in remark5_witnesses(spec):
                    assert math.gcd(w.t, n) == 1
                    assert math.gcd(w.t, n) == math.gcd(w.t_prime, n)
                    assert (w.t_prime - w.t) % n and (w.t_prime + w.t) % n
                    assert satisfies_branch(spec, w.t, w.t_prime, w.branch)
                    if w.exchange_closed:
                        assert w.t < w.t_prime
                        assert satisfies_branch(spec, w.t_prime, w.t, w.branch)

    def test_witness_pairs_share_their_ratio(self):
        for n in range(4, 15, 2):
            for spec in _valid_specs(n):
                for w in remark5_witnesses(spec):
                    a, b = regular_ratio(spec, w.t), regular_ratio(spec, w.t_prime)
                    assert abs(a - b) <= 1e-9 * (1 + abs(a)), (str(spec), w)

    def test_both_branches_close_under_exchange(self):
        for n in range(4, 15, 2):
            for spec in _valid_specs(n):
                for w in remark5_witnesses(spec):
                    assert w.exchange_closed, (str(spec), w)


class TestCongruencePartner:
    def test_example_system(self, thirty_spec):
        system = congruence_system(thirty_spec, 1, Remark5Branch.CASE_I)
        assert system == CongruencePair(1, 5, -1, 6)
        assert crt_solve(system) == (11, 30)

    def test_example_partner(self, thirty_spec):
        assert 11 in congruence_partner(thirty_spec, 1, Remark5Branch.CASE_I)

    def test_non_unit_t_has_no_partner(self, thirty_spec):
        assert congruence_partner(thirty_spec, 5, Remark5Branch.CASE_I) == []

    def test_crt_construction_matches_enumeration(self):
        for n in range(4, 13, 2):
            for spec in _valid_specs(n):
                enumerated = set()
                for w in remark5_witnesses(spec):
                    enumerated.add((w.t, w.t_prime, w.branch))
                    enumerated.add((w.t_prime, w.t, w.branch))
                constructed = {
                    (t, p, branch)
                    for branch in Remark5Branch
                    for t in range(1, n) if math.gcd(t, n) == 1
                    for p in congruence_partner(spec, t, branch)
                }
                assert constructed == enumerated, str(spec)
