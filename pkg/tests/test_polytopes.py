import math

import numpy as np
import pytest

from src.analyzer.polytopes import (
    build_q,
    cyclic_isometry,
    distance_profile,
    gram_report,
    interleaved_example,
    john_condition,
    john_position,
    orbit_polytope,
    recover_frequencies,
    verify_polytope,
)
from src.exceptions import GeometryError, SpecError
from src.models import PolytopeVertices
from tests.conftest import random_orthogonal

GRID = [
    (5, 2, (1,)),
    (6, 2, (1,)),
    (7, 4, (1, 2)),
    (9, 4, (2, 4)),
    (8, 3, (1,)),
    (10, 5, (2, 3)),
    (12, 6, (1, 2, 5)),
]


def _moved(polytope, rng, scale=3.7):
    rotation = random_orthogonal(rng, polytope.d)
    shift = rng.normal(size=polytope.d)
    return PolytopeVertices(scale * polytope.vertices @ rotation.T + shift)


class TestSymmetricPolytopes:
    @pytest.mark.parametrize("n,d,ks", GRID)
    def test_q_is_on_the_unit_sphere(self, n, d, ks):
        q = build_q(n, d, ks)
        assert np.allclose(np.linalg.norm(q.vertices, axis=1), 1.0, atol=1e-14)
        assert np.allclose(q.centroid, 0.0, atol=1e-14)

    @pytest.mark.parametrize("n,d,ks", GRID)
    def test_isotropic_q_passes_every_check(self, n, d, ks):
        q = build_q(n, d, ks, isotropic=bool(d % 2))
        result = verify_polytope(q)
        assert result.profile.invariant
        assert result.gram.is_circulant and result.gram.on_sphere
        assert result.gram.near_one == d
        assert result.gram.near_zero == n - d
        assert result.gram.trace == pytest.approx(d, abs=1e-9)
        assert result.john.holds
        assert result.recovery.frequencies.ks == ks
        assert result.passed

    @pytest.mark.parametrize("n,d,ks", GRID)
    def test_isometry(self, n, d, ks):
        q = build_q(n, d, ks)
        iso = cyclic_isometry(q)
        assert iso is not None
        assert iso.reflection_count == d % 2
        assert np.allclose(iso.apply(q.vertices), np.roll(q.vertices, -1, axis=0), atol=1e-9)
        assert np.allclose(np.linalg.matrix_power(iso.rotation, n), np.eye(d), atol=1e-9)
        expected = sorted(2 * math.pi * k / n for k in ks)
        assert np.allclose(sorted(iso.block_angles), expected, atol=1e-9)

    @pytest.mark.parametrize("n,d,ks", GRID)
    def test_recovery_after_similarity(self, n, d, ks, rng):
        moved = _moved(build_q(n, d, ks), rng)
        recovery = recover_frequencies(moved)
        assert recovery.frequencies.ks == ks
        assert recovery.residual < 1e-9
        assert distance_profile(moved).invariant

    @pytest.mark.parametrize("n,d,ks", GRID)
    def test_unit_frequencies(self, n, d, ks):
        q = build_q(n, d, ks, isotropic=bool(d % 2))
        expected = set(ks) | {n - k for k in ks}
        if d % 2:
            expected.add(n // 2)
        report = gram_report(q)
        assert set(report.unit_frequencies) == expected
        assert report.mu0_is_zero


class TestOddDimension:
    def test_printed_q_gram_spectrum(self):
        report = gram_report(build_q(8, 3, (1,)))
        assert np.allclose(np.sort(report.eigenvalues), [0, 0, 0, 0, 0, 0.75, 0.75, 1.5], atol=1e-12)
        assert report.is_circulant
        assert report.near_one == 0
        assert not john_condition(build_q(8, 3, (1,))).holds

    def test_john_position_is_the_isotropic_q(self):
        whitened = john_position(build_q(8, 3, (1,)))
        assert np.allclose(whitened.vertices, build_q(8, 3, (1,), isotropic=True).vertices, atol=1e-12)
        assert john_condition(whitened).holds

    def test_printed_q_fails_until_normalized(self):
        q = build_q(10, 5, (2, 3))
        assert not verify_polytope(q).passed
        assert verify_polytope(q, normalize=True).passed

    def test_both_variants_recovered(self):
        recovery = recover_frequencies(build_q(8, 3, (1,), isotropic=True))
        assert recovery.variant == "isotropic"
        assert set(recovery.residuals) == {"canonical", "isotropic"}
        assert recovery.residual < 1e-12

    def test_needs_even_n(self):
        with pytest.raises(SpecError):
            build_q(9, 3, (2,))


class TestNegativeCases:
    def test_pentagon_distances(self):
        profile = distance_profile(build_q(5, 2, (1,)))
        assert profile.means == pytest.approx((1.1755705045849463, 1.902113032590307), abs=1e-12)
        assert profile.invariant

    def test_perturbed_vertex(self):
        x = build_q(7, 4, (1, 2)).vertices.copy()
        x[3] += [0.01, 0, 0, 0]
        polytope = PolytopeVertices(x)
        assert not distance_profile(polytope).invariant
        assert cyclic_isometry(polytope) is None
        assert recover_frequencies(polytope) is None
        assert not verify_polytope(polytope).passed

    def test_random_inscribed_polytope(self, rng):
        x = rng.normal(size=(9, 3))
        polytope = PolytopeVertices(x / np.linalg.norm(x, axis=1, keepdims=True))
        assert not verify_polytope(polytope).passed
        assert cyclic_isometry(polytope) is None

    def test_translation_breaks_john_only(self):
        q = build_q(5, 2, (1,))
        moved = PolytopeVertices(q.vertices + [0.5, -0.25])
        assert distance_profile(moved).invariant
        assert not john_condition(moved).holds
        assert john_condition(q).holds
        assert recover_frequencies(moved).residual < 1e-9

    def test_unequal_amplitudes(self):
        polytope = orbit_polytope(7, (1, 2), [1.0, 0.5])
        assert distance_profile(polytope).invariant
        assert recover_frequencies(polytope).residual > 1e-3
        assert gram_report(polytope).near_one == 0
        assert recover_frequencies(john_position(polytope)).residual < 1e-9

    def test_collinear_points(self):
        x = np.zeros((6, 2))
        x[:, 0] = np.arange(6)
        with pytest.raises(GeometryError):
            PolytopeVertices(x)


class TestInterleaved:
    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_frequencies(self, k):
        recovery = recover_frequencies(interleaved_example(k))
        assert recovery.frequencies.ks == (1, k - 1)
        assert recovery.residual < 1e-9
        assert verify_polytope(interleaved_example(k)).passed

    def test_rejects_small_k(self):
        with pytest.raises(SpecError):
            interleaved_example(2)


class TestConstruction:
    def test_frequency_count(self):
        with pytest.raises(SpecError):
            build_q(7, 4, (1,))

    def test_reflection_needs_even_n(self):
        with pytest.raises(SpecError):
            orbit_polytope(7, (1,), reflection_amplitude=1.0)

    def test_amplitude_count(self):
        with pytest.raises(SpecError):
            orbit_polytope(7, (1, 2), [1.0])
