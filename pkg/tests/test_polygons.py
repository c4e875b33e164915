import math

import numpy as np
import pytest

from src.analyzer.polygons import (
    affine_cycle_map,
    classify_polygon,
    counterexample_polygon,
    coxeter_lambda,
    make_combination,
    recover_ratio,
    remark4_polygon,
    residue_translation,
)
from src.analyzer.recurrence import recurrence_residual
from src.cyclotomic import fourier_vector, root_power
from src.exceptions import GeometryError, SpecError
from src.models import ComplexPolygon, PolygonLabel, RecurrenceSpec, Remark5Branch, Remark5Witness
from tests.conftest import THIRTY_ABS, THIRTY_W, GOLDEN


def _affine_image(polygon, a, b, c):
    v = polygon.vertices
    return ComplexPolygon(a * v + b * np.conj(v) + c)


class TestExamplePolygons:
    def test_thirty_gon(self, thirty_polygon):
        assert thirty_polygon.is_pairwise_distinct()
        assert recurrence_residual(thirty_polygon, 7, 2, 6, THIRTY_W) < 1e-9
        assert str(classify_polygon(thirty_polygon)) == "Other({1, 11})"

    def test_thirty_gon_ratio_recovered(self, thirty_polygon):
        w = recover_ratio(thirty_polygon, 7, 2, 6)
        assert abs(w - THIRTY_W) < 1e-9
        assert abs(w) == pytest.approx(THIRTY_ABS, abs=1e-5)

    def test_fifteen_gon(self, fifteen_polygon):
        w = root_power(15, 3)
        assert recurrence_residual(fifteen_polygon, 5, 3, 2, w) < 1e-9
        assert abs(recover_ratio(fifteen_polygon, 5, 3, 2) - w) < 1e-9
        assert classify_polygon(fifteen_polygon).support == (1, 6, 11)

    def test_counterexample_construction(self, thirty_spec, thirty_polygon):
        witness = Remark5Witness(1, 11, Remark5Branch.CASE_I, exchange_closed=True)
        polygon = counterexample_polygon(thirty_spec, witness, 0.8)
        assert np.allclose(polygon.vertices, thirty_polygon.vertices, atol=1e-15)

    def test_counterexample_rejects_non_witness(self, thirty_spec):
        with pytest.raises(SpecError):
            counterexample_polygon(thirty_spec, Remark5Witness(1, 7, Remark5Branch.CASE_I), 0.5)


class TestClassifyPolygon:
    def test_regular_star(self):
        cls = classify_polygon(make_combination(8, {3: 1}))
        assert cls.label is PolygonLabel.REGULAR
        assert str(cls) == "Regular(3)"

    def test_affinely_regular(self):
        cls = classify_polygon(make_combination(12, {1: 2, 11: 0.5}))
        assert str(cls) == "AffinelyRegular(1)"

    def test_constant(self):
        cls = classify_polygon(make_combination(6, {0: 2 + 1j}))
        assert cls.label is PolygonLabel.CONSTANT
        assert str(cls) == "ConstantDegenerate"

    def test_regular_iff_unit(self):
        for n in range(4, 65):
            for t in range(1, n):
                cls = classify_polygon(fourier_vector(n, t))
                assert (cls.label is PolygonLabel.REGULAR) == (math.gcd(t, n) == 1), (n, t)

    def test_label_is_affine_invariant(self, pentagon):
        image = _affine_image(pentagon, 1.5 - 0.5j, 0.4 + 0.2j, 3 - 2j)
        assert str(classify_polygon(image)) == "AffinelyRegular(1)"
        image = _affine_image(make_combination(12, {5: 1, 7: 0.3}), 0.7j, -0.2, 1)
        assert str(classify_polygon(image)) == "AffinelyRegular(5)"

    @pytest.mark.parametrize("z", [1e-10, 1e-3 - 2e-3j, 1.0, 1e8j])
    def test_label_ignores_scale(self, z):
        assert str(classify_polygon(make_combination(8, {3: z}))) == "Regular(3)"
        assert str(classify_polygon(make_combination(12, {5: z, 7: 0.5 * z}))) == "AffinelyRegular(5)"

    @pytest.mark.parametrize("offset,z", [(1e6, 1e-2), (1e12, 1.0), (-3e9j, 0.5j)])
    def test_label_ignores_far_offset(self, offset, z):
        assert str(classify_polygon(make_combination(8, {0: offset, 3: z}))) == "Regular(3)"

    def test_large_constant(self):
        assert classify_polygon(make_combination(8, {0: 1e12})).label is PolygonLabel.CONSTANT

    def test_translation_only_touches_z0(self, thirty_polygon):
        moved = ComplexPolygon(thirty_polygon.vertices + (4 - 7j))
        assert classify_polygon(moved).support == (1, 11)


class TestRecoverRatio:
    def test_pentagon_golden_ratio(self, pentagon):
        assert abs(recover_ratio(pentagon, 2, 4, 1) - GOLDEN) < 1e-12

    def test_pentagram_family(self):
        polygon = make_combination(5, {2: 1, 3: 0.3})
        assert abs(recover_ratio(polygon, 2, 4, 1) + 1 / GOLDEN) < 1e-12

    def test_random_polygon_has_no_ratio(self, rng):
        polygon = ComplexPolygon(rng.normal(size=8) + 1j * rng.normal(size=8))
        assert recover_ratio(polygon, 3, 1, 2) is None

    def test_coincident_vertices(self):
        with pytest.raises(GeometryError):
            recover_ratio(fourier_vector(8, 2), 3, 1, 2)

    def test_recovers_every_admissible_regular_ratio(self):
        spec = RecurrenceSpec(9, 4, 1, 2)
        for t in (1, 2, 4, 5, 7, 8):
            w = recover_ratio(fourier_vector(9, t), spec.m1, spec.m2, spec.k)
            assert recurrence_residual(fourier_vector(9, t), 4, 1, 2, w) < 1e-12


class TestCoxeterLambda:
    def test_pentagon(self, pentagon):
        assert coxeter_lambda(pentagon) == pytest.approx(GOLDEN, abs=1e-12)

    def test_hexagon(self):
        assert coxeter_lambda(fourier_vector(6, 1)) == pytest.approx(2.0, abs=1e-12)

    def test_affine_image_keeps_lambda(self, pentagon):
        image = _affine_image(pentagon, 2 + 1j, 0.5, -1)
        assert coxeter_lambda(image) == pytest.approx(GOLDEN, abs=1e-9)

    def test_non_affinely_regular(self, rng):
        polygon = ComplexPolygon(rng.normal(size=7) + 1j * rng.normal(size=7))
        assert coxeter_lambda(polygon) is None


class TestResidueTranslation:
    def test_hexagon(self):
        spec = RecurrenceSpec(6, 4, 2, 2)
        polygon, w = remark4_polygon(spec, (0, 10))
        assert abs(w - root_power(3, 1)) < 1e-12
        assert polygon.is_pairwise_distinct()
        assert recurrence_residual(polygon, 4, 2, 2, w) < 1e-12
        assert classify_polygon(polygon).label is PolygonLabel.OTHER

    def test_octagon(self):
        spec = RecurrenceSpec(8, 5, 1, 4)
        polygon, w = remark4_polygon(spec, (0, 1j, 2, -1j))
        assert abs(w - root_power(8, 1)) < 1e-12
        assert recurrence_residual(polygon, 5, 1, 4, w) < 1e-12
        assert classify_polygon(polygon).label is PolygonLabel.OTHER

    def test_zero_shifts(self):
        v = fourier_vector(6, 1)
        assert np.array_equal(residue_translation(v, 3, (0, 0, 0)).vertices, v.vertices)

    def test_shift_count(self):
        with pytest.raises(SpecError):
            residue_translation(fourier_vector(6, 1), 2, (0, 1, 2))
        with pytest.raises(SpecError):
            residue_translation(fourier_vector(6, 1), 1, (0,))

    def test_needs_shared_factor(self, thirty_spec):
        with pytest.raises(SpecError):
            remark4_polygon(thirty_spec, (0, 1))


class TestAffineCycleMap:
    def test_regular_is_rotation(self):
        cycle = affine_cycle_map(fourier_vector(7, 1))
        assert cycle.is_isometry
        assert abs(cycle.a - root_power(7, 1)) < 1e-12
        assert abs(cycle.b) < 1e-12

    def test_affinely_regular(self):
        polygon = make_combination(12, {1: 2, 11: 0.5})
        cycle = affine_cycle_map(polygon)
        assert cycle.is_invertible
        assert not cycle.is_isometry
        assert cycle.determinant == pytest.approx(1.0, abs=1e-9)
        assert np.allclose(cycle(polygon.vertices), polygon.shifted(1), atol=1e-9)

    def test_counterexample_has_no_map(self, thirty_polygon):
        assert affine_cycle_map(thirty_polygon) is None
