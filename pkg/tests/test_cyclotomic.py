import math

import numpy as np
import pytest

from src.cyclotomic import (
    circulant_spectrum,
    dft,
    fourier_matrix,
    fourier_vector,
    idft,
    root_power,
    root_powers,
)
from src.exceptions import SpecError
from src.models import ComplexPolygon, RecurrenceSpec


class TestRootPower:
    def test_quarter_and_half_turns_are_exact(self):
        assert root_power(4, 1) == 1j
        assert root_power(6, 3) == -1
        assert root_power(8, 6) == -1j
        assert root_power(7, 0) == 1

    def test_thirtieth_root(self):
        z = root_power(30, 1)
        assert z.real == pytest.approx(0.9781476007338057, abs=1e-15)
        assert z.imag == pytest.approx(0.20791169081775931, abs=1e-15)

    def test_index_reduced_before_evaluation(self):
        for n in (5, 12, 30, 97):
            for j in (-3, 0, 1, 7, 40):
                assert root_power(n, j + n) == root_power(n, j)
                assert root_power(n, j - 5 * n) == root_power(n, j)

    def test_unit_modulus(self):
        for j in range(50):
            assert abs(root_power(50, j)) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_zero(self):
        with pytest.raises(SpecError):
            root_power(0, 1)

    def test_vectorized_matches_scalar(self):
        exps = np.arange(-20, 40)
        expected = [root_power(12, int(j)) for j in exps]
        assert np.allclose(root_powers(12, exps), np.array(expected), rtol=0, atol=1e-15)


class TestFourierVector:
    def test_square(self):
        v = fourier_vector(4, 1)
        assert np.array_equal(v.vertices, np.array([1, 1j, -1, -1j]))

    def test_zero_frequency_is_constant(self):
        assert np.array_equal(fourier_vector(9, 0).vertices, np.ones(9))

    def test_pentagram(self):
        v = fourier_vector(5, 2)
        expected = [complex(math.cos(4 * math.pi * j / 5), math.sin(4 * math.pi * j / 5)) for j in range(5)]
        assert np.allclose(v.vertices, expected, atol=1e-15)
        assert v.is_pairwise_distinct()

    def test_distinct_iff_coprime(self):
        for n in range(4, 65):
            for t in range(n):
                assert fourier_vector(n, t).is_pairwise_distinct() == (math.gcd(t, n) == 1), (n, t)

    def test_rejects_small_n(self):
        with pytest.raises(SpecError):
            fourier_vector(3, 1)


class TestDft:
    def test_constant(self):
        z = dft(ComplexPolygon([1, 1, 1, 1]))
        assert np.allclose(z, [1, 0, 0, 0], atol=1e-15)

    def test_thirty_gon_coefficients(self, thirty_polygon):
        z = dft(thirty_polygon)
        expected = np.zeros(30, dtype=complex)
        expected[1], expected[11] = 0.8, 0.2
        assert np.allclose(z, expected, atol=1e-12)

    @pytest.mark.parametrize("n", [4, 17, 256, 1024])
    def test_roundtrip(self, n, rng):
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        back = dft(idft(z))
        assert np.abs(back - z).max() <= 1e-12 * np.abs(z).max()
        polygon = ComplexPolygon(rng.normal(size=n) + 1j * rng.normal(size=n))
        again = idft(dft(polygon)).vertices
        assert np.abs(again - polygon.vertices).max() <= 1e-12 * np.abs(polygon.vertices).max()

    def test_idft_single_mode_is_regular(self):
        z = np.zeros(7, dtype=complex)
        z[1] = 1
        assert np.allclose(idft(z).vertices, fourier_vector(7, 1).vertices)

    def test_idft_constant(self):
        z = np.zeros(6, dtype=complex)
        z[0] = 2 - 1j
        assert np.allclose(idft(z).vertices, 2 - 1j)

    def test_fifteen_gon_polygon_distinct(self):
        z = np.zeros(15, dtype=complex)
        z[1], z[6], z[11] = 0.4, 0.7, 0.2
        assert idft(z).is_pairwise_distinct()

    def test_fourier_matrix_is_read_only(self):
        with pytest.raises(ValueError):
            fourier_matrix(5)[0, 0] = 2

    def test_fourier_matrix_cache_is_bounded(self):
        for n in range(4, 40):
            fourier_matrix(n)
        info = fourier_matrix.cache_info()
        assert info.maxsize == 16
        assert info.currsize <= 16


class TestCirculantSpectrum:
    def test_identity(self):
        assert np.allclose(circulant_spectrum([1, 0, 0, 0, 0]).values, 1)

    def test_shift(self):
        spectrum = circulant_spectrum([0, 1, 0, 0, 0, 0, 0, 0])
        expected = [root_power(8, t) for t in range(8)]
        assert np.allclose(spectrum.values, expected, atol=1e-15)

    def test_first_value_is_row_sum(self, rng):
        for n in (4, 9, 30):
            row = rng.normal(size=n) + 1j * rng.normal(size=n)
            assert abs(circulant_spectrum(row)[0] - row.sum()) <= 1e-12 * np.abs(row).sum()

    def test_recurrence_row_has_zero_first_eigenvalue(self, thirty_w):
        row = RecurrenceSpec(30, 7, 2, 6).first_row(thirty_w)
        assert abs(circulant_spectrum(row)[0]) < 1e-12
