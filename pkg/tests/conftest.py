"""Shared fixtures: the two 30-gon / 15-gon examples, a pentagon, a seeded rng."""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.analyzer.polygons import make_combination
from src.analyzer.recurrence import regular_ratio
from src.cyclotomic import fourier_vector
from src.models import RecurrenceSpec

GOLDEN = (1 + math.sqrt(5)) / 2

# (eps^7 - eps^2) / (eps^6 - 1) for n = 30, i.e. e^{i pi/10} sin(pi/6) / sin(pi/5)
THIRTY_W = complex(0.8090169943749474, 0.2628655560595668)
THIRTY_ABS = 0.8506508083520399


@pytest.fixture
def thirty_spec() -> RecurrenceSpec:
    return RecurrenceSpec(30, 7, 2, 6)


@pytest.fixture
def thirty_w(thirty_spec) -> complex:
    return regular_ratio(thirty_spec, 1)


@pytest.fixture
def thirty_polygon():
    return make_combination(30, {1: 0.8, 11: 0.2})


@pytest.fixture
def fifteen_spec() -> RecurrenceSpec:
    return RecurrenceSpec(15, 5, 3, 2)


@pytest.fixture
def fifteen_polygon():
    return make_combination(15, {1: 0.4, 6: 0.7, 11: 0.2})


@pytest.fixture
def pentagon():
    return fourier_vector(5, 1)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


def random_orthogonal(rng: np.random.Generator, d: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(d, d)))
    return q * np.sign(np.diag(r))
