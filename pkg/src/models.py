"""
Data models for cyclogon.

Polygons live in the complex plane, polytopes in R^d. Every model is an
immutable value; array-backed models hold read-only numpy arrays.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Optional

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:  # pragma: no cover - Python 3.10 compatibility
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

import numpy as np

from .config import DEFAULT_TOL
from .exceptions import GeometryError, SpecError


# max vertex residual of a Procrustes fit on unit-radius vertices
SIMILARITY_TOL = 1e-8


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
#  Polygons and spectra
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

@dataclass(frozen=True, eq=False)
class ComplexPolygon:
    """An ordered n-gon p_0, ..., p_{n-1} in C, indices taken mod n."""
    vertices: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.vertices, dtype=complex).reshape(-1)
        if v.size < 4:
            raise SpecError(f"an n-gon needs n >= 4 vertices, got {v.size}")
        object.__setattr__(self, "vertices", _frozen(v))

    @property
    def n(self) -> int:
        return int(self.vertices.size)

    def __len__(self) -> int:
        return self.n

    def shifted(self, s: int) -> np.ndarray:
        """Array whose entry j is p_{j+s}."""
        return np.roll(self.vertices, -(s % self.n))

    def _pairwise(self) -> np.ndarray:
        v = self.vertices
        return np.abs(v[:, None] - v[None, :])

    @property
    def diameter(self) -> float:
        return float(self._pairwise().max())

    @property
    def min_distance(self) -> float:
        dist = self._pairwise()
        return float(dist[~np.eye(self.n, dtype=bool)].min())

    def is_pairwise_distinct(self, tol: float = DEFAULT_TOL) -> bool:
        """Queryable, not enforced: constructions may pass through degenerate n-gons."""
        diameter = self.diameter
        return diameter > 0 and self.min_distance > tol * diameter


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues mu_0, ..., mu_{n-1} of a circulant matrix."""
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(np.array(self.values, dtype=complex).reshape(-1)))

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __getitem__(self, t: int) -> complex:
        return complex(self.values[t % self.n])

    def zero_set(self, threshold: float) -> tuple[int, ...]:
        return tuple(int(t) for t in np.flatnonzero(np.abs(self.values) <= threshold))


# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
#  Number theory
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

@dataclass(frozen=True)
class CongruencePair:
    """The system x = residue_a (mod modulus_a), x = residue_b (mod modulus_b)."""
    residue_a: int
    modulus_a: int
    residue_b: int
    modulus_b: int

    def __post_init__(self) -> None:
        if self.modulus_a < 1 or self.modulus_b < 1:
            raise SpecError(f"moduli must be >= 1, got {self.modulus_a}, {self.modulus_b}")
        object.__setattr__(self, "residue_a", self.residue_a % self.modulus_a)
        object.__setattr__(self, "residue_b", self.residue_b % self.modulus_b)

    @property
    def lcm(self) -> int:
        return math.lcm(self.modulus_a, self.modulus_b)


class Remark5Branch(StrEnum):
    CASE_I = "CaseI"    # t'k = tk
    CASE_II = "CaseII"  # t'k = -tk


@dataclass(frozen=True)
class Remark5Witness:
    """A pair (t, t') producing a non-affinely-regular family for an even n."""
    t: int
    t_prime: int
    branch: Remark5Branch
    # True when (t', t) satisfies the same branch and was folded into this entry
    exchange_closed: bool = False

    def __post_init__(self) -> None:
        if self.t == self.t_prime:
            raise SpecError("a witness needs t != t'")


@dataclass(frozen=True)
class RatioCollision:
    """d_k / d_l = d_k' / d_l' with (k, l) != (k', l'): a counterexample to ratio uniqueness."""
    n: int
    k: int
    l: int
    k_prime: int
    l_prime: int
    ratio: float

    def __post_init__(self) -> None:
        if (self.k, self.l) == (self.k_prime, self.l_prime):
            raise SpecError("a collision needs two distinct index pairs")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.k, self.l, self.k_prime, self.l_prime


# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
#  Recurrences
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

@dataclass(frozen=True)
class RecurrenceSpec:
    """
    The recurrence p_{j+m1} - p_{j+m2} = w (p_{j+k} - p_j) on n-gons.

    Indices are reduced mod n on construction. k and m1 - m2 must not be
    divisible by n; m1 or m2 alone may be.
    """
    n: int
    m1: int
    m2: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 4:
            raise SpecError(f"n must be >= 4, got {self.n}")
        for name in ("m1", "m2", "k"):
            object.__setattr__(self, name, getattr(self, name) % self.n)
        if self.k == 0:
            raise SpecError(f"k must not be divisible by n={self.n}")
        if self.m1 == self.m2:
            raise SpecError(f"m1 - m2 must not be divisible by n={self.n}")

    @property
    def m(self) -> int:
        return (self.m1 - self.m2) % self.n

    @property
    def gcd_k(self) -> int:
        return math.gcd(self.n, self.k)

    @property
    def gcd_m(self) -> int:
        return math.gcd(self.n, self.m)

    @property
    def gcd_condition(self) -> bool:
        return math.gcd(self.n, self.k, self.m) == 1

    @property
    def evenness_bound(self) -> bool:
        return self.n % 2 == 1 or self.n > 2 * self.gcd_k * self.gcd_m

    @property
    def hypotheses_hold(self) -> bool:
        return self.gcd_condition and self.evenness_bound

    @property
    def congruence(self) -> bool:
        """m1 + m2 = k (mod n)."""
        return (self.m1 + self.m2 - self.k) % self.n == 0

    def first_row(self, w: complex) -> np.ndarray:
        """First row of the circulant coefficient matrix; coinciding indices accumulate."""
        row = np.zeros(self.n, dtype=complex)
        row[0] += w
        row[self.k] -= w
        row[self.m1] += 1
        row[self.m2] -= 1
        return row

    def __str__(self) -> str:
        return f"({self.n},{self.m1},{self.m2},{self.k})"


@dataclass(frozen=True)
class RatioFamily:
    """An admissible ratio w with its eigenvalue zero set (0 always included)."""
    w: complex
    zero_set: tuple[int, ...]
    is_unit_modulus: bool
    generators: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if 0 not in self.zero_set:
            raise SpecError("a ratio family's zero set always contains 0")

    @property
    def extras(self) -> tuple[int, ...]:
        return tuple(t for t in self.zero_set if t != 0)

    def is_real(self, tol: float = DEFAULT_TOL) -> bool:
        return abs(self.w.imag) <= tol


class CaseLabel(StrEnum):
    A = "A"  # mu_t = 0 only for t = 0
    B = "B"  # one further zero, w not real
    C = "C"  # zeros {t, n - t}, w real
    D = "D"  # zeros {t, t'}, t' != +-t, w not real
    E = "E"  # zeros {+-t, +-t'}, w real


class VerdictKind(StrEnum):
    DEGENERATE = "Degenerate"
    REGULAR = "Regular"
    AFFINELY_REGULAR = "AffinelyRegular"
    COUNTEREXAMPLE = "CounterexampleFamily"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    t: Optional[int] = None
    t_prime: Optional[int] = None

    def __str__(self) -> str:
        args = [str(x) for x in (self.t, self.t_prime) if x is not None]
        return f"{self.kind}({','.join(args)})" if args else str(self.kind)


@dataclass(frozen=True)
class HypothesisFlags:
    gcd_condition: bool
    evenness_bound: bool

    @property
    def hold(self) -> bool:
        return self.gcd_condition and self.evenness_bound


@dataclass(frozen=True)
class CaseReport:
    """Terminal classification of one (spec, w) pair."""
    spec: RecurrenceSpec
    w: complex
    case_label: CaseLabel
    zero_set: tuple[int, ...]
    hypothesis_flags: HypothesisFlags
    verdict: Verdict
    congruence_check: bool


# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
#  Polygon classification
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

class PolygonLabel(StrEnum):
    REGULAR = "Regular"
    AFFINELY_REGULAR = "AffinelyRegular"
    CONSTANT = "ConstantDegenerate"
    OTHER = "Other"


@dataclass(frozen=True)
class PolygonClass:
    label: PolygonLabel
    support: tuple[int, ...]
    t: Optional[int] = None

    def __str__(self) -> str:
        if self.label is PolygonLabel.OTHER:
            return f"Other({{{', '.join(map(str, self.support))}}})"
        if self.t is not None:
            return f"{self.label}({self.t})"
        return str(self.label)


@dataclass(frozen=True)
class AffineCycleMap:
    """The real-affine map z -> a z + b conj(z) + c sending p_j to p_{j+1}."""
    a: complex
    b: complex
    c: complex
    residual: float

    @property
    def determinant(self) -> float:
        return abs(self.a) ** 2 - abs(self.b) ** 2

    @property
    def is_invertible(self) -> bool:
        return abs(self.determinant) > DEFAULT_TOL

    @property
    def is_isometry(self) -> bool:
        orientation_preserving = abs(self.b) <= 1e-7 and abs(abs(self.a) - 1) <= 1e-7
        orientation_reversing = abs(self.a) <= 1e-7 and abs(abs(self.b) - 1) <= 1e-7
        return orientation_preserving or orientation_reversing

    def __call__(self, z: complex | np.ndarray) -> complex | np.ndarray:
        return self.a * z + self.b * np.conj(z) + self.c


# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
#  Polytopes
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

@dataclass(frozen=True, eq=False)
class PolytopeVertices:
    """n points of R^d, indices mod n, whose affine hull is all of R^d."""
    vertices: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2:
            raise SpecError(f"expected an n x d vertex array, got shape {v.shape}")
        n, d = v.shape
        if d < 2:
            raise SpecError(f"dimension must be >= 2, got {d}")
        if n <= d or n < 5:
            raise SpecError(f"need n > d and n >= 5, got n={n}, d={d}")
        centered = v - v.mean(axis=0)
        scale = max(float(np.abs(centered).max()), 1.0)
        rank = np.linalg.matrix_rank(centered, tol=1e-10 * scale)
        if rank != d:
            raise GeometryError(f"affine hull has dimension {rank}, expected {d}")
        object.__setattr__(self, "vertices", _frozen(v))

    @property
    def n(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def d(self) -> int:
        return int(self.vertices.shape[1])

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    @property
    def centered(self) -> np.ndarray:
        return self.vertices - self.centroid

    @property
    def diameter(self) -> float:
        diff = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.linalg.norm(diff, axis=2).max())


@dataclass(frozen=True)
class FrequencySet:
    """0 < k_1 < ... < k_s < n/2."""
    n: int
    ks: tuple[int, ...]

    def __post_init__(self) -> None:
        ks = tuple(int(k) for k in self.ks)
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise SpecError(f"frequencies must be strictly increasing, got {ks}")
        if ks and (ks[0] <= 0 or 2 * ks[-1] >= self.n):
            raise SpecError(f"frequencies must lie in (0, n/2) for n={self.n}, got {ks}")
        object.__setattr__(self, "ks", ks)

    @property
    def s(self) -> int:
        return len(self.ks)


@dataclass(frozen=True)
class DistanceProfile:
    """Mean of |p_{j+k} - p_j| over j, and its largest deviation, for k = 1..n//2."""
    means: tuple[float, ...]
    spreads: tuple[float, ...]
    invariant: bool

    @property
    def max_spread(self) -> float:
        return max(self.spreads) if self.spreads else 0.0


@dataclass(frozen=True, eq=False)
class CyclicIsometry:
    """phi(x) = rotation @ x + translation with phi(p_j) = p_{j+1}."""
    rotation: np.ndarray
    translation: np.ndarray
    block_angles: tuple[float, ...]
    reflection_count: int
    residual: float

    @property
    def has_reflection_block(self) -> bool:
        return self.reflection_count == 1

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points) @ self.rotation.T + self.translation


@dataclass(frozen=True, eq=False)
class GramReport:
    gram: np.ndarray
    circulant_deviation: float
    is_circulant: bool
    idempotency_residual: float
    trace: float
    eigenvalues: np.ndarray
    near_one: int
    near_zero: int
    spectrum: Spectrum
    mu0_is_zero: bool
    unit_frequencies: tuple[int, ...]
    on_sphere: bool

    @property
    def eigenvalue_histogram(self) -> dict[str, int]:
        n = int(self.eigenvalues.size)
        return {"near_one": self.near_one, "near_zero": self.near_zero,
                "other": n - self.near_one - self.near_zero}


@dataclass(frozen=True)
class JohnCheck:
    holds: bool
    residual_sum: float
    residual_identity: float
    weight: float


@dataclass(frozen=True)
class FrequencyRecovery:
    frequencies: FrequencySet
    residual: float
    variant: str = "canonical"   # or "isotropic" for odd d in John position
    residuals: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class PolytopeVerification:
    """The distance, isometry, Gram, John and similarity checks for one polytope."""
    profile: DistanceProfile
    isometry: Optional[CyclicIsometry]
    gram: GramReport
    john: JohnCheck
    recovery: Optional[FrequencyRecovery]
    normalized: bool = False

    @property
    def passed(self) -> bool:
        return (
            self.profile.invariant
            and self.isometry is not None
            and self.gram.is_circulant
            and self.gram.on_sphere
            and self.gram.near_one + self.gram.near_zero == self.gram.eigenvalues.size
            and self.john.holds
            and self.recovery is not None
            and self.recovery.residual <= SIMILARITY_TOL
        )
