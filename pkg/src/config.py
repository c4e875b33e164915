"""
Tolerance and runtime configuration.

Values come from, in order of precedence: the ``--tol`` command-line flag,
the ``CYCLOGON_TOL`` environment variable (a ``.env`` file is honoured when
python-dotenv is installed), and the built-in defaults below.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, fields

logger = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_TOL",
    "ENV_TOL",
    "ENV_WORKERS",
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "load_tolerances",
    "default_workers",
]

DEFAULT_TOL = 1e-9
ENV_TOL = "CYCLOGON_TOL"
ENV_WORKERS = "CYCLOGON_WORKERS"


@dataclass(frozen=True)
class Tolerances:
    """Named tolerances used across the analyzers."""
    zero: float = DEFAULT_TOL          # |mu_t| <= zero * (1 + sum |c_j|)
    grouping: float = DEFAULT_TOL      # |w_t - w_s| <= grouping * (1 + |w_t|)
    unit_modulus: float = DEFAULT_TOL  # ||w| - 1| <= unit_modulus
    real: float = DEFAULT_TOL          # |Im w| <= real
    support: float = DEFAULT_TOL       # |z_t| > support * max |z|
    distinct: float = DEFAULT_TOL      # min distance > distinct * diameter
    polytope: float = DEFAULT_TOL      # absolute, after unit normalization

    @classmethod
    def uniform(cls, tol: float) -> "Tolerances":
        if not tol > 0:
            raise ValueError(f"tolerance must be positive, got {tol!r}")
        return cls(**{f.name: float(tol) for f in fields(cls)})

    @property
    def headline(self) -> float:
        """Single representative value (all fields agree unless built by hand)."""
        return max(getattr(self, f.name) for f in fields(self))

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_TOLERANCES = Tolerances()


def load_tolerances(override: float | None = None) -> Tolerances:
    """Resolve tolerances: explicit override wins over the environment."""
    if override is not None:
        return Tolerances.uniform(override)

    raw = os.getenv(ENV_TOL)
    if not raw:
        return DEFAULT_TOLERANCES
    try:
        return Tolerances.uniform(float(raw))
    except ValueError:
        logger.warning("ignoring %s=%r (expected a positive float)", ENV_TOL, raw)
        return DEFAULT_TOLERANCES


def default_workers() -> int:
    raw = os.getenv(ENV_WORKERS)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning("ignoring %s=%r (expected an integer)", ENV_WORKERS, raw)
        return 1
