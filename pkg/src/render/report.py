"""
JSON payloads and text tables for CLI reports.

Every JSON report carries "schema", the package version and the tolerances
in force. Complex values are written as {"re", "im", "abs", "source"} where
source is always "computed": nothing printed here is a stored constant.
Text output renders the same rows through pandas.
"""
from __future__ import annotations

import json
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from .. import __version__
from ..config import Tolerances
from ..models import (
    CaseReport,
    ComplexPolygon,
    PolygonClass,
    PolytopeVerification,
    RatioCollision,
    RatioFamily,
    Remark5Witness,
)

__all__ = [
    "SCHEMA",
    "encode_complex",
    "report_envelope",
    "dumps",
    "family_row",
    "collision_row",
    "witness_row",
    "polygon_class_row",
    "verification_payload",
    "render_text",
]

SCHEMA = "cyclogon/1"


def encode_complex(z: complex) -> dict[str, Any]:
    z = complex(z)
    return {"re": z.real, "im": z.imag, "abs": abs(z), "source": "computed"}


def _round(x: float) -> float:
    """12 significant digits, negative zero folded to 0."""
    return float(f"{x:.12g}") + 0.0


def _plain(value: Any) -> Any:
    """numpy scalars/arrays and tuples into JSON-native values, floats rounded."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return _plain(encode_complex(value))
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _round(float(value))
    return value


def report_envelope(command: str, tolerances: Tolerances, body: Mapping[str, Any]) -> dict[str, Any]:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "tolerances": tolerances.as_dict(),
        **body,
    }


def dumps(payload: Mapping[str, Any]) -> str:
    return json.dumps(_plain(payload), ensure_ascii=False, indent=2) + "\n"


# ── rows ─────────────────────────────────────────────────────────────

def family_row(family: RatioFamily, report: Optional[CaseReport] = None, error: Optional[str] = None) -> dict[str, Any]:
    row: dict[str, Any] = {
        "w": encode_complex(family.w),
        "zero_set": list(family.zero_set),
        "is_unit_modulus": family.is_unit_modulus,
        "generators": list(family.generators),
    }
    if report is not None:
        row.update({
            "case": str(report.case_label),
            "verdict": str(report.verdict),
            "hypotheses_hold": report.hypothesis_flags.hold,
            "congruence_check": report.congruence_check,
        })
    if error is not None:
        row["error"] = error
    return row


def collision_row(collision: RatioCollision) -> dict[str, Any]:
    k, l, kp, lp = collision.as_tuple()
    return {"n": collision.n, "k": k, "l": l, "k_prime": kp, "l_prime": lp, "ratio": collision.ratio}


def witness_row(witness: Remark5Witness) -> dict[str, Any]:
    return {
        "t": witness.t,
        "t_prime": witness.t_prime,
        "branch": str(witness.branch),
        "exchange_closed": witness.exchange_closed,
    }


def polygon_class_row(polygon: ComplexPolygon, cls: PolygonClass) -> dict[str, Any]:
    return {
        "label": str(cls.label),
        "class": str(cls),
        "t": cls.t,
        "support": list(cls.support),
        "pairwise_distinct": polygon.is_pairwise_distinct(),
    }


def verification_payload(result: PolytopeVerification) -> dict[str, Any]:
    gram, john = result.gram, result.john
    isometry = result.isometry
    recovery = result.recovery
    return {
        "passed": result.passed,
        "john_position": result.normalized,
        "distance_profile": {
            "invariant": result.profile.invariant,
            "max_spread": result.profile.max_spread,
            "means": list(result.profile.means),
        },
        "cyclic_isometry": None if isometry is None else {
            "block_angles": list(isometry.block_angles),
            "reflection_count": isometry.reflection_count,
            "residual": isometry.residual,
        },
        "gram": {
            "is_circulant": gram.is_circulant,
            "circulant_deviation": gram.circulant_deviation,
            "idempotency_residual": gram.idempotency_residual,
            "trace": gram.trace,
            "eigenvalues": gram.eigenvalue_histogram,
            "mu0_is_zero": gram.mu0_is_zero,
            "unit_frequencies": list(gram.unit_frequencies),
            "on_sphere": gram.on_sphere,
        },
        "john": {
            "holds": john.holds,
            "weight": john.weight,
            "residual_sum": john.residual_sum,
            "residual_identity": john.residual_identity,
        },
        "frequencies": None if recovery is None else {
            "ks": list(recovery.frequencies.ks),
            "residual": recovery.residual,
            "variant": recovery.variant,
        },
    }


# ── text ─────────────────────────────────────────────────────────────

def _cell(value: Any) -> Any:
    if isinstance(value, dict) and value.get("source") == "computed":
        real, imag = _round(value["re"]), _round(value["im"])
        return f"{real:.12g}{imag:+.12g}i"
    if isinstance(value, (list, tuple)):
        return "{" + ", ".join(str(_cell(v)) for v in value) + "}"
    return value


def render_text(sections: Mapping[str, Sequence[Mapping[str, Any]] | pd.DataFrame], header: Iterable[str] = ()) -> str:
    """Header lines, then one titled pandas table per section."""
    out = list(header)
    for title, rows in sections.items():
        out.append("")
        out.append(f"== {title} ==")
        frame = rows if isinstance(rows, pd.DataFrame) else pd.DataFrame([{k: _cell(v) for k, v in r.items()} for r in rows])
        out.append("(none)" if frame.empty else frame.to_string(na_rep=""))
    return "\n".join(out) + "\n"
