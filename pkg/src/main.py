"""
CLI entry point for cyclogon.

Exit status: 0 on success, 1 when a verification finds a violation (a sweep
violation, a diagonal-ratio collision, a polytope check that fails), 2 on invalid
input. JSON goes to stdout or --output; progress and diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable

try:
    from dotenv import load_dotenv
except ImportError:  # pragma: no cover - optional dependency, but listed in requirements
    load_dotenv = None

from . import __version__
from .analyzer.polygons import (
    affine_cycle_map,
    classify_polygon,
    coxeter_lambda,
    make_combination,
    recover_ratio,
)
from .analyzer.polytopes import build_q, verify_polytope
from .analyzer.recurrence import RecurrenceAnalyzer, recurrence_residual
from .analyzer.sweep import NSweep, theorem2_sweep
from .config import default_workers, load_tolerances
from .exceptions import (
    ClassificationError,
    GeometryError,
    InputFormatError,
    PrecisionGapError,
    SpecError,
)
from .models import RecurrenceSpec
from .number_theory.diagonals import lemma3_scan_range, ratio_lookup
from .number_theory.witnesses import congruence_partner, remark5_witnesses
from .render.report import (
    collision_row,
    dumps,
    encode_complex,
    family_row,
    polygon_class_row,
    render_text,
    report_envelope,
    verification_payload,
    witness_row,
)
from .render.svg import polygon_to_svg, svg_document
from .utils.io import load_polygon, load_polytope, polygon_to_dict, polytope_to_dict, write_text

logger = logging.getLogger("cyclogon")


# ── helpers ──────────────────────────────────────────────────────────

def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _coefficient(text: str) -> tuple[int, complex]:
    """'t:z' with z any Python complex literal, e.g. '1:0.8' or '6:0.3+0.1j'."""
    t, sep, z = text.partition(":")
    try:
        if not sep:
            raise ValueError
        return int(t), complex(z.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected t:value, got {text!r}")


def _spec(args: argparse.Namespace) -> RecurrenceSpec:
    return RecurrenceSpec(args.n, args.m1, args.m2, args.k)


def _emit(args: argparse.Namespace, payload: dict[str, Any], text: Callable[[], str]) -> None:
    out = dumps(payload) if args.format == "json" else text()
    if args.output:
        write_text(args.output, out)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(out)


def _envelope(args: argparse.Namespace, body: dict[str, Any]) -> dict[str, Any]:
    return report_envelope(args.command, args.tolerances, body)


# ── commands ─────────────────────────────────────────────────────────

def cmd_analyze(args: argparse.Namespace) -> int:
    spec = _spec(args)
    analyzer = RecurrenceAnalyzer(spec, args.tolerances)
    rows = []
    for family in analyzer.admissible_ratios():
        try:
            rows.append(family_row(family, analyzer.classify(family.w)))
        except ClassificationError as exc:
            rows.append(family_row(family, error=str(exc)))

    body = {
        "spec": {"n": spec.n, "m1": spec.m1, "m2": spec.m2, "k": spec.k, "m": spec.m},
        "hypotheses": {
            "gcd_condition": spec.gcd_condition,
            "evenness_bound": spec.evenness_bound,
            "congruence": spec.congruence,
        },
        "families": rows,
    }
    _emit(args, _envelope(args, body), lambda: render_text(
        {"families": rows},
        header=[f"spec {spec}  gcd_condition={spec.gcd_condition}  "
                f"evenness_bound={spec.evenness_bound}  m1+m2=k: {spec.congruence}"],
    ))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    def progress(row: NSweep) -> None:
        print(f"[sweep] n={row.n}: {row.specs_checked} specs, {row.families_checked} families, "
              f"{len(row.violations)} violations", file=sys.stderr)

    report = theorem2_sweep(
        args.n_max,
        n_min=args.n_min,
        include_control=args.control,
        workers=args.workers,
        tol=args.tolerances.headline,
        on_progress=progress,
    )
    violations = [{
        "spec": str(v.spec), "w": encode_complex(v.w), "zero_set": list(v.zero_set), "reason": v.reason,
    } for v in report.violations]
    detections = [{
        "spec": str(c.spec), "w": encode_complex(c.w), "zero_set": list(c.zero_set),
        "case": str(c.case_label), "t": c.t, "t_prime": c.t_prime,
    } for c in report.control_detections]

    body = {
        "n_min": report.n_min,
        "n_max": report.n_max,
        "specs_checked": report.specs_checked,
        "families_checked": report.families_checked,
        "passed": report.passed,
        "degenerate": report.degenerate,
        "unit_modulus_skipped": report.unit_modulus_skipped,
        "violations": len(violations),
        "violation_list": violations,
    }
    if args.control:
        body["control_detections"] = detections
    sections: dict[str, Any] = {"per n": report.to_frame(), "violations": violations}
    if args.control:
        sections["control detections"] = detections
    _emit(args, _envelope(args, body), lambda: render_text(sections))
    return 0 if report.ok else 1


def cmd_lemma3(args: argparse.Namespace) -> int:
    if args.n is not None:
        n_min = n_max = args.n
    else:
        n_min, n_max = args.n_min, args.n_max
    results = lemma3_scan_range(n_min, n_max, workers=args.workers)
    rows = [collision_row(c) for n in results for c in results[n]]

    body: dict[str, Any] = {"n_min": n_min, "n_max": n_max, "collisions": rows}
    if args.ratio is not None:
        if args.n is None:
            raise SpecError("--ratio needs a single --n")
        body["lookup"] = {
            "ratio": args.ratio,
            "tol": args.lookup_tol,
            "pairs": [list(p) for p in ratio_lookup(args.n, args.ratio, args.lookup_tol)],
        }
    sections: dict[str, Any] = {"collisions": rows}
    if "lookup" in body:
        sections["lookup"] = [{"k": k, "l": l} for k, l in body["lookup"]["pairs"]]
    _emit(args, _envelope(args, body), lambda: render_text(sections, header=[f"n = {n_min} .. {n_max}"]))
    return 1 if rows else 0


def cmd_witnesses(args: argparse.Namespace) -> int:
    spec = _spec(args)
    witnesses = remark5_witnesses(spec)
    rows = [witness_row(w) for w in witnesses]
    for row, w in zip(rows, witnesses):
        row["crt_partners"] = congruence_partner(spec, w.t, w.branch)
    body = {"spec": str(spec), "evenness_bound": spec.evenness_bound, "witnesses": rows}
    _emit(args, _envelope(args, body), lambda: render_text({"witnesses": rows}, header=[f"spec {spec}"]))
    return 0


def cmd_classify_polygon(args: argparse.Namespace) -> int:
    polygon = load_polygon(args.input)
    tol = args.tolerances.support
    cls = classify_polygon(polygon, tol)
    body: dict[str, Any] = {"n": polygon.n, "class": polygon_class_row(polygon, cls)}

    affine = affine_cycle_map(polygon, args.tolerances.distinct)
    body["affine_cycle_map"] = None if affine is None else {
        "a": encode_complex(affine.a),
        "b": encode_complex(affine.b),
        "c": encode_complex(affine.c),
        "residual": affine.residual,
        "is_isometry": affine.is_isometry,
        "is_invertible": affine.is_invertible,
    }
    if polygon.is_pairwise_distinct(args.tolerances.distinct):
        body["coxeter_lambda"] = coxeter_lambda(polygon, args.tolerances.distinct)
        if args.k is not None:
            w = recover_ratio(polygon, args.m1, args.m2, args.k, args.tolerances.distinct)
            body["ratio"] = None if w is None else {
                "w": encode_complex(w),
                "residual": recurrence_residual(polygon, args.m1, args.m2, args.k, w),
            }
    _emit(args, _envelope(args, body), lambda: render_text(
        {"classification": [body["class"]]}, header=[f"{polygon.n}-gon: {cls}"],
    ))
    return 0


def cmd_build_polygon(args: argparse.Namespace) -> int:
    coeffs: dict[int, complex] = {}
    for t, z in args.coeff:
        coeffs[t] = coeffs.get(t, 0) + z
    polygon = make_combination(args.n, coeffs)
    if args.svg:
        polygon_to_svg(polygon, args.svg)
        print(f"wrote {args.svg}", file=sys.stderr)
    body = {
        "coefficients": [{"t": t % args.n, "z": encode_complex(z)} for t, z in sorted(coeffs.items())],
        "pairwise_distinct": polygon.is_pairwise_distinct(args.tolerances.distinct),
        "polygon": polygon_to_dict(polygon),
    }
    _emit(args, _envelope(args, body), lambda: render_text(
        {"vertices": [{"j": j, "re": v[0], "im": v[1]} for j, v in enumerate(body["polygon"]["vertices"])]},
    ))
    return 0


def cmd_build_polytope(args: argparse.Namespace) -> int:
    polytope = build_q(args.n, args.d, args.ks, isotropic=args.isotropic)
    body = {"ks": list(args.ks), "isotropic": args.isotropic, "polytope": polytope_to_dict(polytope)}
    _emit(args, _envelope(args, body), lambda: render_text(
        {"vertices": [dict(enumerate(row)) for row in body["polytope"]["vertices"]]},
    ))
    return 0


def cmd_verify_polytope(args: argparse.Namespace) -> int:
    polytope = load_polytope(args.input)
    result = verify_polytope(polytope, args.tolerances.polytope, normalize=args.john_position)
    payload = verification_payload(result)
    summary = [{
        "check": name,
        "ok": ok,
    } for name, ok in [
        ("distance profile", result.profile.invariant),
        ("cyclic isometry", result.isometry is not None),
        ("circulant gram", result.gram.is_circulant),
        ("gram projector", result.gram.near_one + result.gram.near_zero == result.gram.eigenvalues.size),
        ("john condition", result.john.holds),
        ("frequencies", result.recovery is not None),
    ]]
    _emit(args, _envelope(args, {"n": polytope.n, "d": polytope.d, **payload}), lambda: render_text(
        {"checks": summary}, header=[f"n={polytope.n} d={polytope.d} passed={result.passed}"],
    ))
    return 0 if result.passed else 1


def cmd_render(args: argparse.Namespace) -> int:
    polygon = load_polygon(args.input)
    if args.output:
        polygon_to_svg(polygon, args.output, title=args.title)
        print(f"wrote {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(svg_document(polygon, title=args.title))
    return 0


# ── parser ───────────────────────────────────────────────────────────

def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "text"], default="json", help="Output format (default: json)")
    p.add_argument("--output", "-o", type=Path, default=None, help="Write to file instead of stdout")


def _add_spec(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--n", type=int, required=required, help="Number of vertices")
    p.add_argument("--m1", type=int, required=required)
    p.add_argument("--m2", type=int, required=required)
    p.add_argument("--k", type=int, required=required)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclogon",
        description="Four-term polygon recurrences and cyclically symmetric polytopes",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python -m src.main analyze --n 30 --m1 7 --m2 2 --k 6
  python -m src.main sweep --n-max 12
  python -m src.main lemma3 --n 42
  python -m src.main build-polygon --n 30 --coeff 1:0.8 --coeff 11:0.2 --svg fig.svg
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--tol", type=_positive_float, default=None, help="Uniform tolerance (overrides CYCLOGON_TOL)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Admissible ratios and their classification for one spec")
    _add_spec(p)
    _add_output(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="Check the regular/affinely-regular conclusion over all specs")
    p.add_argument("--n-max", type=int, default=24)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--control", action="store_true", help="Also audit specs that fail the hypotheses")
    p.add_argument("--workers", type=int, default=default_workers(), help="Worker processes (default: CYCLOGON_WORKERS or 1)")
    _add_output(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lemma3", help="Scan diagonal ratios of regular n-gons for collisions")
    p.add_argument("--n", type=int, default=None, help="Single n (overrides --n-min/--n-max)")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=42)
    p.add_argument("--ratio", type=_positive_float, default=None, help="Also list (k, l) with d_k/d_l near this value")
    p.add_argument("--lookup-tol", type=_positive_float, default=1e-6)
    p.add_argument("--workers", type=int, default=default_workers())
    _add_output(p)
    p.set_defaults(func=cmd_lemma3)

    p = sub.add_parser("witnesses", help="Counterexample witnesses (t, t') for an even-n spec")
    _add_spec(p)
    _add_output(p)
    p.set_defaults(func=cmd_witnesses)

    p = sub.add_parser("classify-polygon", help="Classify a polygon JSON by DFT support")
    p.add_argument("--input", "-i", type=Path, required=True)
    p.add_argument("--m1", type=int, default=None)
    p.add_argument("--m2", type=int, default=None)
    p.add_argument("--k", type=int, default=None, help="With --m1/--m2: recover the ratio w")
    _add_output(p)
    p.set_defaults(func=cmd_classify_polygon)

    p = sub.add_parser("build-polygon", help="Polygon sum_t z_t v_t")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coeff", type=_coefficient, action="append", required=True, help="t:z, repeatable")
    p.add_argument("--svg", type=Path, default=None, help="Also write an SVG figure")
    _add_output(p)
    p.set_defaults(func=cmd_build_polygon)

    p = sub.add_parser("build-polytope", help="Vertices of Q(k_1, ..., k_s)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ks", type=int, nargs="+", required=True)
    p.add_argument("--isotropic", action="store_true", help="John-position scaling for odd d")
    _add_output(p)
    p.set_defaults(func=cmd_build_polytope)

    p = sub.add_parser("verify-polytope", help="Distance, isometry, Gram, John and similarity checks")
    p.add_argument("--input", "-i", type=Path, required=True)
    p.add_argument("--john-position", action="store_true", help="Run Gram/John checks in John position")
    _add_output(p)
    p.set_defaults(func=cmd_verify_polytope)

    p = sub.add_parser("render", help="Polygon JSON to SVG")
    p.add_argument("--input", "-i", type=Path, required=True)
    p.add_argument("--output", "-o", type=Path, default=None)
    p.add_argument("--title", type=str, default=None)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    if load_dotenv:
        load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args.tolerances = load_tolerances(args.tol)

    if args.command == "classify-polygon" and (args.k is None) != (args.m1 is None or args.m2 is None):
        parser.error("--m1, --m2 and --k go together")
    try:
        return args.func(args)
    except (SpecError, InputFormatError, GeometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ClassificationError, PrecisionGapError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
