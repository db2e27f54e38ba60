"""Command-line surface: parse, validate against the shipped schema, dispatch.

Subcommands mirror the library: ``omega``, ``suspend``, ``check``, ``scan``,
``orbit``, ``connections``.  Flags are folded into a job dictionary that is
validated against ``schemas/jobspec.json`` before anything runs.  Output is
canonical JSON on stdout: keys sorted, rationals as "p/q" strings, floats with
17 significant digits, so identical inputs give byte-identical output.

Exit codes: 0 success, 2 input validation, 3 simplicity required but violated,
4 reducible permutation, 5 curve left its positivity domain.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from fractions import Fraction
from importlib import resources
from typing import Any, Sequence

import jsonschema

from . import criterion as _criterion
from . import diagnostics as _diagnostics
from .errors import (
    DimensionMismatch,
    DomainViolation,
    IetkitError,
    InvalidBound,
    ReduciblePermutation,
)
from .iet import as_scalar, build_iet, find_connections
from .perm import Permutation, omega, validate_permutation
from .suspension import (
    SegmentClass,
    SuspensionDiagram,
    Witness,
    build_suspension,
    self_intersects,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NOT_SIMPLE = 3
EXIT_REDUCIBLE = 4
EXIT_DOMAIN = 5


# ---------------------------------------------------------------------------
# canonical JSON


def canonical_json(value: Any) -> str:
    """Deterministic JSON: sorted keys, Fractions as "p/q", floats as %.17g."""
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, Fraction):
        return json.dumps(f"{value.numerator}/{value.denominator}")
    if isinstance(value, Enum):
        return canonical_json(value.value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(canonical_json(v) for v in value) + "]"
    if isinstance(value, dict):
        items = sorted(value.items())
        return "{" + ",".join(f"{json.dumps(k)}:{canonical_json(v)}" for k, v in items) + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _emit(payload: Any) -> None:
    sys.stdout.write(canonical_json(payload) + "\n")


# ---------------------------------------------------------------------------
# schema


def _load_schema() -> dict:
    text = resources.files("ietkit").joinpath("schemas/jobspec.json").read_text()
    schema = json.loads(text)
    jsonschema.Draft202012Validator.check_schema(schema)
    return schema


def _validate_job(job: dict, schema: dict) -> None:
    jsonschema.Draft202012Validator(schema).validate(job)


# ---------------------------------------------------------------------------
# serialization helpers


def _point(pt: Sequence[Fraction]) -> list[Fraction]:
    return [pt[0], pt[1]]


def _witness_payload(witness: Witness | None) -> dict | None:
    if witness is None:
        return None
    rel = witness.relation
    if rel.classification is SegmentClass.COLLINEAR_OVERLAP:
        locus: Any = [_point(rel.locus[0]), _point(rel.locus[1])]
    elif rel.locus is not None:
        locus = _point(rel.locus)
    else:
        locus = None
    return {
        "chain_a": witness.chain_a,
        "index_a": witness.index_a,
        "chain_b": witness.chain_b,
        "index_b": witness.index_b,
        "classification": rel.classification,
        "locus": locus,
    }


def _diagram_payload(diagram: SuspensionDiagram, simple: bool, witness: Witness | None) -> dict:
    return {
        "perm": list(diagram.sigma.images),
        "lengths": list(diagram.lengths),
        "heights": list(diagram.heights),
        "slopes": list(diagram.slopes),
        "top_chain": [_point(p) for p in diagram.top_chain],
        "bottom_chain": [_point(p) for p in diagram.bottom_chain],
        "return_profile": list(diagram.return_profile),
        "first_slope_vs_bottom_first": diagram.first_slope_vs_bottom_first,
        "first_slope_vs_bottom_last": diagram.first_slope_vs_bottom_last,
        "simple": simple,
        "witness": _witness_payload(witness),
    }


# ---------------------------------------------------------------------------
# SVG


def _svg_chains(diagram: SuspensionDiagram, witness: Witness | None) -> str:
    def flip(pt: Sequence[Fraction]) -> tuple[float, float]:
        return float(pt[0]), float(-pt[1])

    top = [flip(p) for p in diagram.top_chain]
    bottom = [flip(p) for p in diagram.bottom_chain]
    marks: list[tuple[float, float]] = []
    if witness is not None and witness.relation.locus is not None:
        locus = witness.relation.locus
        if witness.relation.classification is SegmentClass.COLLINEAR_OVERLAP:
            marks = [flip(locus[0]), flip(locus[1])]
        else:
            marks = [flip(locus)]

    xs = [x for x, _ in top + bottom + marks]
    ys = [y for _, y in top + bottom + marks]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    margin = 0.05 * span
    view = (min(xs) - margin, min(ys) - margin, (max(xs) - min(xs)) + 2 * margin,
            (max(ys) - min(ys)) + 2 * margin)
    stroke = 0.01 * span

    def polyline(points: list[tuple[float, float]], color: str) -> str:
        coords = " ".join(f"{x:.17g},{y:.17g}" for x, y in points)
        return (f'<polyline fill="none" stroke="{color}" stroke-width="{stroke:.17g}" '
                f'points="{coords}"/>')

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{view[0]:.17g} {view[1]:.17g} {view[2]:.17g} {view[3]:.17g}">',
        polyline(top, "#1f77b4"),
        polyline(bottom, "#d62728"),
    ]
    for x, y in marks:
        parts.append(f'<circle cx="{x:.17g}" cy="{y:.17g}" r="{1.5 * stroke:.17g}" fill="#ff7f0e"/>')
    parts.append("</svg>")
    return "\n".join(parts)


# ---------------------------------------------------------------------------
# commands


def _parse_vector(text: list[str]) -> list[Fraction]:
    return [as_scalar(v) for v in text]


def cmd_omega(job: dict) -> int:
    sigma = validate_permutation(job["perm"])
    _emit([list(row) for row in omega(sigma).entries])
    return EXIT_OK


def cmd_suspend(job: dict) -> int:
    sigma = validate_permutation(job["perm"])
    diagram = build_suspension(sigma, _parse_vector(job["lengths"]), _parse_vector(job["heights"]))
    report = self_intersects(diagram)
    _emit(_diagram_payload(diagram, report.simple, report.witness))
    if "svg" in job:
        with open(job["svg"], "w") as fh:
            fh.write(_svg_chains(diagram, report.witness) + "\n")
    if job.get("require_simple") and not report.simple:
        print("error: curve self-intersects but --require-simple was set", file=sys.stderr)
        return EXIT_NOT_SIMPLE
    return EXIT_OK


def cmd_check(job: dict) -> int:
    sigma = validate_permutation(job["perm"])
    lengths = _parse_vector(job["lengths"])
    heights = _parse_vector(job["heights"])
    report = _criterion.convexity_criterion(sigma, lengths, heights)
    diagram = build_suspension(sigma, lengths, heights)
    _emit({
        "perm": list(sigma.images),
        "monotonicity": report.monotonicity,
        "simple": report.simple,
        "positivity": report.positivity,
        "verdict": report.verdict,
        "chains_exchanged": report.chains_exchanged,
        "connection_check_advised": report.connection_check_advised,
        "witness": _witness_payload(report.witness),
        "slopes": list(diagram.slopes),
        "return_profile": list(diagram.return_profile),
    })
    return EXIT_OK


def _load_curve(path: str, schema: dict) -> _criterion.CurveSpec:
    with open(path) as fh:
        raw = json.load(fh)
    jsonschema.Draft202012Validator(schema["$defs"]["curvespec"]).validate(raw)
    spec = _criterion.curve_spec(raw["coeffs"])
    if spec.d != raw["d"]:
        raise DimensionMismatch(f'curve file says d={raw["d"]} but has {spec.d} rows')
    return spec


def _grid(start: float, stop: float, samples: int) -> list[float]:
    if stop < start:
        raise InvalidBound(f"empty scan range [{start}, {stop}]")
    if samples == 1:
        return [start]
    step = (stop - start) / (samples - 1)
    return [start + k * step for k in range(samples)]


def _scan_chunk(args: tuple) -> list[str]:
    spec, sigma, chunk = args
    return [v.value for v in _criterion.scan_curve(spec, sigma, chunk).verdicts]


def cmd_scan(job: dict, schema: dict) -> int:
    sigma = validate_permutation(job["perm"])
    spec = _load_curve(job["curve"], schema)
    grid_floats = _grid(job["from"], job["to"], job["samples"])
    grid = [as_scalar(s) for s in grid_floats]
    jobs = job.get("jobs", 1)
    if jobs > 1 and len(grid) > 1:
        chunk_size = (len(grid) + jobs - 1) // jobs
        chunks = [grid[k : k + chunk_size] for k in range(0, len(grid), chunk_size)]
        # Probe the first sample serially so domain and validation errors
        # surface with clean exit codes instead of a pool traceback.
        _criterion.scan_curve(spec, sigma, grid[:1])
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = [
                _criterion.Verdict(name)
                for part in pool.map(_scan_chunk, [(spec, sigma, c) for c in chunks])
                for name in part
            ]
        summary = _criterion.ScanSummary(
            len(grid),
            tuple(verdicts),
            tuple(grid),
            tuple(
                (s, v)
                for s, v in zip(grid, verdicts)
                if v not in _criterion._POSITIVE_VERDICTS
            ),
        )
    else:
        summary = _criterion.scan_curve(spec, sigma, grid)
    _emit({
        "samples": summary.samples,
        "fractions": {v.value: frac for v, frac in summary.verdict_fractions.items()},
        "exceptional": [{"s": s, "verdict": v} for s, v in summary.exceptional],
    })
    return EXIT_OK


def cmd_orbit(job: dict) -> int:
    sigma = validate_permutation(job["perm"])
    t = build_iet(sigma, _parse_vector(job["lengths"]))
    stats = _diagnostics.visit_frequencies(
        t, as_scalar(job["x0"]), job["iters"], job.get("refine", _diagnostics.DEFAULT_REFINEMENT)
    )
    _emit({
        "iterations": stats.n_iterations,
        "frequencies": list(stats.frequencies),
        "expected": list(stats.expected),
        "discrepancy": stats.discrepancy,
        "discrepancy_float": float(stats.discrepancy),
        "refinement_cells": stats.refinement_cells,
        "refinement_discrepancy": stats.refinement_discrepancy,
        "refinement_discrepancy_float": float(stats.refinement_discrepancy),
        "empirical": True,
    })
    return EXIT_OK


def cmd_connections(job: dict) -> int:
    sigma = validate_permutation(job["perm"])
    t = build_iet(sigma, _parse_vector(job["lengths"]))
    hits = find_connections(t, job["max_m"])
    _emit({
        "max_m": job["max_m"],
        "connections": [{"m": c.m, "i": c.i, "j": c.j} for c in hits],
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _split_ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _split_strs(text: str) -> list[str]:
    return [v.strip() for v in text.split(",")]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ietkit",
        description="Interval exchanges, suspension polygons, and the convexity criterion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, lengths: bool = False, heights: bool = False) -> None:
        p.add_argument("--perm", type=_split_ints, required=True,
                       help="one-line permutation images, e.g. 3,1,2")
        if lengths:
            p.add_argument("--lengths", type=_split_strs, required=True,
                           help="comma-separated positive rationals, e.g. 1,3/2,0.25")
        if heights:
            p.add_argument("--heights", type=_split_strs, required=True)
        p.add_argument("--seed", type=int, default=0)

    common(sub.add_parser("omega", help="print the exchange matrix"))

    p = sub.add_parser("suspend", help="build the suspension and test simplicity")
    common(p, lengths=True, heights=True)
    p.add_argument("--svg", help="write the two chains to this SVG file")
    p.add_argument("--require-simple", action="store_true", dest="require_simple")

    p = sub.add_parser("check", help="run the convexity criterion")
    common(p, lengths=True, heights=True)

    p = sub.add_parser("scan", help="sweep a polynomial curve family")
    common(p)
    p.add_argument("--curve", required=True, help="JSON file with d and coeffs")
    p.add_argument("--from", dest="s_from", type=float, required=True)
    p.add_argument("--to", dest="s_to", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("orbit", help="visit frequencies and discrepancy")
    common(p, lengths=True)
    p.add_argument("--x0", required=True)
    p.add_argument("--iters", type=int, required=True)
    p.add_argument("--refine", type=int, default=_diagnostics.DEFAULT_REFINEMENT)

    p = sub.add_parser("connections", help="search for finite break-point orbits")
    common(p, lengths=True)
    p.add_argument("--max-m", dest="max_m", type=int, required=True)

    return parser


def _job_from_args(args: argparse.Namespace) -> dict:
    job: dict[str, Any] = {"command": args.command, "perm": args.perm, "seed": args.seed}
    if args.command in ("suspend", "check"):
        job["lengths"] = args.lengths
        job["heights"] = args.heights
    if args.command == "suspend":
        if args.svg:
            job["svg"] = args.svg
        job["require_simple"] = args.require_simple
    if args.command == "scan":
        job.update(curve=args.curve, samples=args.samples, jobs=args.jobs)
        job["from"] = args.s_from
        job["to"] = args.s_to
    if args.command == "orbit":
        job.update(lengths=args.lengths, x0=args.x0, iters=args.iters, refine=args.refine)
    if args.command == "connections":
        job.update(lengths=args.lengths, max_m=args.max_m)
    return job


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    schema = _load_schema()
    job = _job_from_args(args)
    try:
        _validate_job(job, schema)
        if args.command == "omega":
            return cmd_omega(job)
        if args.command == "suspend":
            return cmd_suspend(job)
        if args.command == "check":
            return cmd_check(job)
        if args.command == "scan":
            return cmd_scan(job, schema)
        if args.command == "orbit":
            return cmd_orbit(job)
        return cmd_connections(job)
    except ReduciblePermutation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REDUCIBLE
    except DomainViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (IetkitError, jsonschema.ValidationError, OSError, json.JSONDecodeError) as exc:
        message = exc.message if isinstance(exc, jsonschema.ValidationError) else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return EXIT_VALIDATION


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
