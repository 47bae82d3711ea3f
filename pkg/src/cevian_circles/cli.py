"""Command line: list, verify, figure, invariants, oracles, permute, stress."""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from fractions import Fraction

from . import catalog, harness, report
from .errors import (
    ConstructionFailed,
    DegenerateTriangle,
    IncompatibleSpec,
    InvalidSpec,
    NoPermutationFound,
    ReportIOError,
)
from .figures import render_figure, scene_for
from .geometry import Point, Triangle
from .invariants import default_specs, invariant_scan, spot_values
from .sampling import SamplerFamily, SamplerSpec
from .scalar import rel_residual

SEED_ENV = "CEVIAN_CIRCLES_SEED"
STRESS_MIN_ANGLE = 0.005
CONFIG_KEYS = {"n", "seed", "width", "tolerance", "constraint", "format", "out", "jobs", "min_angle"}


class UsageError(Exception):
    """Bad arguments; reported with exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _width(text: str) -> int:
    value = int(text)
    if value < 53:
        raise argparse.ArgumentTypeError(f"mantissa width must be >= 53, got {text}")
    return value


def _tolerance(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"tolerance must be positive, got {text}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {text}")
    return value


def _constraint(text: str) -> str:
    if text in ("general", "acute", "apex_on_line") or text.startswith("angle_b="):
        return text
    raise argparse.ArgumentTypeError(f"unknown constraint {text!r}; use general, acute, apex_on_line or angle_b=DEG")


def sampler_from(text: str | None, seed: int, min_angle: float | None = None) -> SamplerSpec | None:
    if text is None:
        return None
    kw = {"seed": seed}
    if min_angle is not None:
        kw["min_angle"] = min_angle
    if text.startswith("angle_b="):
        return SamplerSpec.angle_b(Fraction(text.split("=", 1)[1]), **kw)
    return SamplerSpec(SamplerFamily(text), **kw)


def _triangle(text: str) -> tuple[Point, Point, Point]:
    """Parse "x1,y1;x2,y2;x3,y3" with rational entries."""
    try:
        pts = [tuple(Fraction(v) for v in part.split(",")) for part in text.split(";")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad triangle {text!r}: {exc}") from None
    if len(pts) != 3 or any(len(p) != 2 for p in pts):
        raise argparse.ArgumentTypeError(f"triangle needs three x,y pairs, got {text!r}")
    return tuple(Point(*p) for p in pts)


def _add_run_options(p: argparse.ArgumentParser, n_help: str) -> None:
    p.add_argument("--n", type=_positive_int, help=n_help)
    p.add_argument("--seed", type=_seed, help=f"sampler seed (default ${SEED_ENV} or 0)")
    p.add_argument("--format", choices=("text", "json"))
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--config", help="key = value file; flags given on the command line win")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cevian-circles", description="Verify cevian and six-circle identities numerically.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("list", help="print the identity catalog")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="run random trials for one identity or all")
    p.add_argument("target", help="identity id or 'all'")
    _add_run_options(p, "samples per identity (default 10000, or 2000 for angle families)")
    p.add_argument("--width", type=_width, action="append", help="mantissa width; repeat for a ladder")
    p.add_argument("--tolerance", type=_tolerance)
    p.add_argument("--constraint", type=_constraint, help="sampler override: general, acute, apex_on_line, angle_b=DEG")
    p.add_argument("--jobs", type=_positive_int, help="worker processes")

    p = sub.add_parser("stress", help="report residual growth on low-quality triangles (no pass/fail)")
    p.add_argument("target", help="identity id or 'all'")
    _add_run_options(p, "samples per identity (default 1000)")
    p.add_argument("--min-angle", type=float, dest="min_angle", help="smallest allowed angle in radians (default 0.005)")

    p = sub.add_parser("figure", help="draw an identity's circles as SVG")
    p.add_argument("target", help="identity id")
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int, default=0, help="sample index of the default sampler")
    p.add_argument("--triangle", type=_triangle, help='vertices "x1,y1;x2,y2;x3,y3"')

    p = sub.add_parser("invariants", help="run the line and fixed-angle invariant scans")
    _add_run_options(p, "placements per scan (default 1000)")
    p.add_argument("--width", type=_width, action="append")

    p = sub.add_parser("oracles", help="closed-form formulas against coordinate constructions")
    _add_run_options(p, "random triangles (default 10000)")

    p = sub.add_parser("permute", help="find the radius relabelings under which an identity holds")
    p.add_argument("target", help="identity id")
    _add_run_options(p, "samples (default 50)")
    p.add_argument("--constraint", type=_constraint)
    return parser


def _read_config(path: str) -> dict:
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_string("[run]\n" + fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from None
    except configparser.Error as exc:
        raise UsageError(f"bad config {path}: {exc}") from None
    values = dict(parser["run"])
    unknown = set(values) - CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    converters = {
        "n": _positive_int,
        "seed": _seed,
        "width": lambda v: [_width(w) for w in v.split(",")],
        "tolerance": _tolerance,
        "constraint": _constraint,
        "jobs": _positive_int,
        "min_angle": float,
        "format": lambda v: v if v in ("text", "json") else _bad_format(v),
        "out": str,
    }
    try:
        return {key: converters[key](value.strip()) for key, value in values.items()}
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise UsageError(f"bad config {path}: {exc}") from None


def _bad_format(value):
    raise ValueError(f"format must be text or json, got {value!r}")


def _resolve(args) -> argparse.Namespace:
    """Fill unset options from the config file, then the environment, then defaults."""
    config = _read_config(args.config) if getattr(args, "config", None) else {}
    for key, value in config.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        env = os.environ.get(SEED_ENV)
        try:
            args.seed = _seed(env) if env else 0
        except (ValueError, argparse.ArgumentTypeError):
            raise UsageError(f"${SEED_ENV} must be a 64-bit unsigned integer, got {env!r}") from None
    if hasattr(args, "format") and args.format is None:
        args.format = "json" if args.command == "verify" else "text"
    return args


def _identities(target: str) -> list[catalog.Identity]:
    if target == "all":
        return list(catalog.CATALOG)
    try:
        return [catalog.get(target)]
    except KeyError:
        raise UsageError(f"unknown identity {target!r}; see 'list'") from None


def cmd_list(args, out) -> int:
    if args.format == "json":
        out.write(json.dumps(catalog.catalog_listing(), indent=2) + "\n")
        return 0
    rows = [("ID", "CENTER", "CONSTRAINT", "EXPRESSION", "ANCHOR")]
    for entry in catalog.catalog_listing():
        rows.append((entry["id"], entry["center"], entry["constraint"], entry["expression"], entry["paper_anchor"]))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    for r in rows:
        out.write("  ".join(cell.ljust(w) for cell, w in zip(r[:4], widths)) + "  " + r[4] + "\n")
    return 0


def _describe_failure(summary: harness.TrialSummary) -> str:
    worst = summary.worst or {}
    coords = "; ".join(f"({x}, {y})" for x, y in worst.get("triangle", []))
    if not summary.holds:
        return (
            f"{summary.id}: deliberately false identity passed on {summary.pass_count}/{summary.n} samples; "
            f"worst triangle [{coords}] rel_residual {worst.get('rel_residual', 0):.3e}"
        )
    reasons = []
    if summary.pass_count < summary.n:
        reasons.append(f"{summary.n - summary.pass_count}/{summary.n} samples over tolerance")
    if summary.max_tangency_residual > harness.GEOMETRY_TOLERANCE:
        reasons.append(f"tangency residual {summary.max_tangency_residual:.3e}")
    if summary.contact_failures:
        reasons.append(f"{summary.contact_failures} circles touch outside their segment")
    if summary.constraint_failures:
        reasons.append(f"{summary.constraint_failures} samples violate the sampler constraint")
    return (
        f"{summary.id} failed ({', '.join(reasons)}); worst triangle [{coords}] "
        f"rel_residual {worst.get('rel_residual', 0):.3e} at width {worst.get('width')}"
    )


def cmd_verify(args, out, err) -> int:
    identities = _identities(args.target)
    widths = tuple(args.width or (53,))
    tolerance = args.tolerance or catalog.DEFAULT_TOLERANCE
    try:
        spec = sampler_from(args.constraint, args.seed)
        summaries = harness.run_suite(
            identities, n=args.n, widths=widths, tolerance=tolerance,
            jobs=args.jobs or 1, seed=args.seed, spec=spec,
        )
    except (IncompatibleSpec, InvalidSpec) as exc:
        raise UsageError(str(exc)) from None
    report.write_report(summaries, args.format, args.out, seed=args.seed, widths=widths, tolerance=tolerance, stream=out)
    # a lone identity must hold; within 'all' the false control must be caught
    single = args.target != "all"
    failed = [s for s in summaries if not (s.passed if single else s.ok)]
    for s in failed:
        err.write(_describe_failure(s) + "\n")
    return 1 if failed else 0


def cmd_stress(args, out, err) -> int:
    identities = _identities(args.target)
    min_angle = STRESS_MIN_ANGLE if args.min_angle is None else args.min_angle
    rows = []
    try:
        for identity in identities:
            base = harness.default_spec(identity, args.seed)
            spec = SamplerSpec(base.family, seed=args.seed, min_angle=min_angle, angle_over_pi=base.angle_over_pi)
            s = harness.run_trials(identity, spec, n=args.n or 1000)
            rows.append({"id": s.id, "min_angle": min_angle, "n": s.n,
                         "max_rel_residual": s.max_rel_residual, "histogram": s.histogram})
    except InvalidSpec as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        text = json.dumps({"seed": args.seed, "results": rows}, indent=2) + "\n"
    else:
        text = "".join(f"{r['id']:<12} min_angle {r['min_angle']:g}  max_rel_residual {r['max_rel_residual']:.3e}\n" for r in rows)
    report.emit(text, args.out, out)
    return 0


def cmd_figure(args, out, err) -> int:
    identity = _identities(args.target)[0]
    try:
        T = Triangle(*args.triangle) if args.triangle is not None else None
        svg = render_figure(scene_for(identity, T, args.k))
    except (ConstructionFailed, DegenerateTriangle) as exc:
        err.write(f"{identity.id}: cannot draw: {exc}\n")
        return 1
    report.emit(svg, args.out, out)
    return 0


def cmd_invariants(args, out, err) -> int:
    n = args.n or 1000
    results, ok = [], True
    for width in args.width or (53,):
        for kind, spec in default_specs().items():
            r = invariant_scan(kind, spec, n=n, seed=args.seed, width=width)
            ok = ok and r.passed
            results.append({
                "scan": kind.value, "width": width, "n": r.n, "target": r.target,
                "min": r.minimum, "max": r.maximum, "relative_spread": r.relative_spread,
                "max_target_deviation": r.max_target_deviation,
                "max_tangent_length_deviation": r.max_tangent_length_deviation,
                "max_tangency_residual": r.max_tangency_residual,
                "contact_failures": r.contact_failures, "pass": r.passed,
            })
    spots = []
    for name, (computed, expected) in spot_values().items():
        good = rel_residual(computed, expected) <= 1e-12
        ok = ok and good
        spots.append({"scan": name, "computed": float(computed), "expected": float(expected), "pass": good})
    if args.format == "json":
        text = json.dumps({"seed": args.seed, "scans": results, "spot_values": spots}, indent=2) + "\n"
    else:
        lines = [
            f"{r['scan']:<24} w={r['width']:<4} target {r['target']:.15g}  spread {r['relative_spread']:.2e}  "
            f"deviation {r['max_target_deviation']:.2e}  {'pass' if r['pass'] else 'FAIL'}"
            for r in results
        ]
        lines += [f"spot {s['scan']:<19} {s['computed']:.15g} vs {s['expected']:.15g}  {'pass' if s['pass'] else 'FAIL'}" for s in spots]
        text = "\n".join(lines) + "\n"
    report.emit(text, args.out, out)
    return 0 if ok else 1


def cmd_oracles(args, out, err) -> int:
    r = harness.oracle_crosschecks(seed=args.seed, n=args.n or 10_000)
    checks = [
        {"check": c.name, "n": c.n, "failures": c.failures, "max_rel_error": c.max_rel_error, "pass": c.passed}
        for c in r.checks.values()
    ]
    if args.format == "json":
        text = json.dumps({"seed": r.seed, "n": r.n, "tolerance": r.tolerance, "checks": checks}, indent=2) + "\n"
    else:
        text = "".join(
            f"{c['check']:<26} n={c['n']:<6} max_rel_error {c['max_rel_error']:.2e}  {'pass' if c['pass'] else 'FAIL'}\n"
            for c in checks
        )
    report.emit(text, args.out, out)
    return 0 if r.passed else 1


def cmd_permute(args, out, err) -> int:
    identity = _identities(args.target)[0]
    if not identity.uses_radii:
        raise UsageError(f"{identity.id} does not depend on indexed radii")
    try:
        spec = sampler_from(args.constraint, args.seed) or harness.default_spec(identity, args.seed)
        found = harness.permutation_search(identity, spec, m=args.n or 50)
    except (IncompatibleSpec, InvalidSpec) as exc:
        raise UsageError(str(exc)) from None
    except NoPermutationFound as exc:
        err.write(f"{exc}\n")
        return 1
    perms = sorted(found)
    documented = harness.identity_permutation(len(perms[0])) in found
    if args.format == "json":
        text = json.dumps({"id": identity.id, "documented_labeling_holds": documented,
                           "permutations": [list(p) for p in perms]}, indent=2) + "\n"
    else:
        text = f"{identity.id}: {len(perms)} relabelings hold; documented labeling {'holds' if documented else 'FAILS'}\n"
        text += "".join(" ".join(map(str, p)) + "\n" for p in perms)
    report.emit(text, args.out, out)
    if not documented:
        err.write(f"{identity.id}: documented labeling is not among the satisfying relabelings\n")
    return 0 if documented else 1


COMMANDS = {
    "verify": cmd_verify,
    "stress": cmd_stress,
    "figure": cmd_figure,
    "invariants": cmd_invariants,
    "oracles": cmd_oracles,
    "permute": cmd_permute,
}


def run_cli(argv=None, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        args = _resolve(build_parser().parse_args(argv))
        if args.command == "list":
            return cmd_list(args, out)
        return COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        err.write(f"cevian-circles: error: {exc}\n")
        return 2
    except ReportIOError as exc:
        err.write(f"cevian-circles: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run_cli())
