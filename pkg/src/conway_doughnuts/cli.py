"""Command-line entry point: ``conway-doughnuts <command> ...``."""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .angleform import TAU, Assignment, check_assignment, random_assignment
from .diagram import CATALOG_NAMES, catalog, develop, load_spec, verify_existence
from .doughnut import (build_doughnut, develop_doughnut, hole_polygon, isosceles_fill)
from .errors import ConstraintViolation, DoughnutError, InvalidSpec, UnknownName
from .holonomy import cyclotomic_check
from .packing import PackingParams, develop_packing
from .render import (DEFAULT_RATIOS, RenderStyle, bent_layers, diagram_svg, flipbook, packing_svg,
                     to_svg, write_flipbook)
from .report import asymptote_study, write_report
from .search import POLICIES, SearchBounds, search_hole_fill, search_parallel

OUT_DIR_ENV = "DOUGHNUT_OUT_DIR"

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_EMPTY_SEARCH = 3
EXIT_DOMAIN = 4


@dataclass
class CommandOutcome:
    code: int
    summary: str
    payload: dict | None = None
    path: str | None = None


class UsageError(Exception):
    pass


_ANGLE = re.compile(r"^\s*([-+]?[0-9./eE+-]+?)\s*\*?\s*(deg|rad|tau|τ)?\s*$")


def parse_angle(text: str) -> float:
    """``30deg``, ``0.5rad``, ``1/12tau`` or a bare number of radians."""
    m = _ANGLE.match(text)
    if not m:
        raise UsageError(f"cannot read angle {text!r}")
    number, unit = m.groups()
    try:
        value = Fraction(number)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read angle {text!r}") from None
    if unit in ("tau", "τ"):
        # one rounding step for rational multiples of the full turn
        return TAU * value.numerator / value.denominator
    if unit == "deg":
        return float(value) * TAU / 360.0
    return float(value)


def out_dir(args) -> Path:
    return Path(getattr(args, "out_dir", None) or os.environ.get(OUT_DIR_ENV) or ".")


def _assignment(args, n: int) -> Assignment:
    given = [args.a, args.b, args.c]
    if all(v is None for v in given):
        return random_assignment(n, np.random.default_rng(args.seed))
    if sum(v is None for v in given) > 1:
        raise UsageError("give all of --a --b --c, or two of them, or none")
    vals = [None if v is None else parse_angle(v) for v in given]
    missing = [i for i, v in enumerate(vals) if v is None]
    if missing:
        vals[missing[0]] = TAU / (2 * n) - sum(v for v in vals if v is not None)
    asg = Assignment(*vals)
    check_assignment(asg, n, rel_tol=1e-9)
    # snap the last angle so the constraint holds to rounding
    return Assignment(asg.a, asg.b, TAU / (2 * n) - asg.a - asg.b)


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(args, payload: dict) -> str | None:
    if getattr(args, "output", None):
        path = Path(args.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(_dump(payload))
        return str(path)
    sys.stdout.write(_dump(payload))
    return None


def _write_svg(args, svg: str, default_name: str) -> str:
    path = Path(args.output) if getattr(args, "output", None) else out_dir(args) / default_name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(svg)
    return str(path)


def _style(args) -> RenderStyle:
    return RenderStyle(stroke_width=args.stroke_width, labels=args.labels,
                       width=args.size, height=args.size)


# commands ----------------------------------------------------------------------

def cmd_check(args) -> CommandOutcome:
    target = args.spec
    if target in CATALOG_NAMES:
        spec = catalog(target)
    elif Path(target).is_file():
        spec = load_spec(target)
    else:
        raise UnknownName(f"{target!r} is neither a catalog name nor a file; "
                          f"catalog: {', '.join(CATALOG_NAMES)}")
    asg = _assignment(args, spec.n)
    report = verify_existence(spec, asg, tolerance=args.tol)
    payload = report.to_dict()
    payload["assignment"] = list(asg)
    payload["n"] = spec.n
    path = None
    if args.out == "svg":
        placed = develop(spec, asg)
        path = _write_svg(args, diagram_svg(spec, placed, _style(args)), f"{spec.name}.svg")
    else:
        path = _emit(args, payload)
    verdict = "exists" if report.exists else "does not exist"
    return CommandOutcome(EXIT_OK if report.exists else EXIT_DOMAIN,
                          f"{spec.name}: {verdict} (residual {report.normalized_residual:.3g})",
                          payload, path)


def cmd_doughnut(args) -> CommandOutcome:
    n = args.n
    if n < 2:
        raise UsageError("--n must be at least 2")
    asg = _assignment(args, n)
    spec = build_doughnut(n)
    if args.fill:
        spec = isosceles_fill(spec, args.beta, asg)
    placed = develop_doughnut(spec, asg)
    hole = hole_polygon(placed, build_doughnut(n) if args.fill else spec)
    payload = {
        "n": n,
        "assignment": list(asg),
        "filled": bool(args.fill),
        "triangles": {t: [[p.real, p.imag] for p in tri] for t, tri in placed.placements.items()},
        "labels": spec.labels,
        "normalized_residual": placed.normalized_residual,
        "hole": {"vertex_count": len(hole), "labels": hole.labels,
                 "vertices": hole.to_list(), "area": hole.area},
    }
    if args.out == "svg" and args.bend is not None:
        svg = to_svg(bent_layers(spec, placed, args.bend), _style(args))
        path = _write_svg(args, svg, f"doughnut-{n}-bent{args.bend}.svg")
    elif args.out == "svg":
        path = _write_svg(args, diagram_svg(spec, placed, _style(args),
                                            None if args.fill else hole),
                          f"doughnut-{n}{'-filled' if args.fill else ''}.svg")
    else:
        path = _emit(args, payload)
    return CommandOutcome(EXIT_OK, f"doughnut n={n}: hole has {len(hole)} vertices, "
                                   f"residual {placed.normalized_residual:.3g}", payload, path)


def cmd_identity(args) -> CommandOutcome:
    if args.n < 1 or args.grid < 1:
        raise UsageError("--n and --grid must be positive")
    constant = 2.0 ** (args.n - 1) * (1 + args.perturb)
    thetas = np.linspace(0, TAU / 2, args.grid, endpoint=False) + TAU / (4 * args.grid)
    worst = max(cyclotomic_check(args.n, float(t), constant) for t in thetas)
    ok = worst < args.tol
    payload = {"n": args.n, "grid": args.grid, "perturb": args.perturb,
               "max_residual": worst, "tolerance": args.tol, "holds": ok}
    path = _emit(args, payload)
    return CommandOutcome(EXIT_OK if ok else EXIT_DOMAIN,
                          f"cyclotomic identity n={args.n}: max residual {worst:.3g}", payload, path)


def cmd_asymptote(args) -> CommandOutcome:
    angle = parse_angle(args.corner_angle)
    study = asymptote_study(angle, args.n_list, args.split)
    files = write_report(study, out_dir(args))
    payload = study.to_dict()
    payload["files"] = files
    sys.stdout.write(_dump({k: payload[k] for k in ("corner_angle", "n_values", "distances",
                                                    "monotone", "files")}))
    return CommandOutcome(EXIT_OK, f"asymptote: distances {study.distances}", payload,
                          files["json"])


def cmd_search(args) -> CommandOutcome:
    bounds = SearchBounds(max_numerator=args.max_num, max_fill_triangles=args.max_fill,
                          triangulation_policy=args.policy)
    if args.workers > 1:
        result = search_parallel(args.n, bounds, args.workers, args.seed)
    else:
        result = search_hole_fill(args.n, bounds, args.start, args.stop, args.seed)
    payload = result.to_dict()
    path = _emit(args, payload)
    found = len(result.solutions)
    return CommandOutcome(EXIT_OK if found else EXIT_EMPTY_SEARCH,
                          f"search n={args.n}: {found} solution(s) over "
                          f"{result.triangulations_examined} triangulation(s)", payload, path)


def cmd_pack(args) -> CommandOutcome:
    params = PackingParams(args.s, args.t, args.rows, args.cols)
    patch = develop_packing(params)
    payload = {"s": args.s, "t": args.t, "rows": args.rows, "cols": args.cols,
               "circles": patch.circles_json(),
               "tangency_residual": patch.tangency_residual(),
               "flatness_residual": patch.flatness_residual()}
    if args.out == "svg":
        path = _write_svg(args, packing_svg(patch, _style(args)), "packing.svg")
    else:
        path = _emit(args, payload)
    return CommandOutcome(EXIT_OK, f"packing {args.rows}x{args.cols}: tangency "
                                   f"{payload['tangency_residual']:.3g}", payload, path)


def cmd_flipbook(args) -> CommandOutcome:
    step = -1 if args.to < args.start else 1
    ns = list(range(args.start, args.to + step, step))
    frames, failures = flipbook(ns, tuple(args.ratios), _style(args))
    paths = write_flipbook(frames, out_dir(args))
    payload = {"frames": [str(p) for p in paths],
               "failures": [{"n": n, "error": msg} for n, msg in failures]}
    sys.stdout.write(_dump(payload))
    return CommandOutcome(EXIT_OK if frames else EXIT_DOMAIN,
                          f"flipbook: {len(frames)} frame(s), {len(failures)} skipped", payload,
                          str(out_dir(args)))


# parser ------------------------------------------------------------------------

def _add_angles(p):
    p.add_argument("--a", help="angle a (e.g. 30deg, 0.2rad, 1/12tau)")
    p.add_argument("--b")
    p.add_argument("--c")


def _add_render(p):
    p.add_argument("--stroke-width", type=float, default=1.0)
    p.add_argument("--labels", action="store_true")
    p.add_argument("--size", type=int, default=800)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conway-doughnuts",
                                     description="Triangle diagrams built from angle forms.")
    parser.add_argument("--seed", type=int, default=0, help="seed for random trials")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify a catalog diagram or spec file")
    p.add_argument("spec")
    _add_angles(p)
    _add_render(p)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", choices=("json", "svg"), default="json")
    p.add_argument("--output")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("doughnut", help="build, develop and analyse an n-doughnut")
    p.add_argument("--n", type=int, required=True)
    _add_angles(p)
    _add_render(p)
    p.add_argument("--fill", action="store_true", help="attach isosceles fill triangles")
    p.add_argument("--beta", help="base angle form of the fill triangles")
    p.add_argument("--bend", type=int, choices=(0, 1, 2),
                   help="with --out svg: open this corner flat by a fractional power")
    p.add_argument("--out", choices=("json", "svg"), default="json")
    p.add_argument("--output")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_doughnut)

    p = sub.add_parser("identity", help="cyclotomic sine-product identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--perturb", type=float, default=0.0,
                   help="relative perturbation of the constant 2^(n-1)")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--output")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("asymptote", help="renormalized hole boundary against the limit curve")
    p.add_argument("--corner-angle", default="1/4tau")
    p.add_argument("--n-list", type=int, nargs="+", default=[10, 20, 40])
    p.add_argument("--split", type=float, default=0.5)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_asymptote)

    p = sub.add_parser("search", help="search for linear hole fills")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-num", type=int, default=4)
    p.add_argument("--max-fill", type=int, default=4)
    p.add_argument("--policy", choices=POLICIES, default="no-interior-vertex")
    p.add_argument("--start", type=int, default=0, help="first triangulation index")
    p.add_argument("--stop", type=int, default=None, help="one past the last index")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("pack", help="exponential circle packing patch")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--rows", type=int, default=5)
    p.add_argument("--cols", type=int, default=5)
    _add_render(p)
    p.add_argument("--out", choices=("json", "svg"), default="json")
    p.add_argument("--output")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("flipbook", help="doughnut frames for a range of n")
    p.add_argument("--from", dest="start", type=int, default=8)
    p.add_argument("--to", type=int, default=2)
    p.add_argument("--ratios", type=float, nargs=3, default=list(DEFAULT_RATIOS))
    _add_render(p)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_flipbook)
    return parser


def run(argv: list[str] | None = None) -> CommandOutcome:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandOutcome(EXIT_INVALID if exc.code else EXIT_OK, "usage error")
    try:
        return args.func(args)
    except (UsageError, ConstraintViolation, UnknownName, InvalidSpec) as exc:
        return CommandOutcome(EXIT_INVALID, f"invalid input: {exc}")
    except DoughnutError as exc:
        return CommandOutcome(EXIT_DOMAIN, f"{type(exc).__name__}: {exc}")
    except ValueError as exc:
        return CommandOutcome(EXIT_INVALID, f"invalid input: {exc}")


def main(argv: list[str] | None = None) -> int:
    outcome = run(argv)
    # stdout carries the JSON payload; the one-line summary goes to stderr
    print(outcome.summary + (f" -> {outcome.path}" if outcome.path else ""), file=sys.stderr)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
