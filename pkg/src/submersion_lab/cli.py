"""Command-line front end: ``submersion-lab classify|verify|examples``.

Exit codes: 0 success, 1 a verify check failed, 2 bad input (syntax,
unknown example, unknown theorem, bad option), 3 critical points or rank
changes on the samples, 4 any other evaluation failure.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from . import report as rep
from .catalog import EXAMPLES, builtin_example, example_entry
from .errors import (CriticalPoint, MapSyntaxError, NonConstantRank, SubmersionLabError,
                     UnknownExample, UnknownTheorem)
from .mapdsl import eval_constant, parse_map
from .numeric import ToleranceConfig
from .slant import classify
from .submersion import Geometry, SamplingPlan
from .theorems import THEOREM_IDS, run_full_suite, validate_theorem_ids

SEED_ENV = "SUBMERSION_LAB_SEED"

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_RANK, EXIT_EVAL = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _InputError(message)


class _InputError(Exception):
    pass


def _add_run_options(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--map", metavar="PATH", help="map file in the map DSL")
    src.add_argument("--builtin", metavar="ID", help="builtin example id (see `examples`)")
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                   help="bind a map parameter; VALUE may be a constant expression such as pi/4")
    p.add_argument("--points", type=int, default=16, help="sample points (default 16)")
    p.add_argument("--dirs", type=int, default=32, help="directions per point (default 32)")
    p.add_argument("--seed", type=int, default=0,
                   help=f"sampling seed (default 0; ${SEED_ENV} overrides)")
    p.add_argument("--tol-angle", type=float, default=None, help="slant-angle tolerance, rad")
    p.add_argument("--tol-identity", type=float, default=None, help="identity tolerance")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--box", action="append", default=[], metavar="LO:HI",
                   help="sampling interval; once for every coordinate or once per coordinate")


def build_parser():
    parser = _Parser(prog="submersion-lab",
                     description="Classify and verify h-conformal slant submersions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p_cls = sub.add_parser("classify", help="compute slant angles and the verdict")
    _add_run_options(p_cls)
    p_ver = sub.add_parser("verify", help="run identities, commutation relations and theorems")
    _add_run_options(p_ver)
    p_ver.add_argument("--theorems", default="all", metavar="LIST",
                       help="comma-separated theorem ids or 'all' (%s)" % ", ".join(THEOREM_IDS))
    p_ex = sub.add_parser("examples", help="list builtin examples")
    p_ex.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _parse_params(items):
    out = {}
    for item in items:
        if "=" not in item:
            raise _InputError(f"--param expects NAME=VALUE, got {item!r}")
        name, value = item.split("=", 1)
        out[name.strip()] = eval_constant(value)
    return out


def _parse_box(items):
    if not items:
        return None
    box = []
    for item in items:
        try:
            lo, hi = (float(eval_constant(s)) for s in item.split(":"))
        except ValueError:
            raise _InputError(f"--box expects LO:HI, got {item!r}") from None
        box.append((lo, hi))
    return box


def _load_map(args):
    params = _parse_params(args.param)
    if args.builtin:
        spec = builtin_example(args.builtin, **params)
        return spec, f"builtin:{args.builtin}", example_entry(args.builtin).exclusion
    path = Path(args.map)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"cannot read map file {args.map!r}: {exc.strerror}") from None
    spec = parse_map(text).with_name(path.stem)
    if params:
        try:
            spec = spec.with_params(**params)
        except KeyError as exc:
            raise _InputError(exc.args[0]) from None
    return spec, str(args.map), None


def _config(args, dim):
    seed = args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            seed = int(env)
        except ValueError:
            raise _InputError(f"${SEED_ENV} must be an integer, got {env!r}") from None
    box = _parse_box(args.box)
    if box is not None and len(box) not in (1, dim):
        raise _InputError(f"--box given {len(box)} times; expected 1 or {dim}")
    overrides = {}
    if args.tol_angle is not None:
        overrides["angle_tol_rad"] = args.tol_angle
    if args.tol_identity is not None:
        overrides["identity_tol"] = args.tol_identity
    try:
        tol = ToleranceConfig(**overrides)
        return tol, box, seed
    except ValueError as exc:
        raise _InputError(str(exc)) from None


def _plan(args, box, seed, exclusion, dim):
    try:
        plan = SamplingPlan(box=box, n_points=args.points, n_directions=args.dirs, seed=seed,
                            exclusion=exclusion)
        plan.bounds(dim)
        return plan
    except ValueError as exc:
        raise _InputError(str(exc)) from None


def _emit(report, fmt, out):
    out.write(rep.to_json(report) if fmt == "json" else rep.to_text(report))


def cmd_classify(args, out):
    spec, source, exclusion = _load_map(args)
    tol, box, seed = _config(args, spec.domain_dim)
    plan = _plan(args, box, seed, exclusion, spec.domain_dim)
    cls = classify(Geometry(spec, tol), plan, tol)
    _emit(rep.build_report(spec, source, plan, tol, cls), args.format, out)
    return EXIT_OK


def cmd_verify(args, out):
    ids = None
    if args.theorems.strip().lower() != "all":
        ids = validate_theorem_ids([t.strip() for t in args.theorems.split(",") if t.strip()])
    spec, source, exclusion = _load_map(args)
    tol, box, seed = _config(args, spec.domain_dim)
    plan = _plan(args, box, seed, exclusion, spec.domain_dim)
    suite = run_full_suite(Geometry(spec, tol), plan, tol, theorems=ids)
    report = rep.build_report(spec, source, plan, tol, suite.classification, suite)
    _emit(report, args.format, out)
    return EXIT_OK if report["summary"]["ok"] else EXIT_FAILED


def examples_listing():
    return [
        {"id": e.id, "map": e.summary, "angles": e.angles, "dilation": e.dilation,
         "published": e.published,
         "params": {k: v for k, v in parse_map(e.text).params},
         "exclusion": e.exclusion.describe() if e.exclusion else None}
        for e in EXAMPLES.values()
    ]


def cmd_examples(args, out):
    rows = examples_listing()
    if args.format == "json":
        out.write(json.dumps(rows, indent=2, ensure_ascii=False) + "\n")
        return EXIT_OK
    lines = []
    for r in rows:
        tag = "" if r["published"] else "  [extra]"
        lines.append(f"{r['id']}{tag}")
        lines.append(f"  map:      {r['map']}")
        lines.append(f"  angles:   {r['angles']}")
        lines.append(f"  dilation: {r['dilation']}")
        if r["params"]:
            lines.append("  params:   " + ", ".join(f"{k}={v!r}" for k, v in r["params"].items()))
        if r["exclusion"]:
            lines.append(f"  excluded: {r['exclusion']}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


_COMMANDS = {"classify": cmd_classify, "verify": cmd_verify, "examples": cmd_examples}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _InputError as exc:
        err.write(f"submersion-lab: error: {exc}\n")
        return EXIT_INPUT
    buf = []

    class _Sink:
        def write(self, s):
            buf.append(s)

    try:
        code = _COMMANDS[args.command](args, _Sink())
    except (MapSyntaxError, UnknownExample, UnknownTheorem, _InputError) as exc:
        err.write(f"submersion-lab: error: {exc}\n")
        return EXIT_INPUT
    except (CriticalPoint, NonConstantRank) as exc:
        err.write(f"submersion-lab: rank failure: {exc}\n")
        return EXIT_RANK
    except SubmersionLabError as exc:
        err.write(f"submersion-lab: evaluation failure: {exc}\n")
        return EXIT_EVAL
    # single write so a partial report never reaches the stream
    out.write("".join(buf))
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
