"""hvgap command line: brackets, constant tables, module actions and check suites.

Exit codes: 0 success / all checks pass, 1 a mathematical check failed,
2 usage, parse or precondition error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from importlib import resources

from .algebra import Algebra, AlgebraError, bracket_basis, check_basis, parse_basis, structure_constants
from .enveloping import omega_build
from .restricted import RestrictedModuleError
from .scalars import ScalarParseError
from .suite import ConfigError, load_config, run_suite
from .weightmod import ModuleError, cyclic_span_probe, module_from_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _algebra(args) -> Algebra:
    if args.algebra == "gap":
        if args.p is None:
            raise UsageError("--algebra gap needs --p")
        return Algebra("gap", args.p)
    if args.p is not None:
        raise UsageError("--p only applies to --algebra gap")
    return Algebra(args.algebra)


def _read_json(text: str):
    """Inline JSON, or @path to read it from a file."""
    try:
        if text.startswith("@"):
            with open(text[1:], encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {text[1:]}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


# ---------------------------------------------------------------- commands


def cmd_bracket(args) -> int:
    alg = _algebra(args)
    x, y = parse_basis(args.x), parse_basis(args.y)
    check_basis(alg, x)
    check_basis(alg, y)
    elem = bracket_basis(alg, x, y)
    out = elem.to_json()
    if args.text:
        _write(args.out, str(elem) + "\n")
    else:
        _write(args.out, _dump(out) + "\n")
    return EXIT_OK


def cmd_dump_constants(args) -> int:
    if args.bound < 1:
        raise UsageError("--bound must be >= 1")
    alg = _algebra(args)
    rows = list(structure_constants(alg, args.bound))
    if args.out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["x", "y", "basis", "coeff"])
        writer.writerows(rows)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["x", "y", "basis", "coeff"])
            writer.writerows(rows)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc.strerror}") from None
    return EXIT_OK


def cmd_act(args) -> int:
    desc = _read_json(args.module)
    module = module_from_json(desc)
    x = parse_basis(args.generator)
    check_basis(module.algebra, x)
    data = _read_json(args.vector)
    comps = data["comps"] if isinstance(data, dict) and "comps" in data and "module" in data else data
    if not isinstance(comps, dict):
        raise UsageError("vector must be a JSON object of components")
    vec = module.vector_from_json(comps)
    img = module.act(x, vec)
    _write(args.out, _dump({"module": module.descriptor(), "comps": module.vector_to_json(img)}) + "\n")
    return EXIT_OK


def cmd_omega(args) -> int:
    op = omega_build(args.p, args.l, args.m, args.i, args.j, args.s)
    _write(args.out, _dump(op.to_json()) + "\n")
    return EXIT_OK


def cmd_run_suite(args) -> int:
    if args.config is None:
        raise UsageError("run-suite needs --config PATH (or --builtin NAME)")
    config = load_config(args.config)
    report = run_suite(config, timings=args.timings)
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    _write(args.out, text)
    s = report["summary"]
    print(
        f"suite {report['suite'] or args.config}: {report['status']} "
        f"({s['checks']} checks, {s['failed']} failed, {s['skipped']} skipped, {s['cases']} cases)",
        file=sys.stderr,
    )
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def cmd_probe_span(args) -> int:
    module = module_from_json(_read_json(args.module))
    seed = module.vector_from_json(_read_json(args.seed))
    report = cyclic_span_probe(
        module, seed, args.gen_bound, args.window, args.degree_bound, args.max_depth, margin=args.margin
    )
    _write(args.out, _dump(report.to_json()) + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def builtin_suite(name: str) -> str:
    """Filesystem path of a suite shipped with the package."""
    ref = resources.files("hvgap") / "suites" / f"{name}.suite"
    if not ref.is_file():
        raise UsageError(f"no built-in suite named {name!r}")
    return str(ref)


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hvgap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def algebra_flags(sp):
        sp.add_argument("--algebra", choices=("thv", "gap", "mirror"), default="thv")
        sp.add_argument("--p", type=int, default=None, help="gap parameter (with --algebra gap)")

    sp = sub.add_parser("bracket", help="bracket of two basis elements, as JSON")
    algebra_flags(sp)
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("--text", action="store_true", help="human-readable output")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bracket)

    sp = sub.add_parser("dump-constants", help="CSV of nonzero structure constants")
    algebra_flags(sp)
    sp.add_argument("--bound", type=int, default=2)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_dump_constants)

    sp = sub.add_parser("act", help="apply a generator to a module vector")
    sp.add_argument("module", help="descriptor JSON or @path")
    sp.add_argument("generator", help="basis element, e.g. L:2")
    sp.add_argument("vector", help="vector JSON (components) or @path")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("omega", help="the Omega operator as a formal UE element")
    sp.add_argument("--p", type=int, required=True)
    for name in ("l", "m", "i", "j", "s"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_omega)

    sp = sub.add_parser("run-suite", help="run a configured check suite")
    sp.add_argument("--config")
    sp.add_argument("--builtin", help="name of a shipped suite (e.g. full)")
    sp.add_argument("--out", help="report path (default: standard output)")
    sp.add_argument("--timings", action="store_true", help="include wall_time_ms (reports are then not byte-stable)")
    sp.set_defaults(func=cmd_run_suite)

    sp = sub.add_parser("probe-span", help="cyclic span probe from a seed vector")
    sp.add_argument("--module", required=True, help="descriptor JSON or @path")
    sp.add_argument("--seed", required=True, help="seed vector JSON or @path")
    sp.add_argument("--gen-bound", type=int, default=4)
    sp.add_argument("--window", type=int, default=3)
    sp.add_argument("--degree-bound", type=int, default=0)
    sp.add_argument("--max-depth", type=int, default=50)
    sp.add_argument("--margin", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_probe_span)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "builtin", None):
            args.config = builtin_suite(args.builtin)
        return args.func(args)
    except (UsageError, ConfigError, ScalarParseError, AlgebraError, RestrictedModuleError, ModuleError) as exc:
        print(f"hvgap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, TypeError) as exc:
        print(f"hvgap: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
