"""Command line front end.

Exit codes: 0 success, 2 unreadable input, 3 mathematical precondition
failure, 4 certification failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import report
from .complex import compare_resolutions
from .errors import CertificationFailure, FoliationError, ParseError, PreconditionError
from .fixtures import load_fixture
from .linfty import build_universal_q
from .specfile import parse_spec

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_CERTIFICATION = 0, 2, 3, 4


class _InputError(Exception):
    pass


def _load_specs(args):
    specs = []
    try:
        for path in args.spec:
            try:
                with open(path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
            specs.append(parse_spec(text, name=path))
        for fx in args.fixture or []:
            specs.append(load_fixture(fx))
        if args.point:
            extra = [(f"p{k + 1}", _parse_point(p)) for k, p in enumerate(args.point)]
            for s in specs:
                for tag, pt in extra:
                    if len(pt) != s.ring.nvars:
                        raise ParseError(f"--point {','.join(map(str, pt))} has {len(pt)} coordinates, base has {s.ring.nvars}")
                s.points = extra
    except FoliationError as exc:
        raise _InputError(str(exc)) from exc
    return specs


def _parse_point(text: str) -> tuple:
    parts = [p.strip() for p in text.replace(";", ",").split(",")]
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point {text!r}") from exc


def _one(specs, cmd):
    if len(specs) != 1:
        raise _InputError(f"{cmd} needs exactly one input (file or --fixture)")
    return specs[0]


def run_pipeline(spec, command: str, **options) -> dict:
    """Run one command on already loaded input; returns the report tree.

    ``spec`` is a FoliationSpec, or a pair of them for ``compare``.
    ``options`` takes the command line option names (max_degree,
    max_length, samples, point, timings).
    """
    args = make_parser().parse_args([command])
    for k, v in options.items():
        setattr(args, k, v)
    specs = list(spec) if isinstance(spec, (list, tuple)) else [spec]
    return run(args, specs)


def run(args, specs=None) -> dict:
    if specs is None:
        specs = _load_specs(args)
    cmd = args.command
    timings = {}
    t0 = time.perf_counter()
    if cmd == "compare":
        if len(specs) != 2:
            raise _InputError("compare needs two inputs")
        A, B = (s.resolve(args.max_length) for s in specs)
        pair = compare_resolutions(A, B)
        tree = {"first": specs[0].name, "second": specs[1].name, **report.compare_tree(pair)}
        if not all(pair.checks.values()):
            raise CertificationFailure("chain map identities failed: " + str(pair.checks))
    else:
        spec = _one(specs, cmd)
        max_length = args.max_length if args.max_length is not None else spec.options.get("max_length")
        if cmd == "invariants":
            D = args.max_degree if args.max_degree is not None else spec.options.get("max_degree", 2)
            tree = {"foliation": spec.name, **report.invariants_tree(spec.generators, D, spec.ring)}
        else:
            res = spec.resolve(max_length)
            timings["resolve"] = time.perf_counter() - t0
            if cmd == "resolve":
                tree = {"foliation": spec.name, "variables": list(spec.ring.names), "resolution": report.resolution_tree(res)}
            else:
                q = build_universal_q(res)
                timings["build"] = time.perf_counter() - t0
                if cmd == "build":
                    tree = report.build_tree(spec.name, spec.ring.names, res, q)
                elif cmd == "check":
                    samples = args.samples if args.samples is not None else spec.options.get("samples", 50)
                    tree = {"foliation": spec.name, **report.check_tree(q, samples, spec.options.get("seed", 0))}
                    if not tree["ok"]:
                        raise CertificationFailure("certification failed")
                elif cmd == "holonomy":
                    if not spec.points:
                        raise _InputError("holonomy needs at least one point ([point] section or --point)")
                    bound = spec.options.get("degree_bound")
                    tree = {"foliation": spec.name, **report.holonomy_tree(q, spec.points, bound)}
                else:
                    raise _InputError(f"unknown command {cmd}")
    timings["total"] = time.perf_counter() - t0
    tree = {"command": cmd, **tree}
    if args.timings:
        tree["timings"] = {k: f"{v:.3f}s" for k, v in timings.items()}
    return tree


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="foliation-linfty",
        description="Resolutions and universal Lie infinity-algebroids of polynomial singular foliations.",
    )
    p.add_argument("command", choices=["resolve", "build", "check", "holonomy", "invariants", "compare"])
    p.add_argument("spec", nargs="*", help="input file(s) in the foliation format")
    p.add_argument("--fixture", action="append", help="built-in example NAME[:key=value,...]")
    p.add_argument("--point", action="append", help="evaluation point, comma separated (repeatable)")
    p.add_argument("--max-degree", type=int, help="degree bound for invariant polynomials")
    p.add_argument("--max-length", type=int, help="longest resolution allowed")
    p.add_argument("--samples", type=int, help="random samples for the Jacobi check")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        tree = run(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CertificationFailure as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except PreconditionError as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    out = report.render_json(tree) if args.json else report.render_text(tree) + "\n"
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
