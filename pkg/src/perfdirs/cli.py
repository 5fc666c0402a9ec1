"""Command-line front end.

Exit status: 0 on success, 1 on bad input, 2 when a checked mathematical
statement fails (theorem verdict, uncertainty dichotomy, construction
prediction). Status 2 always means a bug somewhere.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import sys
from typing import Optional, Sequence

from . import analysis, constructions, search, spectral
from .errors import PerfDirsError
from .weights import (
    fraction_str,
    parse_real_weight,
    parse_weight,
    rationalize,
    weight_to_dict,
)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class InputError(Exception):
    pass


def _read_input(arg: Optional[str]):
    if arg is None:
        raise InputError("missing --input")
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith("{"):
        text = arg
    else:
        try:
            with open(arg, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read input {arg!r}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {arg!r}: {exc}") from None


def _emit(doc, out) -> None:
    out.write(json.dumps(doc, indent=2, sort_keys=False))
    out.write("\n")


def _emit_csv(rows, out) -> None:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    out.write(buf.getvalue())


def cmd_analyze(args, out) -> int:
    w = parse_weight(_read_input(args.input))
    report = analysis.perfect_directions(w)
    if args.format == "csv":
        _emit_csv(report.csv_rows(), out)
    else:
        _emit(report.to_dict(), out)
    return EXIT_OK


def cmd_spectrum(args, out) -> int:
    w = parse_weight(_read_input(args.input))
    spec = spectral.fourier_support(w)
    if args.format == "csv":
        rows = [["slope", "count"]] + [[str(d), str(k)] for d, k in spec.by_direction]
        _emit_csv(rows, out)
        return EXIT_OK
    doc = {"spectrum": spec.to_dict()}
    status = EXIT_OK
    if w:
        n = analysis.perfect_directions(w).N
        bound = spectral.check_support_bound(w, n)
        doc["supportBound"] = dict(bound.to_dict(), N=n)
        if not bound.holds:
            status = EXIT_VIOLATION
    _emit(doc, out)
    return status


def _parse_point(text: str):
    try:
        x, y = (int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"expected a point as x,y, got {text!r}") from None
    return (x, y)


def cmd_construct(args, out) -> int:
    if args.p is None:
        raise InputError("construct needs --p")
    kind = args.kind
    if kind == "so2":
        if args.n is None:
            raise InputError("construct so2 needs --n")
        z = _parse_point(args.z) if args.z else (1, 0)
        result = constructions.so2_orbit_example(args.p, args.n, z)
    elif kind == "power":
        result = constructions.power_graph_example(args.p)
    elif kind == "twolines":
        result = constructions.two_lines_example(args.p, parallel=args.parallel_lines)
    else:
        result = constructions.small_support_example(args.p)
    doc = result.to_dict()
    status = EXIT_OK
    if args.check:
        report = analysis.perfect_directions(result.w)
        verdict = analysis.verify_main_theorem(result.w)
        match = report.N == result.predicted_n and (
            result.predicted_d is None or report.D == result.predicted_d
        )
        doc["check"] = {
            "N": report.N,
            "D": report.D,
            "perfect": [str(d) for d in sorted(report.perfect)],
            "match": match,
            "theorem": verdict.to_dict(),
        }
        if not (match and verdict.passed):
            status = EXIT_VIOLATION
    _emit(doc, out)
    return status


def cmd_verify(args, out) -> int:
    w = parse_weight(_read_input(args.input))
    verdict = analysis.verify_main_theorem(w)
    unc = spectral.check_uncertainty(w)
    _emit({"theorem": verdict.to_dict(), "uncertainty": unc.to_dict()}, out)
    return EXIT_OK if verdict.passed and unc.satisfied else EXIT_VIOLATION


def cmd_redei(args, out) -> int:
    w = parse_weight(_read_input(args.input))
    result = analysis.redei_megyesi_check(w.support, w.p)
    _emit(result.to_dict(), out)
    return EXIT_OK if result.passed else EXIT_VIOLATION


def cmd_search(args, out) -> int:
    doc = _read_input(args.input)
    spec = search.SearchSpec.from_dict(doc)
    if args.seed is not None:
        spec = dataclasses.replace(spec, seed=args.seed)
    result = search.run_search(spec, parallel=args.parallel, resume=args.resume)
    bad = [w for w in result.witnesses if analysis.perfect_count(w) != result.best_n]
    _emit(dict(result.to_dict(), spec=spec.to_dict()), out)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_rationalize(args, out) -> int:
    real = parse_real_weight(_read_input(args.input))
    result = rationalize(real, args.max_q)
    _emit(
        {"Q": result.q, "maxError": fraction_str(result.max_error), "weight": weight_to_dict(result.weight)},
        out,
    )
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "spectrum": cmd_spectrum,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "redei": cmd_redei,
    "search": cmd_search,
    "rationalize": cmd_rationalize,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perfdirs", description="Perfect and determined directions of weights on F_p^2."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    def with_input(name, help_text, formats=("json",)):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--input", help="path, '-' for stdin, or inline JSON")
        sp.add_argument("--format", choices=formats, default="json")
        return sp

    with_input("analyze", "line sums, perfect and determined directions", ("json", "csv"))
    with_input("spectrum", "Fourier support and the support bound", ("json", "csv"))
    with_input("verify", "main theorem verdict and uncertainty check")
    with_input("redei", "direction count of a p-point set")

    sp = sub.add_parser("construct", help="build an extremal example")
    sp.add_argument("kind", choices=["so2", "power", "twolines", "smallsupport"])
    sp.add_argument("--p", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--z", help="base point x,y for so2 (default 1,0)")
    sp.add_argument("--parallel-lines", action="store_true", help="twolines: parallel variant")
    sp.add_argument("--check", action="store_true", help="run the analysis and compare")
    sp.add_argument("--format", choices=("json",), default="json")

    sp = sub.add_parser("search", help="run a search spec")
    sp.add_argument("--input")
    sp.add_argument("--parallel", type=int, default=1)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--resume", help="checkpoint file of completed ranges")
    sp.add_argument("--format", choices=("json",), default="json")

    sp = with_input("rationalize", "approximate decimal weights by rationals")
    sp.add_argument("--max-q", type=int, default=10**6)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return COMMANDS[args.verb](args, out)
    except (InputError, PerfDirsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
