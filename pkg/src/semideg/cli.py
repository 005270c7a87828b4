"""Command-line front end.

Exit codes: 0 success, 2 invalid datum, 3 unparsable input, 4 internal
consistency failure.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path
from typing import TextIO

from . import __version__
from .conescan import ScanBudget, emit, scan
from .exact import ParseError, ZeroPolynomialError, format_rational, parse_expr, parse_puiseux, parse_rational
from .expansion import MinRealizationError, adic_expand, weight
from .geometry import CrossCheckError, describe, geometry_report, rat_json
from .keyforms import KeyFormError, KeyFormSequence, compute_key_forms
from .semidegree import InvalidSpecError, SemidegreeSpec, check, evaluate, format_datum, parse_datum, parse_scale

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PARSE = 3
EXIT_INTERNAL = 4

_VALUE_FLAGS = {"--phi", "--r", "--scale", "--poly", "--seed"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="semideg", description="Key forms and classification of plane semidegrees.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def datum_args(p):
        p.add_argument("--phi", help="Puiseux polynomial, e.g. 'x^(5/2) + x^(-1)'")
        p.add_argument("--r", help="rational exponent of the generic term, e.g. -14/5")
        p.add_argument("--scale", default="auto", help="delta(x) as an integer, or 'auto' (default)")
        p.add_argument("--datum", type=Path, help="file holding 'phi = ...; r = ...; scale = ...'")
        p.add_argument("--format", choices=["json", "csv", "human"], default=None)
        p.add_argument("--out", type=Path, help="output file (default: stdout)")

    p = sub.add_parser("eval", help="print delta(f)")
    datum_args(p)
    p.add_argument("--poly", required=True)
    p = sub.add_parser("keyforms", help="print the key-form sequence")
    datum_args(p)
    p = sub.add_parser("classify", help="print the geometry report")
    datum_args(p)
    p = sub.add_parser("expand", help="print the key-form-adic presentation of f")
    datum_args(p)
    p.add_argument("--poly", required=True)
    p = sub.add_parser("scan", help="sample (deg f, delta f) over polynomials")
    datum_args(p)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--max-terms", type=int, default=4)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-extremal", action="store_true", help="skip the minimal-delta witnesses")
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    """Let ``--r -14/5`` through: argparse would read ``-14/5`` as a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def load_spec(args) -> SemidegreeSpec:
    if args.datum is not None:
        spec = parse_datum(args.datum.read_text())
    else:
        if args.phi is None or args.r is None:
            raise UsageError("either --datum or both --phi and --r are required")
        spec = parse_scale(args.scale, parse_puiseux(args.phi), parse_rational(args.r))
    return check(spec)


def keyforms_json(seq: KeyFormSequence) -> dict:
    return {
        "datum": format_datum(seq.spec),
        "forms": [
            {
                "index": j,
                "g": str(st.g),
                "omega": st.omega,
                "alpha": st.alpha,
                "beta": None if st.beta is None else list(st.beta),
                "theta": None if st.theta is None else rat_json(st.theta),
                "substituted": str(st.substituted),
            }
            for j, st in enumerate(seq.steps)
        ],
    }


def _keyforms_human(seq: KeyFormSequence) -> str:
    lines = [f"datum: {format_datum(seq.spec)}"]
    for j, st in enumerate(seq.steps):
        line = f"g_{j} = {st.g}    omega = {st.omega}"
        if st.alpha is not None:
            line += f"    alpha = {st.alpha}    beta = {list(st.beta)}    theta = {format_rational(st.theta)}"
        lines.append(line)
    return "\n".join(lines)


def _run(args, out: TextIO) -> None:
    spec = load_spec(args)
    cmd = args.command
    fmt = args.format

    if cmd == "eval":
        f = parse_expr(args.poly)
        value = evaluate(spec, f)
        if fmt == "json":
            _dump({"poly": str(f), "value": value}, out)
        else:
            out.write(f"{value}\n")
        return

    seq = compute_key_forms(spec)

    if cmd == "keyforms":
        if fmt == "human":
            out.write(_keyforms_human(seq) + "\n")
        else:
            _dump(keyforms_json(seq), out)
    elif cmd == "classify":
        report = geometry_report(seq)
        if fmt == "human":
            out.write(_keyforms_human(seq) + "\n" + describe(report) + "\n")
        else:
            data = {"datum": format_datum(spec), "keyForms": [str(g) for g in seq.forms],
                    "omegas": seq.omegas, **report.to_json()}
            _dump(data, out)
    elif cmd == "expand":
        f = parse_expr(args.poly)
        pres = adic_expand(f, seq)
        w = weight(pres, seq.omegas)
        if fmt == "human":
            out.write(f"{f} = {pres}\nweight = {w}\n")
        else:
            terms = [
                {"a": a, "m": list(m), "coeff": rat_json(c)}
                for (a, m), c in sorted(pres.terms.items())
            ]
            _dump({"poly": str(f), "forms": [str(g) for g in seq.forms], "presentation": terms,
                   "text": str(pres), "weight": w, "delta": evaluate(spec, f)}, out)
    elif cmd == "scan":
        budget = ScanBudget(args.max_degree, args.max_terms, args.samples, args.seed, not args.no_extremal)
        result = scan(spec, seq, budget)
        if fmt == "human":
            s = result.to_json()["summary"]
            out.write(json.dumps(s, indent=2, sort_keys=True) + "\n")
        else:
            emit(result, fmt or "json", out)


def _dump(data: dict, out: TextIO) -> None:
    json.dump(data, out, indent=2, sort_keys=True)
    out.write("\n")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_join_negative_values(argv))
    except UsageError as exc:
        print(f"semideg: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    buf = io.StringIO()
    try:
        _run(args, buf)
        if args.out is not None:
            args.out.write_text(buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
    except InvalidSpecError as exc:
        print(f"semideg: invalid datum: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ParseError, UsageError) as exc:
        print(f"semideg: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ZeroPolynomialError as exc:
        print(f"semideg: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (KeyFormError, CrossCheckError, MinRealizationError, AssertionError) as exc:
        print(f"semideg: internal check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"semideg: {exc}", file=sys.stderr)
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
