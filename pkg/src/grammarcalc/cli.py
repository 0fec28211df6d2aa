"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import combinat as cb
from .bijection import format_trace, phi, phi_trace, psi
from .grammar import derive_n, load_grammar
from .laurent import Monomial, parse_poly
from .series import egf
from .suites import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FAMILIES = {
    "eulerian": cb.eulerian_oracle,
    "cyclic": cb.cyclic_oracle,
    "lah": cb.list_partition_oracle,
    "andre": cb.andre_oracle,
    "tree-degrees": cb.tree_degree_oracle,
    "tree-parity": cb.tree_parity_oracle,
}


class UsageError(Exception):
    pass


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


# -- derive / egf ---------------------------------------------------------------------


def cmd_derive(args) -> int:
    g = load_grammar(args.grammar)
    word = parse_poly(args.word)
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    result = derive_n(g, word, args.n)
    _emit(args, str(result),
          {"grammar": args.grammar, "word": str(word), "n": args.n, "result": str(result)})
    return EXIT_OK


def cmd_egf(args) -> int:
    g = load_grammar(args.grammar)
    if args.order < 0:
        raise UsageError("--order must be nonnegative")
    series = egf(g, parse_poly(args.word), args.order)
    if args.format == "json":
        print(series.to_json())
    else:
        print(series.to_text())
    return EXIT_OK


# -- enumerate -----------------------------------------------------------------------


def triangle_rows(name: str, max_n: int) -> dict[str, list[int]]:
    rows = {}
    for n in range(1, max_n + 1):
        if name == "A":
            row = cb.eulerian_row(n)
        elif name == "C":
            poly = cb.stirling_oracle(n, 2)
            row = [int(poly.coefficient(Monomial({"x": m, "y": 2 * n + 1 - m}))) for m in range(1, n + 1)]
        elif name == "T":
            row = list(cb.peaks_oracle(n).values())
        elif name == "L":
            row = [cb.lah_number(n, k) for k in range(1, n + 1)]
        else:
            raise UsageError(f"unknown triangle {name!r}")
        rows[str(n)] = row
    return rows


def cmd_enumerate(args) -> int:
    if args.triangle:
        if args.max_n is None:
            raise UsageError("--triangle needs --max-n")
        rows = triangle_rows(args.triangle, args.max_n)
        text = "\n".join(f"{n}: {' '.join(map(str, r))}" for n, r in rows.items())
        _emit(args, text, {"name": args.triangle, "rows": rows})
        return EXIT_OK
    if args.family is None or args.n is None:
        raise UsageError("enumerate needs --family and --n, or --triangle and --max-n")
    if args.family == "stirling":
        poly = cb.stirling_oracle(args.n, args.r)
    elif args.family == "peaks":
        row = cb.peaks_oracle(args.n)
        poly = cb.peaks_polynomial(row, args.n)
    else:
        poly = FAMILIES[args.family](args.n)
    _emit(args, str(poly), {"family": args.family, "n": args.n, "result": str(poly)})
    return EXIT_OK


# -- verify --------------------------------------------------------------------------


def cmd_verify(args) -> int:
    report = run_suites(args.suite, args.max_n, args.order)
    if args.format == "json":
        print(report.to_json())
    else:
        for line in report.lines():
            print(line)
        print(f"{len(report.checks) - len(report.failures)}/{len(report.checks)} checks passed")
    if args.report:
        Path(args.report).write_text(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


# -- bijection -----------------------------------------------------------------------


def _parse_perm(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text.startswith("{"):
        values = json.loads(text)["perm"]
    else:
        values = [int(s) for s in text.split(",")]
    return cb.check_permutation(values)


def _parse_tree(text: str) -> cb.IncreasingTree:
    text = text.strip()
    if text.startswith("{"):
        data = json.loads(text)
        tree = cb.IncreasingTree(tuple(data["parents"]))
        if tree.n != data["n"]:
            raise ValueError("tree JSON: n does not match the parent list")
        return tree
    return cb.IncreasingTree.from_wire(text)


def cmd_bijection(args) -> int:
    if args.direction == "phi":
        if args.perm is None:
            raise UsageError("phi needs --perm")
        perm = _parse_perm(args.perm)
        if not perm:
            raise UsageError("empty permutation")
        tree = phi(perm)
        if args.trace:
            steps = phi_trace(perm)
            if args.format == "json":
                print(json.dumps({
                    "tree": tree.to_dict(),
                    "trace": [{"k": s.k, "M": None if s.M is None else list(s.M), "i": s.i_k,
                               "I": list(s.I), "J": list(s.J)} for s in steps],
                }))
            else:
                print(format_trace(steps))
                print(tree.to_wire())
            return EXIT_OK
        _emit(args, tree.to_wire(), tree.to_dict())
    else:
        if args.tree is None:
            raise UsageError("psi needs --tree")
        tree = _parse_tree(args.tree)
        if tree.n < 1:
            raise UsageError("empty tree")
        perm = psi(tree)
        _emit(args, ",".join(map(str, perm)), {"perm": list(perm)})
    return EXIT_OK


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="grammarcalc",
        description="Formal derivatives of context-free grammars, enumeration oracles, "
                    "and the peaks/increasing-trees bijection.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", parents=[fmt], help="iterate the formal derivative")
    p.add_argument("--grammar", required=True, help="builtin name or grammar file")
    p.add_argument("--word", required=True, help="Laurent polynomial")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("egf", parents=[fmt], help="truncated Gen(w, t)")
    p.add_argument("--grammar", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--order", type=int, default=10)
    p.set_defaults(func=cmd_egf)

    p = sub.add_parser("enumerate", parents=[fmt], help="brute-force enumeration")
    p.add_argument("--family", choices=sorted([*FAMILIES, "stirling", "peaks"]))
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int, default=2, help="multiplicity for stirling")
    p.add_argument("--triangle", choices=("A", "C", "T", "L"))
    p.add_argument("--max-n", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[fmt], help="run identity checks")
    p.add_argument("--suite", choices=["all", *sorted(SUITES)], default="all")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--report", help="also write the JSON report to this file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bijection", parents=[fmt], help="apply phi or psi")
    p.add_argument("direction", choices=("phi", "psi"))
    p.add_argument("--perm", help="one-line word, e.g. 5,3,4,6,7,2,1")
    p.add_argument("--tree", help="parent list of vertices 1..n, e.g. 0,1,2,0,4,2,2")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_bijection)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, ArithmeticError, OSError, KeyError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
