"""Command-line front end: ``arcadian prove|check|automaton|oracle``."""
from __future__ import annotations

import argparse
import sys
import warnings

from arcadian.construction import automaton_to_json, build, dump_table
from arcadian.engine import Budget, Exhausted, prove
from arcadian.formula import FormulaError, parse, show
from arcadian.lexer import ParseError
from arcadian.proofterm import parse_term, show_term, type_check
from arcadian.oracle import NotPropositional, decide_prop

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="arcadian",
                description="Proof search for intuitionistic first-order logic.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pr = sub.add_parser("prove", help="search for a proof term")
    pr.add_argument("formula")
    pr.add_argument("--fuel", type=int, default=Budget().depth, help="maximum run depth")
    pr.add_argument("--max-eigen", type=int, default=Budget().max_eigen,
                    help="maximum number of eigenvariables")
    pr.add_argument("--emit", choices=("term", "json", "dot"), default="term")

    ch = sub.add_parser("check", help="type-check a proof term against a formula")
    ch.add_argument("--formula", required=True)
    ch.add_argument("--term", required=True, help="file holding the term, or - for stdin")

    au = sub.add_parser("automaton", help="print the automaton of a formula")
    au.add_argument("formula")
    au.add_argument("--dump", action="store_true", help="print the instruction table")
    au.add_argument("--json", action="store_true", help="print the automaton as JSON")

    orc = sub.add_parser("oracle", help="decide a propositional formula")
    orc.add_argument("formula")
    return p


def _prove(args) -> int:
    phi = parse(args.formula)
    res = prove(phi, Budget(args.fuel, args.max_eigen))
    if not res.proved:
        what = "no proof exists" if isinstance(res, Exhausted) else "no proof within fuel"
        print(f"{what} (searched {res.stats.expanded} IDs)", file=sys.stderr)
        return EXIT_NO
    if args.emit == "term":
        print(show_term(res.term))
    elif args.emit == "json":
        print(res.run.to_json(show(res.formula)))
    else:
        sys.stdout.write(res.run.to_dot())
    return EXIT_OK


def _check(args) -> int:
    phi = parse(args.formula)
    if args.term == "-":
        text = sys.stdin.read()
    else:
        with open(args.term, encoding="utf-8") as fh:
            text = fh.read()
    term = parse_term(text.strip())
    res = type_check({}, term, phi)
    if res.ok:
        print("ok")
        return EXIT_OK
    print(f"rejected: {res.reason}", file=sys.stderr)
    return EXIT_ERROR


def _automaton(args) -> int:
    aut, table = build(parse(args.formula))
    if args.json:
        print(automaton_to_json(aut))
    else:
        sys.stdout.write(dump_table(aut, table))
    return EXIT_OK


def _oracle(args) -> int:
    valid = decide_prop(parse(args.formula))
    print("valid" if valid else "invalid")
    return EXIT_OK if valid else EXIT_NO


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    handler = {"prove": _prove, "check": _check, "automaton": _automaton,
               "oracle": _oracle}[args.command]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            code = handler(args)
        except ParseError as exc:
            print(f"parse error: {exc}", file=sys.stderr)
            code = EXIT_ERROR
        except (FormulaError, NotPropositional, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            code = EXIT_ERROR
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
