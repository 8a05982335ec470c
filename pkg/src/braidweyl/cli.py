"""Command-line front end: ``nc normalize | act | radial | limit | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage, parse or table error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import re
import sys
from typing import List, Optional

from .calculus import apply_operator
from .hecke import limit_q1
from .parsing import ParseError, evaluate, parse
from .pbw import RelationTable, RewriteBudgetExceeded, TableError, render_word
from .poly import parse_poly
from .radial import RadialError, radial_apply
from .scalars import PoleError, substitute
from .tables import TABLE_IDS, load_table


class UsageError(Exception):
    pass


def _table(ref: str) -> RelationTable:
    try:
        return load_table(ref)
    except KeyError as err:
        raise UsageError(err.args[0]) from None
    except (ValueError, TableError, OSError) as err:
        raise UsageError(f"cannot load table {ref!r}: {err}") from None


def _element(src: str, table: RelationTable):
    ast = parse(src, list(table.names) + list(table.aliases))
    return evaluate(ast, table)


def cmd_normalize(args) -> int:
    t = _table(args.table)
    print(t.render(t.normal_form(_element(args.expr, t))))
    return 0


def cmd_act(args) -> int:
    t = _table(args.table)
    op = _element(args.op, t)
    f = _element(args.expr, t)
    if any(t.by_name[a].sort != "coordinate" for w in f.terms for a in w):
        raise UsageError("the element must not contain derivatives")
    print(t.render(apply_operator(op, f, t)))
    return 0


_LAMBDA = re.compile(r"\blambda\b")
_LAM = re.compile(r"\blam\b")


def cmd_radial(args) -> int:
    src = _LAMBDA.sub("lam", args.expr)
    f = parse_poly(src, ("lam", "mu"))
    out = radial_apply(f).in_lam_mu()
    print(_LAM.sub("lambda", out.render(["lam", "mu"])))
    return 0


def _hbar0(t: RelationTable) -> RelationTable:
    def at0(c):
        try:
            return substitute(c, "h", 0)
        except PoleError:
            raise UsageError(f"table {t.name} has a pole at h = 0") from None

    out = t.map_coefficients(at0, name=f"{t.name}|h=0", parameters=t.parameters - {"h"})
    alphabet = [dataclasses.replace(g, counit=at0(g.counit)) for g in out.alphabet]
    return RelationTable(alphabet, out.rules, out.parameters, name=out.name,
                         weights=out.weights, aliases=out.aliases)


def cmd_limit(args) -> int:
    t = _table(args.table)
    try:
        out = limit_q1(t) if args.q1 else _hbar0(t)
    except PoleError as err:
        raise UsageError(str(err)) from None
    if args.json:
        print(out.dumps())
    else:
        for r in out.rules:
            print(f"{render_word(r.lhs)} -> {out.render(r.rhs)}")
    return 0


def cmd_verify(args) -> int:
    from .verify import SUITES, check_table_file, run_suite

    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}")
    checks = check_table_file(args.table) if args.table else run_suite(args.suite)
    ok = all(c.passed for c in checks)
    if args.json:
        print(json.dumps([c.to_json() for c in checks], indent=2, default=str))
    else:
        for c in checks:
            line = f"{c.status.upper():4}  {c.check}"
            if c.witness:
                line += f"\n      witness: {c.witness}"
            print(line)
    if not ok:
        first = next(c for c in checks if not c.passed)
        print(f"verification failed: {first.check}" + (f": {first.witness}" if first.witness else ""),
              file=sys.stderr)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nc", description="Braided Weyl algebra calculator.")
    sub = p.add_subparsers(dest="command", required=True)
    tables = f"table id ({', '.join(TABLE_IDS)}) or a JSON file"

    s = sub.add_parser("normalize", help="normal form of an expression")
    s.add_argument("table", help=tables)
    s.add_argument("expr")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("act", help="apply an operator to an element")
    s.add_argument("table", help=tables)
    s.add_argument("op")
    s.add_argument("expr")
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("radial", help="radial part of the Laplacian on f(lambda, mu)")
    s.add_argument("expr")
    s.set_defaults(func=cmd_radial)

    s = sub.add_parser("limit", help="q -> 1 or h -> 0 limit of a table")
    s.add_argument("table", help=tables)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--q1", action="store_true")
    g.add_argument("--hbar0", action="store_true")
    s.add_argument("--json", action="store_true", help="print the table as JSON")
    s.set_defaults(func=cmd_limit)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", help="all, tables, prop6, eigen, derham, ch, pi, radial, poisson, confluence")
    s.add_argument("--json", action="store_true")
    s.add_argument("--table", help="check a user table file instead of the bundled data")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 0 if err.code == 0 else 2
    try:
        return args.func(args)
    except (UsageError, ParseError, RadialError, ValueError, TableError, RewriteBudgetExceeded) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
