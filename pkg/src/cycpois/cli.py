"""Command-line front end.

Subcommands: ``validate`` (coalgebra identity report), ``pairings``
(solve for cyclic pairings of a given degree), ``check`` (run named
check suites), ``homology`` (two-engine homology comparison),
``trace`` (image of a cyclic class in the representation algebra) and
``report`` (full JSON report).

Exit codes: 0 when every requested check passes, 1 when a check fails
(the report is still written), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import inspect
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import verify
from .coalg import (builtin, coalgebra_from_data, load_coalgebra,
                    solve_cyclic_pairings, validate)
from .freealg import TensorElement, TruncatedAlgebra

F = Fraction


class InputError(Exception):
    """Anything wrong with user-supplied files, names or expressions."""


# ---------------------------------------------------------------------------
# input helpers


def resolve_coalgebra(source: str):
    """A builtin name, or a path to a .toml/.json description."""
    path = Path(source)
    if path.exists():
        try:
            return load_coalgebra(path)
        except Exception as exc:
            raise InputError(f"{source}: {exc}") from exc
    try:
        return builtin(source)
    except KeyError:
        raise InputError(
            f"{source!r} is neither a readable file nor a builtin name")


_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<coeff>\d+(?:/\d+)?)\s*\*?"
                    r"|(?P<word>\(\s*[\w',]*\s*\)))")


def parse_class_expr(expr: str, A: TruncatedAlgebra) -> TensorElement:
    """Linear combinations of cyclic words, e.g. ``2*(x,y) - (y,x)``.

    Coefficients are exact rationals; words are parenthesized
    comma-separated generator names.
    """
    terms: dict = {}
    pos = 0
    sign, coeff, expect_word = F(1), None, False
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if not m or m.end() == pos:
            raise InputError(f"class expression: parse error at column "
                             f"{pos + 1} of {expr!r}")
        pos = m.end()
        if m.group("sign"):
            if expect_word or coeff is not None:
                raise InputError(f"class expression: dangling coefficient "
                                 f"before column {pos} of {expr!r}")
            sign = sign * (F(-1) if m.group("sign") == "-" else F(1))
        elif m.group("coeff"):
            if coeff is not None:
                raise InputError(f"class expression: two coefficients in a "
                                 f"row in {expr!r}")
            coeff = F(m.group("coeff"))
            expect_word = True
        else:
            letters = tuple(l.strip() for l in
                            m.group("word")[1:-1].split(",") if l.strip())
            unknown = [l for l in letters if l not in A.deg]
            if unknown:
                raise InputError(f"unknown generators {unknown} "
                                 f"(have {sorted(A.deg)})")
            if len(letters) > A.W:
                raise InputError(f"word of weight {len(letters)} exceeds "
                                 f"truncation W={A.W}")
            c = sign * (coeff if coeff is not None else F(1))
            terms[letters] = terms.get(letters, F(0)) + c
            sign, coeff, expect_word = F(1), None, False
    if expect_word:
        raise InputError(f"class expression ends after a coefficient: "
                         f"{expr!r}")
    if not terms:
        raise InputError(f"empty class expression {expr!r}")
    return TensorElement({k: v for k, v in terms.items() if v})


def parse_range(text: str) -> range:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text.strip())
    if not m:
        raise InputError(f"range must look like a..b, got {text!r}")
    a, b = int(m.group(1)), int(m.group(2))
    if a > b:
        raise InputError(f"empty range {text!r}")
    return range(a, b + 1)


def write_report(doc: dict, output):
    text = json.dumps(doc, indent=2, sort_keys=True)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    c = resolve_coalgebra(args.file)
    report = validate(c)
    if report.ok:
        print(f"{c.name}: all 8 coalgebra identities hold")
        return 0
    for msg in report.structural:
        print(f"{c.name}: structural problem: {msg}")
    for name in report.failed_identities():
        print(f"{c.name}: FAILED {name}: witness {report.failures[name][0]!r}")
    return 1


def cmd_pairings(args) -> int:
    c = resolve_coalgebra(args.file)
    basis = solve_cyclic_pairings(c, args.degree)
    print(f"{c.name}: {len(basis)} independent cyclic pairing(s) of "
          f"degree {args.degree}")
    for i, sol in enumerate(basis):
        desc = ", ".join(f"<{a},{b}>={v}" for (a, b), v in sorted(sol.items()))
        print(f"  [{i}] {desc}")
    return 0


def _select_specs(token: str):
    specs = verify.registry()
    if token == "all":
        return specs
    picked = [s for s in specs if s.name == token or s.module == token
              or token in s.name]
    if not picked:
        known = sorted({s.module for s in specs} | {s.name for s in specs})
        raise InputError(f"no check suite matches {token!r}; "
                         f"known: all, {', '.join(known)}")
    return picked


def _apply_bounds(specs, args):
    """Thread CLI bounds into the runners that understand them."""
    override = None
    if getattr(args, "file", None):
        c = resolve_coalgebra(args.file)
        override = [(c.name, TruncatedAlgebra(c, max(args.weight, 2) + 2))]
    for s in specs:
        accepted = inspect.signature(s.runner).parameters
        if "max_weight" in accepted:
            s.params["max_weight"] = args.weight
        if "max_total" in accepted:
            s.params["max_total"] = args.weight + 1
        if override is not None and "algebras" in accepted:
            s.params["algebras"] = override
    if override is not None:
        specs = [s for s in specs
                 if "algebras" in inspect.signature(s.runner).parameters]
        if not specs:
            raise InputError("--file is only supported by the bracket "
                             "suites (skew, jacobi, action)")
    return specs


def cmd_check(args) -> int:
    specs = _apply_bounds(_select_specs(args.suite), args)
    jobs = int(os.environ.get("CYCPOIS_JOBS", "1"))
    reports = verify.run_suite(specs, jobs=jobs)
    for r in reports:
        print(f"{r.spec.module:10s} {r.spec.name:32s} {r.status:4s} "
              f"{r.count:7d} elements  {r.millis} ms")
        if not r.ok:
            print(f"  witness: {json.dumps(verify.jsonable(r.witness))}")
    if args.output:
        write_report(verify.suite_json(reports), args.output)
    return 0 if all(r.ok for r in reports) else 1


def cmd_homology(args) -> int:
    try:
        report = verify.homology_crosscheck(
            args.target, builtin_name=args.coalgebra, W=args.weight,
            n=args.n, D=args.poly_degree, g=args.g)
    except ValueError as exc:
        raise InputError(str(exc))
    degrees = parse_range(args.range) if args.range else None
    shown = {d: v for d, v in sorted(report.dims.items())
             if degrees is None or d in degrees}
    print(f"{args.target}: engines "
          f"{'agree' if report.ok else 'DISAGREE'}; "
          f"truncation-unsound degrees: {report.unsound or 'none'}")
    for d, v in shown.items():
        mark = " (unsound)" if d in report.unsound else ""
        print(f"  H_{d} = {v}{mark}")
    if not report.ok:
        print(f"  witness: {json.dumps(report.witness)}")
    return 0 if report.ok else 1


def cmd_trace(args) -> int:
    c = resolve_coalgebra(args.file)
    A = TruncatedAlgebra(c, args.weight)
    elem = parse_class_expr(args.class_expr, A)
    alpha = A.project_cyclic(elem)
    try:
        coords, report = verify.trace_on_homology(
            A, alpha, n=args.n, D=args.poly_degree)
    except ValueError as exc:
        raise InputError(str(exc))
    if not coords:
        print("trace class is zero on homology")
    else:
        terms = " + ".join(f"{v}*[h_{i}]" for i, v in sorted(coords.items()))
        print(f"trace class on homology: {terms}")
    print(f"(verified representative-independent, {report.millis} ms)")
    return 0


def cmd_report(args) -> int:
    jobs = int(os.environ.get("CYCPOIS_JOBS", "1"))
    reports = verify.run_suite(jobs=jobs)
    doc = verify.suite_json(reports)
    hom = []
    for target in ("cobar", "Rn", "Lg", "cone"):
        r = verify.homology_crosscheck(
            target, W=3 if target == "Rn" else 4)
        hom.append(r)
        doc["checks"].append(r.as_dict())
    write_report(doc, args.output)
    ok = all(r.ok for r in reports) and all(r.ok for r in hom)
    print(f"{sum(r.ok for r in reports + hom)}/{len(reports) + len(hom)} "
          f"checks passed", file=sys.stderr)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cycpois",
        description="Exact checks for cyclic pairings, necklace brackets "
                    "and representation-algebra traces.")
    sub = p.add_subparsers(dest="command", required=True)

    def bounds(q, weight=4):
        q.add_argument("--weight", "-W", type=int, default=weight,
                       help="truncation weight (default %(default)s)")
        q.add_argument("--poly-degree", "-D", type=int, default=3,
                       help="polynomial degree bound (default %(default)s)")
        q.add_argument("--n", type=int, default=2,
                       help="matrix size (default %(default)s)")

    q = sub.add_parser("validate", help="check the coalgebra identities")
    q.add_argument("file", help="builtin name or .toml/.json file")
    q.set_defaults(func=cmd_validate)

    q = sub.add_parser("pairings", help="solve for cyclic pairings")
    q.add_argument("file")
    q.add_argument("--degree", type=int, required=True,
                   help="degree of the pairing")
    q.set_defaults(func=cmd_pairings)

    q = sub.add_parser("check", help="run check suites")
    q.add_argument("suite", help="'all', a module name, or a check name")
    bounds(q)
    q.add_argument("--g", choices=("sl2", "gl2"), default=None,
                   help="restrict Lie-side checks (informational)")
    q.add_argument("--file", default=None,
                   help="run bracket suites on this coalgebra file instead "
                        "of the builtins")
    q.add_argument("--output", "-o", default=None, help="write JSON report")
    q.set_defaults(func=cmd_check)

    q = sub.add_parser("homology", help="two-engine homology comparison")
    q.add_argument("target", help="cobar | Rn | Lg | cone")
    q.add_argument("--range", default=None, help="degree window a..b")
    q.add_argument("--coalgebra", default="E2_two_stage")
    q.add_argument("--g", choices=("sl2", "gl2"), default="sl2")
    bounds(q)
    q.set_defaults(func=cmd_homology)

    q = sub.add_parser("trace", help="trace of a cyclic class on homology")
    q.add_argument("file", help="builtin name or coalgebra file")
    q.add_argument("--class", dest="class_expr", required=True,
                   help="e.g. '2*(x1,y1) - (y1,x1)'")
    bounds(q)
    q.set_defaults(func=cmd_trace)

    q = sub.add_parser("report", help="full registry + homology cross-checks")
    q.add_argument("--all", action="store_true",
                   help="accepted for symmetry; the report is always full")
    q.add_argument("--output", "-o", default=None)
    q.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
