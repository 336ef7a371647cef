"""Command-line front end.

Computes single objects, dumps tables, runs the verification suites, and
manages the on-disk polynomial cache.  Exit codes: 0 success (all selected
checks pass), 1 verification failure, 2 usage error (bad flags, expressions,
or partitions), 3 resource guard, 4 parameter pole.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import PoleError, ResourceGuardError
from .macdonald import (MacdonaldCache, binomial_raising_closed,
                        macdonald_forms)
from .partitions import (enumerate_partitions, format_partition,
                         parse_partition, upper_covers)
from .ratfunc import Q, RatFuncQT, T, rf
from .series import (FLAVORS, HyperParams, TruncatedSeries, eigen_value_lower,
                     eigen_value_raise)
from .verify import DEFAULT_SEED, SUITE_ORDER, run_suite, suite_passed

EXIT_PASS = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_POLE = 4


class UsageError(ValueError):
    """Bad command-line input that argparse cannot express."""


# ---------------------------------------------------------------------------
# parameter expressions

class ParamExprError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j], i))
            i = j
        elif ch in "qt":
            toks.append(("sym", ch, i))
            i += 1
        elif ch in "+-*/^()":
            toks.append((ch, ch, i))
            i += 1
        else:
            raise ParamExprError(f"unexpected character {ch!r}", i)
    toks.append(("end", "", n))
    return toks


def parse_param_expr(text: str) -> RatFuncQT:
    """Exact parse of an expression over the rational-function field.

    Grammar: integers, the symbols ``q`` and ``t``, binary ``+ - * /``,
    integer exponents via ``^`` (optionally negative or parenthesized),
    and parentheses.  Raises ParamExprError with the offending position on
    a syntax error, ZeroDivisionError on division by an expression that
    reduces to the zero polynomial.
    """
    toks = _tokenize(text)
    pos = 0

    def peek() -> tuple[str, str, int]:
        return toks[pos]

    def take(kind: str) -> tuple[str, str, int]:
        nonlocal pos
        tok = toks[pos]
        if tok[0] != kind:
            found = tok[1] if tok[0] != "end" else "end of input"
            raise ParamExprError(f"expected {kind!r}, found {found!r}", tok[2])
        pos += 1
        return tok

    def parse_expr() -> RatFuncQT:
        val = parse_term()
        while peek()[0] in ("+", "-"):
            op = take(peek()[0])
            rhs = parse_term()
            val = val + rhs if op[0] == "+" else val - rhs
        return val

    def parse_term() -> RatFuncQT:
        val = parse_factor()
        while peek()[0] in ("*", "/"):
            op = take(peek()[0])
            rhs = parse_factor()
            if op[0] == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    raise ZeroDivisionError(
                        f"division by the zero polynomial (position {op[2]})")
                val = val / rhs
        return val

    def parse_factor() -> RatFuncQT:
        tok = peek()
        if tok[0] == "+":
            take("+")
            return parse_factor()
        if tok[0] == "-":
            take("-")
            return -parse_factor()
        return parse_power()

    def parse_power() -> RatFuncQT:
        base = parse_atom()
        if peek()[0] == "^":
            op = take("^")
            e = parse_exponent()
            if e < 0 and base.is_zero():
                raise ZeroDivisionError(
                    f"negative power of the zero polynomial (position {op[2]})")
            base = base ** e
        return base

    def parse_exponent() -> int:
        neg = False
        if peek()[0] == "(":
            take("(")
            if peek()[0] == "-":
                take("-")
                neg = True
            tok = take("int")
            take(")")
        else:
            if peek()[0] == "-":
                take("-")
                neg = True
            tok = take("int")
        e = int(tok[1])
        return -e if neg else e

    def parse_atom() -> RatFuncQT:
        tok = peek()
        if tok[0] == "int":
            take("int")
            return rf(Fraction(int(tok[1])))
        if tok[0] == "sym":
            take("sym")
            return Q if tok[1] == "q" else T
        if tok[0] == "(":
            take("(")
            val = parse_expr()
            take(")")
            return val
        found = tok[1] if tok[0] != "end" else "end of input"
        raise ParamExprError(f"expected a value, found {found!r}", tok[2])

    val = parse_expr()
    tail = peek()
    if tail[0] != "end":
        raise ParamExprError(f"trailing input {tail[1]!r}", tail[2])
    return val


# ---------------------------------------------------------------------------
# shared helpers

def _dumps(payload) -> str:
    # fixed separators and key order keep the bytes reproducible
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _cache_from_args(args) -> MacdonaldCache:
    return MacdonaldCache(getattr(args, "cache_dir", None))


def _params_from_args(args) -> HyperParams:
    ups = tuple(parse_param_expr(s) for s in (args.a or ()))
    lows = tuple(parse_param_expr(s) for s in (args.b or ()))
    if args.r is not None and args.r != len(ups):
        raise UsageError(f"--r {args.r} disagrees with {len(ups)} --a flags")
    if args.s is not None and args.s != len(lows):
        raise UsageError(f"--s {args.s} disagrees with {len(lows)} --b flags")
    return HyperParams.make(ups, lows)


def _parse_mutate(text: str):
    s = text.strip()
    if s.startswith("C"):
        s = s[1:]
    return parse_partition(s)


def _need(args, *names) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name} is required for this object")


# ---------------------------------------------------------------------------
# commands

def cmd_compute(args) -> int:
    cache = _cache_from_args(args)
    obj = args.object
    if obj in ("P", "J", "Jstar"):
        _need(args, "partition")
        lam = parse_partition(args.partition)
        forms = macdonald_forms(lam, args.n, cache)
        poly = {"P": forms.P, "J": forms.J, "Jstar": forms.Jstar}[obj]
        if args.format == "json":
            print(_dumps({"object": obj, "partition": list(lam), "n": args.n,
                          "value": poly.to_json()}))
        else:
            print(f"{obj}{format_partition(lam)} (n={args.n}) = {poly.render()}")
    elif obj == "binomial":
        _need(args, "upper", "lower")
        upper = parse_partition(args.upper)
        lower = parse_partition(args.lower)
        val = binomial_raising_closed(upper, lower, args.n, cache)
        if args.format == "json":
            print(_dumps({"object": obj, "upper": list(upper),
                          "lower": list(lower), "n": args.n,
                          "value": val.render()}))
        else:
            print(f"binomial {format_partition(upper)} over "
                  f"{format_partition(lower)} (n={args.n}) = {val.render()}")
    elif obj == "series":
        params = _params_from_args(args)
        ser = TruncatedSeries.build(args.n, args.D, params, flavor=args.flavor)
        if args.format == "json":
            print(_dumps(ser.to_json()))
        else:
            print(f"series r={params.r} s={params.s} n={args.n} D={args.D} "
                  f"flavor={args.flavor}")
            for lam in enumerate_partitions(args.D, args.n):
                print(f"  C{format_partition(lam)} = {ser.coeffs[lam].render()}")
    elif obj == "eigen":
        _need(args, "partition")
        lam = parse_partition(args.partition)
        fn = eigen_value_raise if args.direction == "raise" else eigen_value_lower
        val = fn(args.level, lam, args.n)
        if args.format == "json":
            print(_dumps({"object": obj, "direction": args.direction,
                          "level": args.level, "partition": list(lam),
                          "n": args.n, "value": val.render()}))
        else:
            print(f"eigen {args.direction} l={args.level} at "
                  f"{format_partition(lam)} (n={args.n}) = {val.render()}")
    return EXIT_PASS


def cmd_table(args) -> int:
    cache = _cache_from_args(args)
    rows = []
    if args.object in ("P", "J", "Jstar"):
        for lam in enumerate_partitions(args.max_size, args.n):
            forms = macdonald_forms(lam, args.n, cache)
            poly = {"P": forms.P, "J": forms.J, "Jstar": forms.Jstar}[args.object]
            rows.append((lam, poly))
        if args.format == "json":
            print(_dumps([{"partition": list(lam), "value": p.to_json()}
                          for lam, p in rows]))
        else:
            for lam, p in rows:
                print(f"{args.object}{format_partition(lam)} = {p.render()}")
    else:  # binomial
        for mu in enumerate_partitions(max(args.max_size - 1, 0), args.n):
            for cv in upper_covers(mu, args.n):
                val = binomial_raising_closed(cv.upper, mu, args.n, cache)
                rows.append((cv.upper, mu, val))
        if args.format == "json":
            print(_dumps([{"upper": list(up), "lower": list(mu),
                           "value": v.render()} for up, mu, v in rows]))
        else:
            for up, mu, v in rows:
                print(f"binomial {format_partition(up)} over "
                      f"{format_partition(mu)} = {v.render()}")
    return EXIT_PASS


def cmd_verify(args) -> int:
    mutate = _parse_mutate(args.mutate) if args.mutate else None
    reports = run_suite(args.selection, n=args.n, D=args.D, seed=args.seed,
                        draws=args.draws, cache=_cache_from_args(args),
                        mutate=mutate)
    ok = suite_passed(reports)
    if args.format == "json":
        print(_dumps([r.to_json() for r in reports]))
    else:
        for r in reports:
            print(r.render_text())
        npass = sum(1 for r in reports if r.passed)
        print(f"{'PASS' if ok else 'FAIL'}: {npass}/{len(reports)} checks passed")
    return EXIT_PASS if ok else EXIT_VERIFY_FAIL


def cmd_cache(args) -> int:
    cache = _cache_from_args(args)
    if args.action == "dir":
        print(cache.cache_dir or "(memory only)")
    elif args.action == "list":
        for name in cache.list_disk():
            print(name)
    elif args.action == "clear":
        if not cache.cache_dir:
            raise UsageError("no cache directory configured "
                             "(set MACHYPER_CACHE_DIR or pass --dir)")
        print(f"removed {cache.clear_disk()} cache files")
    else:  # warm
        if not cache.cache_dir:
            raise UsageError("no cache directory configured "
                             "(set MACHYPER_CACHE_DIR or pass --dir)")
        count = 0
        for lam in enumerate_partitions(args.max_size, args.n):
            cache.get_P(lam, args.n)
            count += 1
        print(f"cached {count} entries under {cache.cache_dir}")
    return EXIT_PASS


# ---------------------------------------------------------------------------
# parser wiring

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="machyper",
        description="Exact Macdonald-basis hypergeometric series toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, cache_only=False):
        p.add_argument("--dir", dest="cache_dir", default=None,
                       help="cache directory (overrides MACHYPER_CACHE_DIR)")
        if not cache_only:
            p.add_argument("--format", choices=("text", "json"),
                           default="text")

    com = sub.add_parser("compute", help="compute a single object")
    com.add_argument("object",
                     choices=("P", "J", "Jstar", "binomial", "series", "eigen"))
    com.add_argument("--partition", help="partition, e.g. [2,1]")
    com.add_argument("--upper", help="upper partition of a cover pair")
    com.add_argument("--lower", help="lower partition of a cover pair")
    com.add_argument("--n", type=int, default=2, help="number of variables")
    com.add_argument("--D", type=int, default=4, help="truncation degree")
    com.add_argument("--r", type=int, default=None,
                     help="expected count of --a flags (consistency check)")
    com.add_argument("--s", type=int, default=None,
                     help="expected count of --b flags (consistency check)")
    com.add_argument("--a", action="append", metavar="EXPR",
                     help="numerator parameter (repeatable)")
    com.add_argument("--b", action="append", metavar="EXPR",
                     help="denominator parameter (repeatable)")
    com.add_argument("--flavor", choices=FLAVORS, default="macdonald")
    com.add_argument("--level", type=int, default=1,
                     help="eigen operator level l")
    com.add_argument("--direction", choices=("raise", "lower"),
                     default="raise", help="eigen operator direction")
    common(com)
    com.set_defaults(func=cmd_compute)

    tab = sub.add_parser("table", help="dump a table of objects")
    tab.add_argument("object", choices=("P", "J", "Jstar", "binomial"))
    tab.add_argument("--n", type=int, default=2)
    tab.add_argument("--max-size", type=int, default=4, dest="max_size")
    common(tab)
    tab.set_defaults(func=cmd_table)

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument("selection", nargs="?", default="all",
                     choices=SUITE_ORDER + ("all",))
    ver.add_argument("--n", type=int, default=2)
    ver.add_argument("--D", type=int, default=4)
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--draws", type=int, default=3)
    ver.add_argument("--mutate", default=None, metavar="C[LAM]",
                     help="perturb one series coefficient, e.g. C[1]")
    common(ver)
    ver.set_defaults(func=cmd_verify)

    cac = sub.add_parser("cache", help="manage the polynomial cache")
    cac.add_argument("action", choices=("dir", "list", "clear", "warm"))
    cac.add_argument("--n", type=int, default=2)
    cac.add_argument("--max-size", type=int, default=4, dest="max_size")
    common(cac, cache_only=True)
    cac.set_defaults(func=cmd_cache)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except ResourceGuardError as exc:
        print(f"machyper: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except PoleError as exc:
        print(f"machyper: parameter pole: {exc}", file=sys.stderr)
        return EXIT_POLE
    except (UsageError, ParamExprError, ZeroDivisionError, ValueError) as exc:
        print(f"machyper: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
