"""Command-line interface.

Exit codes: 0 success, 1 computation error (rewriting, incompatible
seminorm), 2 usage error, 3 parse error, 4 a verification suite failed.
Every JSON document carries ``"schema": 1``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .algebra import DEFAULT_FUEL, AlgebraError, PBWElement, builtin, load_presentation, mul, normal_order
from .coeff import GaussianRational
from .expr import ParseError, parse, parse_scalar
from .ore import OreData, commute_zn, jordanian_ore, lift, snk_enumerate, snk_pascal, snk_summands, uq_tower
from .rep import envelope_map, irrep
from .seminorm import FAMILIES, SeminormSpec, evaluate
from .suites import DEFAULT_Q, SUITES, run_suite

SCHEMA = 1
EXIT_ERROR, EXIT_USAGE, EXIT_PARSE, EXIT_FAILED = 1, 2, 3, 4

ORE_EXTENSIONS = ("jordanian", "A1", "uq_sl2")


class UsageError(Exception):
    pass


def _positive_number(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # added both before and after the subcommand; the copy after it must not
    # overwrite values given before it, hence SUPPRESS defaults there
    def default(v):
        return argparse.SUPPRESS if suppress else v

    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("-p", "--presentation", default=default(None), help="built-in name or JSON file")
    g.add_argument("-q", default=default(None), help="deformation parameter, e.g. 3/5+4/5i")
    g.add_argument("--seed", type=int, default=default(0))
    g.add_argument("--rho", type=_positive_number, default=default(Fraction(1)))
    g.add_argument("--tol", type=lambda s: float(_positive_number(s)), default=default(None))
    g.add_argument("--fuel", type=_positive_int, default=default(DEFAULT_FUEL))
    g.add_argument("--output", choices=("json", "text"), default=default("text"))
    return g


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oreext", parents=[_global_flags(False)], description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    after = [_global_flags(True)]

    p = sub.add_parser("normalize", parents=after, help="PBW normal form of an expression")
    p.add_argument("expr")

    p = sub.add_parser("mul", parents=after, help="product of two expressions")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("seminorm", parents=after, help="weighted seminorm of an expression")
    p.add_argument("expr")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--level-n", type=int, default=None)
    p.add_argument("--q-abs", type=Fraction, default=None)

    p = sub.add_parser("commute", parents=after, help="z^n r as a sum of S_{n,k}(r) z^(n-k)")
    p.add_argument("n", type=int)
    p.add_argument("r", help="element of the base algebra")

    p = sub.add_parser("snk", parents=after, help="S_{n,k}(r) by enumeration and by recursion")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("r", help="element of the base algebra")

    p = sub.add_parser("verify", parents=after, help="run a named verification suite")
    p.add_argument("suite", choices=tuple(SUITES))

    p = sub.add_parser("irrep", parents=after, help="matrices of the sl2 irreducible of dimension d")
    p.add_argument("d", type=int)

    p = sub.add_parser("envelope", parents=after, help="images of a U(sl2) element in the irreducibles")
    p.add_argument("expr")
    p.add_argument("--lambda-max", type=int, default=4)
    p.add_argument("--k-poly", default=None, help="comma separated coefficients of a polynomial in K")
    return parser


# -- helpers ------------------------------------------------------------------------


def _q(args) -> GaussianRational | None:
    return None if args.q is None else parse_scalar(args.q)


def _presentation(args, default: str):
    name = args.presentation or default
    try:
        return load_presentation(name, _q(args))
    except AlgebraError as exc:
        if "unknown presentation" in str(exc):
            raise UsageError(str(exc)) from None
        raise


def _ore(args) -> OreData:
    name = args.presentation or "jordanian"
    if name == "jordanian":
        return jordanian_ore()
    if name in ("A1", "uq_sl2"):
        t1, t2 = uq_tower(_q(args) if args.q is not None else DEFAULT_Q)
        return t1 if name == "A1" else t2
    raise UsageError(f"no Ore extension named {name!r}; expected one of {', '.join(ORE_EXTENSIONS)}")


def _element(text: str, p, fuel: int) -> PBWElement:
    return normal_order(parse(text, p), p, fuel=fuel)


def _matrix(m) -> list[list[str]]:
    return [[str(x) for x in row] for row in m]


def _emit(args, doc: dict, text: str) -> None:
    if args.output == "json":
        print(json.dumps({"schema": SCHEMA, **doc}, sort_keys=True))
    else:
        print(text)


# -- commands ---------------------------------------------------------------------------


def cmd_normalize(args) -> int:
    p = _presentation(args, "free2")
    a = _element(args.expr, p, args.fuel)
    _emit(args, {"presentation": p.name, "input": args.expr, "result": str(a), "terms": len(a)}, str(a))
    return 0


def cmd_mul(args) -> int:
    p = _presentation(args, "free2")
    a, b = _element(args.left, p, args.fuel), _element(args.right, p, args.fuel)
    c = mul(a, b, fuel=args.fuel)
    _emit(args, {"presentation": p.name, "result": str(c), "terms": len(c)}, str(c))
    return 0


def cmd_seminorm(args) -> int:
    p = _presentation(args, "jordanian")
    spec = SeminormSpec(args.family, args.rho, args.q_abs, args.level_n)
    a = _element(args.expr, p, args.fuel)
    value = evaluate(spec, a)
    _emit(args, {"presentation": p.name, "input": args.expr, "seminorm": spec.to_dict(), "value": value}, repr(value))
    return 0


def cmd_commute(args) -> int:
    if args.n < 0:
        raise UsageError("n must be nonnegative")
    d = _ore(args)
    r = _element(args.r, d.base, args.fuel)
    pieces = commute_zn(args.n, r, d)
    total = d.presentation.zero()
    for s, power in pieces:
        total = total + lift(s, d, power)
    terms = [{"coefficient": str(s), "z_power": power} for s, power in pieces]
    lines = [str(lift(s, d, power)) for s, power in pieces if s]
    _emit(
        args,
        {"extension": d.presentation.name, "z": d.z, "n": args.n, "r": str(r), "terms": terms, "result": str(total)},
        "\n".join(lines + [f"= {total}"]),
    )
    return 0


def cmd_snk(args) -> int:
    if args.n < 0 or not 0 <= args.k <= args.n:
        raise UsageError("need 0 <= k <= n")
    d = _ore(args)
    r = _element(args.r, d.base, args.fuel)
    enumerated = snk_enumerate(args.n, args.k, r, d)
    recursive = snk_pascal(args.n, args.k, r, d)
    count = len(snk_summands(args.n, args.k, r, d))
    doc = {
        "extension": d.presentation.name,
        "n": args.n,
        "k": args.k,
        "r": str(r),
        "result": str(recursive),
        "summands": count,
        "agree": enumerated == recursive,
    }
    _emit(args, doc, str(recursive))
    return 0 if enumerated == recursive else EXIT_FAILED


def cmd_verify(args) -> int:
    report = run_suite(args.suite, q=_q(args), seed=args.seed, tol=args.tol)
    _emit(args, report.to_dict(), report.line())
    return 0 if report.passed else EXIT_FAILED


def cmd_irrep(args) -> int:
    if args.d < 1:
        raise UsageError("dimension must be at least 1")
    rep = irrep(args.d)
    doc = {"dim": rep.dim, "E": _matrix(rep.E), "F": _matrix(rep.F), "H": _matrix(rep.H)}
    text = "\n".join(f"{name} = {_matrix(m)}" for name, m in (("E", rep.E), ("F", rep.F), ("H", rep.H)))
    _emit(args, doc, text)
    return 0


def cmd_envelope(args) -> int:
    if args.lambda_max < 0:
        raise UsageError("lambda-max must be nonnegative")
    p = builtin("usl2")
    u = _element(args.expr, p, args.fuel)
    k_poly = None
    if args.k_poly is not None:
        k_poly = [parse_scalar(c) for c in args.k_poly.split(",")]
    image = envelope_map(u, args.lambda_max, k_poly)
    lines = [f"lambda={lam}: {_matrix(b)}" for lam, b in enumerate(image.blocks)]
    if image.k_component is not None:
        lines.append(f"K=1: {image.k_component[0]}, K=-1: {image.k_component[1]}")
    _emit(args, {"input": args.expr, **image.to_dict()}, "\n".join(lines))
    return 0


COMMANDS = {
    "normalize": cmd_normalize,
    "mul": cmd_mul,
    "seminorm": cmd_seminorm,
    "commute": cmd_commute,
    "snk": cmd_snk,
    "verify": cmd_verify,
    "irrep": cmd_irrep,
    "envelope": cmd_envelope,
}


def _fail(args, code: int, kind: str, exc: Exception) -> int:
    print(f"error: {exc}", file=sys.stderr)
    if getattr(args, "output", None) == "json":
        doc = {"schema": SCHEMA, "error": kind, "message": str(exc)}
        if isinstance(exc, ParseError):
            doc["position"] = exc.position
        print(json.dumps(doc, sort_keys=True))
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail(args, EXIT_USAGE, "usage", exc)
    except ParseError as exc:
        return _fail(args, EXIT_PARSE, "parse", exc)
    except (AlgebraError, ValueError, ZeroDivisionError) as exc:
        return _fail(args, EXIT_ERROR, "error", exc)


if __name__ == "__main__":
    sys.exit(main())
