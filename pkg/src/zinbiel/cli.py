"""Command-line front end.

Exit status: 0 on success, 1 when an identity or property fails, 2 on usage
or syntax errors.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from .evaluation import DEFAULT_MAX_WEIGHT, Witness, descent, theorem1_rank
from .expr import normal_form
from .freealg import Element, mul, power, star
from .identities import (
    InconclusiveEvaluation,
    MultilinearElement,
    is_identity_one_generated,
    nil_lab,
    symmetrization_check,
    symmetrization_instances,
)
from .parser import ParseError, element_to_json, format_element, parse

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _element(text: str) -> Element:
    try:
        return normal_form(parse(text))
    except ParseError as err:
        raise UsageError(f"cannot parse {text!r}: {err}") from None


def _fraction_json(c: Fraction) -> dict:
    return {"num": str(c.numerator), "den": str(c.denominator)}


def _witness_json(w: Witness | None) -> dict | None:
    if w is None:
        return None
    return {"weights": list(w.weights), **_fraction_json(w.value)}


def _component_text(m: MultilinearElement) -> str:
    return format_element(m.to_element())


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def cmd_reduce(args) -> int:
    f = _element(args.expr)
    _emit(args, element_to_json(f), format_element(f))
    return EXIT_OK


def cmd_mul(args) -> int:
    f = mul(_element(args.left), _element(args.right))
    _emit(args, element_to_json(f), format_element(f))
    return EXIT_OK


def cmd_power(args) -> int:
    if args.exponent < 1:
        raise UsageError("exponent must be at least 1")
    f = power(_element(args.expr), args.exponent)
    _emit(args, element_to_json(f), format_element(f))
    return EXIT_OK


def cmd_star(args) -> int:
    f = star(_element(args.left), _element(args.right))
    _emit(args, element_to_json(f), format_element(f))
    return EXIT_OK


def cmd_identity_check(args) -> int:
    f = _element(args.expr)
    holds = f.is_zero()
    if holds:
        text = "identity: yes"
    else:
        text = f"identity: no\nnormal form: {format_element(f)}"
    _emit(args, {"identity": holds, "normal_form": element_to_json(f)}, text)
    return EXIT_OK if holds else EXIT_FALSE


def cmd_identity_check_1gen(args) -> int:
    try:
        tree = parse(args.expr)
    except ParseError as err:
        raise UsageError(f"cannot parse {args.expr!r}: {err}") from None
    try:
        verdict = is_identity_one_generated(tree, args.max_weight)
    except InconclusiveEvaluation as err:
        print(str(err), file=sys.stderr)
        payload = {
            "identity": False,
            "inconclusive": True,
            "witness": None,
            "component": element_to_json(err.component.to_element()),
        }
        _emit(args, payload, "identity in one generator: no (inconclusive-evaluation)")
        return EXIT_FALSE
    if verdict.holds:
        _emit(args, {"identity": True, "witness": None, "component": None},
              "identity in one generator: yes")
        return EXIT_OK
    w = verdict.witness
    text = "\n".join([
        "identity in one generator: no",
        f"component: {_component_text(verdict.component)}",
        f"witness weights: {' '.join(map(str, w.weights))}",
        f"value: {w.value}",
    ])
    payload = {
        "identity": False,
        "witness": _witness_json(w),
        "component": element_to_json(verdict.component.to_element()),
    }
    _emit(args, payload, text)
    return EXIT_FALSE


def cmd_theorem1_verify(args) -> int:
    if args.degree < 1 or args.max_weight < 1:
        raise UsageError("--degree and --max-weight must be positive")
    cert = theorem1_rank(args.degree, args.max_weight)
    payload = {
        "degree": cert.degree,
        "rank": cert.rank,
        "certified": cert.certified,
        "witnesses": [list(w) for w in cert.witnesses],
    }
    text = "\n".join([
        f"degree: {cert.degree}",
        f"rank: {cert.rank} of {cert.full_rank}",
        f"certified: {'yes' if cert.certified else 'no'}",
        f"rows examined: {cert.rows_examined}",
    ])
    _emit(args, payload, text)
    return EXIT_OK if cert.certified else EXIT_FALSE


def cmd_descent_check(args) -> int:
    if any(w < 1 for w in args.weights):
        raise UsageError("weights must be positive integers")
    res = descent(args.weights)
    payload = {
        "prefix": list(res.prefix),
        "degree": len(res.prefix) + 1,
        "limit": _fraction_json(res.limit_value) if res.limit_value is not None else None,
        "expected": _fraction_json(res.expected),
        "permutations_checked": res.permutations_checked,
        "divisibility": res.divisibility_ok,
        "ok": res.ok,
    }
    text = "\n".join([
        f"limit: {res.limit_value}",
        f"expected: {res.expected}",
        f"divisibility on {res.permutations_checked} permutations: "
        f"{'ok' if res.divisibility_ok else 'FAILED'}",
        f"descent: {'ok' if res.ok else 'FAILED'}",
    ])
    _emit(args, payload, text)
    return EXIT_OK if res.ok else EXIT_FALSE


def cmd_nil_lab(args) -> int:
    if args.nil_index < 1 or args.max_degree < args.nil_index:
        raise UsageError("need 1 <= --nil-index <= --max-degree")
    report = nil_lab(args.nil_index, args.max_degree)
    payload = {
        "nil_index": report.nil_index,
        "max_degree": report.max_degree,
        "nilpotency_degree": report.nilpotency_degree,
        "degrees": [
            {"degree": r.degree, "dimension": r.dimension, "full_dimension": r.full_dimension}
            for r in report.records
        ],
    }
    lines = [f"{r.degree}\t{r.dimension}/{r.full_dimension}" for r in report.records]
    if report.nilpotency_degree is None:
        lines.append(f"nilpotency: not reached by degree {report.max_degree}")
    else:
        lines.append(f"nilpotency degree: {report.nilpotency_degree}")
    _emit(args, payload, "\n".join(["degree\tdimension", *lines]))
    return EXIT_OK


def cmd_symcheck(args) -> int:
    if args.max_degree < 3:
        raise UsageError("--max-degree must be at least 3")
    ok = symmetrization_check(args.max_degree)
    pairs = sum(1 for _ in symmetrization_instances(args.max_degree, 2))
    triples = sum(1 for _ in symmetrization_instances(args.max_degree, 3))
    payload = {"max_degree": args.max_degree, "ok": ok, "pairs": pairs, "triples": triples}
    text = f"symmetrization commutative and associative up to degree {args.max_degree}: " \
           f"{'yes' if ok else 'NO'} ({pairs} pairs, {triples} triples)"
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FALSE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zinbiel", description="Exact computations in free Zinbiel algebras.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=("text", "json"), default="text",
                       help="output format (default: text)")
        p.set_defaults(func=func)
        return p

    p = verb("reduce", cmd_reduce, "normal form of an expression")
    p.add_argument("expr")
    p = verb("mul", cmd_mul, "product of two expressions")
    p.add_argument("left")
    p.add_argument("right")
    p = verb("power", cmd_power, "left power a^i")
    p.add_argument("expr")
    p.add_argument("exponent", type=int)
    p = verb("star", cmd_star, "symmetrized product ab + ba")
    p.add_argument("left")
    p.add_argument("right")
    p = verb("identity-check", cmd_identity_check, "is the expression an identity of the variety")
    p.add_argument("expr")
    p = verb("identity-check-1gen", cmd_identity_check_1gen,
             "is the expression an identity of the one-generated free algebra")
    p.add_argument("expr")
    p.add_argument("--max-weight", type=int, default=6, help="largest evaluation weight (default: 6)")
    p = verb("theorem1-verify", cmd_theorem1_verify,
             "certify that no multilinear identity of a degree holds in one generator")
    p.add_argument("--degree", type=int, default=3, help="degree n (default: 3)")
    p.add_argument("--max-weight", type=int, default=DEFAULT_MAX_WEIGHT,
                   help=f"largest weight enumerated (default: {DEFAULT_MAX_WEIGHT})")
    p = verb("descent-check", cmd_descent_check, "check the descent step on a weight prefix")
    p.add_argument("weights", type=int, nargs="+", help="positive weights lambda_1 .. lambda_(n-1)")
    p = verb("nil-lab", cmd_nil_lab, "consequences of the nil identity y^t = 0")
    p.add_argument("--nil-index", type=int, default=2, help="nil index t (default: 2)")
    p.add_argument("--max-degree", type=int, default=6, help="largest degree computed (default: 6)")
    p = verb("symcheck", cmd_symcheck, "commutativity and associativity of ab + ba")
    p.add_argument("--max-degree", type=int, default=6, help="largest total degree (default: 6)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"zinbiel: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
