"""Command-line surface: descriptor grammar, decision/chain/formula commands,
and the oracle-versus-formula verification suites.

Descriptor grammar (whitespace ignored, tokens case sensitive)::

    descriptor := term ("+" term)* | "0"
    term       := "Z" ["^" mult] | "C" int ["^" mult] | "U" prime
    mult       := positive-int | "inf"

``Z^r`` adds r infinite cycles, ``Cn^m`` adds m cycles of order n (composite n
is split into prime-power parts), ``Up`` marks unbounded p-torsion.  The
multiplicity token ``inf`` is the only way to say "infinitely many".

Exit codes: 0 = ran (and, for verify, everything matched); 1 = verify found a
mismatch; 2 = usage or input error.  Decision results are carried in the
output, never in the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import criterion, nilpotency, suites
from .abelian import (
    INF,
    AbelianDescriptor,
    Cardinal,
    canonicalize,
    is_finite,
    is_prime,
)


class DescriptorSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def parse_descriptor(text: str) -> AbelianDescriptor:
    """Parse the descriptor grammar into a canonical descriptor."""
    i = 0
    n = len(text)

    def skip_ws():
        nonlocal i
        while i < n and text[i].isspace():
            i += 1

    def read_int(what: str) -> int:
        nonlocal i
        start = i
        while i < n and text[i].isdigit():
            i += 1
        if start == i:
            raise DescriptorSyntaxError(f"expected {what}", start)
        return int(text[start:i])

    def read_mult() -> Cardinal:
        nonlocal i
        skip_ws()
        if text.startswith("inf", i):
            i += 3
            return INF
        start = i
        value = read_int("a multiplicity or 'inf'")
        if value < 1:
            raise DescriptorSyntaxError("multiplicity must be positive", start)
        return value

    def read_optional_mult() -> Cardinal:
        nonlocal i
        skip_ws()
        if i < n and text[i] == "^":
            i += 1
            return read_mult()
        return 1

    skip_ws()
    if i < n and text[i] == "0":
        j = i + 1
        while j < n and text[j].isspace():
            j += 1
        if j != n:
            raise DescriptorSyntaxError("'0' must stand alone", j)
        return AbelianDescriptor()

    raw = []
    free_rank: Cardinal = 0
    unbounded = False
    while True:
        skip_ws()
        if i >= n:
            raise DescriptorSyntaxError("expected a term", i)
        ch = text[i]
        if ch == "Z":
            i += 1
            free_rank = free_rank + read_optional_mult()
        elif ch == "C":
            i += 1
            skip_ws()
            start = i
            order = read_int("a cycle order")
            if order < 1:
                raise DescriptorSyntaxError("cycle order must be at least 1", start)
            raw.append((order, read_optional_mult()))
        elif ch == "U":
            i += 1
            skip_ws()
            start = i
            p = read_int("a prime")
            if not is_prime(p):
                raise DescriptorSyntaxError(f"{p} is not prime", start)
            unbounded = True
        else:
            raise DescriptorSyntaxError(f"unexpected character {ch!r}", i)
        skip_ws()
        if i >= n:
            break
        if text[i] != "+":
            raise DescriptorSyntaxError(f"expected '+', found {text[i]!r}", i)
        i += 1
    return canonicalize(raw, free_rank=free_rank, unbounded_torsion=unbounded)


def render_descriptor(d: AbelianDescriptor) -> str:
    """Canonical text form; parsing it back yields an equal descriptor.

    The unbounded-torsion flag is prime-agnostic, so it always renders as U2.
    """
    parts = []
    if d.free_rank != 0:
        parts.append("Z" if d.free_rank == 1 else f"Z^{d.free_rank}")
    for (p, k), mult in d.summands.items():
        parts.append(f"C{p ** k}" if mult == 1 else f"C{p ** k}^{mult}")
    if d.unbounded_torsion:
        parts.append("U2")
    return " + ".join(parts) if parts else "0"


def _cardinal_json(value: Cardinal):
    return value if is_finite(value) else "inf"


def _verdict_json(verdict: criterion.Verdict) -> dict:
    return {
        "generates": verdict.generates,
        "case": verdict.case_tag.value,
        "witnesses": [
            {"p": w.p, "k": w.k, "layer_rank": _cardinal_json(w.layer_rank)}
            for w in verdict.witnesses
        ],
        "exponents": {
            "A": _cardinal_json(verdict.exponent_a),
            "B": _cardinal_json(verdict.exponent_b),
        },
    }


def _print_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True))


def _print_verdict_text(a: AbelianDescriptor, b: AbelianDescriptor, verdict) -> None:
    info = criterion.classify(a, b)
    print(f"passive group A: {render_descriptor(a)}  [exponent {verdict.exponent_a}]")
    print(f"active group B:  {render_descriptor(b)}  [exponent {verdict.exponent_b}]")
    print(f"rule: {info.branch.value} -- {info.detail}")
    for w in verdict.witnesses:
        print(
            f"  blocking prime {w.p}: top layer B[{w.p ** w.k}]/B[{w.p ** (w.k - 1)}] "
            f"has rank {w.layer_rank} (order {w.p ** w.layer_rank}, finite)"
        )
    print(f"generates var(A).var(B): {'yes' if verdict.generates else 'no'}")


def _cmd_decide(args) -> int:
    a = parse_descriptor(args.A)
    b = parse_descriptor(args.B)
    verdict = criterion.generates(a, b)
    if args.json:
        _print_json(_verdict_json(verdict))
    else:
        _print_verdict_text(a, b, verdict)
    return 0


def _shape_json(shape: criterion.SeparatingShape) -> dict:
    payload = {"p": shape.p, "k": shape.k, "finite_component": shape.finite_component}
    if not shape.finite_component:
        payload["d"] = shape.d
        payload["l"] = list(shape.l)
    return payload


def _chain_json(report: criterion.ChainReport, s_max: int) -> dict:
    payload = {
        "alternative": report.alternative.value,
        "generates": report.verdict.generates,
        "s_max": s_max,
        "per_prime": [_shape_json(sh) for sh in report.shapes],
        "certificate": None,
    }
    if report.steps:
        steps = []
        for step in report.steps:
            if isinstance(step, criterion.SeparationStep):
                steps.append(
                    {
                        "s": step.s,
                        "t": step.t,
                        "witness_class": step.witness_class,
                        "class_bound": step.class_bound,
                        "gap": step.gap,
                    }
                )
            else:
                steps.append(
                    {"s": step.s, "class_s": step.class_s, "class_next": step.class_next}
                )
        payload["certificate"] = {
            "kind": report.certificate_kind,
            "prime": report.certificate_prime,
            "steps": steps,
        }
    return payload


def _print_chain_text(report: criterion.ChainReport) -> None:
    print(f"alternative: {report.alternative.value}")
    if report.alternative is criterion.Alternative.COLLAPSES:
        print("the wreath product already generates the product variety; all finite powers agree")
        return
    print("per-prime shape of the active group:")
    for sh in report.shapes:
        if sh.finite_component:
            print(f"  p={sh.p}: finite {sh.p}-part, top order {sh.p ** sh.k}")
        else:
            print(f"  p={sh.p}: k={sh.k}, d={sh.d}, l={list(sh.l)}")
    kind = report.certificate_kind
    print(f"certificate (prime {report.certificate_prime}, {kind} route):")
    if kind == "separation":
        for step in report.steps:
            print(
                f"  s={step.s}: t={step.t}, witness class {step.witness_class} > "
                f"bound {step.class_bound} (gap {step.gap})"
            )
    else:
        for step in report.steps:
            low = f"{step.s} {'copy' if step.s == 1 else 'copies'}"
            print(
                f"  s={step.s}: class with {low} = {step.class_s} < "
                f"class with {step.s + 1} copies = {step.class_next}"
            )


def _cmd_chain(args) -> int:
    a = parse_descriptor(args.A)
    b = parse_descriptor(args.B)
    report = criterion.chain_analysis(a, b, s_max=args.s_max)
    if args.json:
        _print_json(_chain_json(report, args.s_max))
    else:
        _print_chain_text(report)
    return 0


def _cmd_class(args) -> int:
    print(nilpotency.liebeck_class(args.p, args.u, args.ks))
    return 0


def _cmd_bounds(args) -> int:
    formula = args.formula
    params = args.params
    if formula == "nu":
        p, u, k, t = _ints(params, 4, "nu needs: p u k t")
        print(nilpotency.nu(p, u, k, t))
    elif formula == "t0":
        p, k, mu = _ints(params, 3, "t0 needs: p k mu")
        print(nilpotency.min_t0(p, k, mu))
    elif formula == "gap":
        if len(params) < 4:
            raise ValueError("gap needs: p k d l0 [l1 ...]")
        p, k, d = (int(x) for x in params[:3])
        layers = [int(x) for x in params[3:]]
        print(nilpotency.separation_gap(p, k, d, layers))
    elif formula == "nu-general":
        if len(params) < 7:
            raise ValueError("nu-general needs: p u k d r t l0 [l1 ...]")
        p, u, k, d, r, t = (int(x) for x in params[:6])
        layers = [int(x) for x in params[6:]]
        print(nilpotency.nu_general(p, u, k, d, layers, r, t))
    elif formula == "lambda-general":
        if len(params) < 7:
            raise ValueError("lambda-general needs: p u k d s t l0 [l1 ...]")
        p, u, k, d, s, t = (int(x) for x in params[:6])
        layers = [int(x) for x in params[6:]]
        print(nilpotency.lambda_general_bound(p, u, k, d, layers, s, t))
    elif formula == "lambda":
        if len(params) != 3:
            raise ValueError("lambda needs: A-descriptor B-descriptor t")
        a = parse_descriptor(params[0])
        b = parse_descriptor(params[1])
        print(nilpotency.lambda_bound(a, b, int(params[2])))
    else:  # pragma: no cover - argparse restricts the choices
        raise ValueError(f"unknown formula {formula!r}")
    return 0


def _ints(params: Sequence[str], count: int, usage: str) -> list[int]:
    if len(params) != count:
        raise ValueError(usage)
    return [int(x) for x in params]


def _cmd_verify(args) -> int:
    result = suites.run_suite(args.suite, args.budget)
    if args.json:
        _print_json(
            {
                "suite": result.suite,
                "passed": result.passed,
                "rows": [
                    {
                        "instance": row.instance,
                        "expected": row.expected,
                        "actual": row.actual,
                        "ok": row.ok,
                    }
                    for row in result.rows
                ],
            }
        )
    else:
        width = max((len(row.instance) for row in result.rows), default=10)
        print(f"suite: {result.suite}")
        for row in result.rows:
            print(
                f"  {row.instance:<{width}}  expected={row.expected!s:<6} "
                f"actual={row.actual!s:<6} {'ok' if row.ok else 'MISMATCH'}"
            )
        checked = len(result.rows)
        good = sum(1 for row in result.rows if row.ok)
        print(f"result: {'PASS' if result.passed else 'FAIL'} ({good}/{checked})")
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wreathvar",
        description=(
            "Decide whether the wreath product of two abelian groups generates "
            "the product of their varieties, and verify the class formulas "
            "against a brute-force oracle."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_decide = sub.add_parser(
        "decide",
        help="run the criterion on descriptors A (passive) and B (active)",
    )
    p_decide.add_argument("A", help="descriptor of the passive group")
    p_decide.add_argument("B", help="descriptor of the active group")
    p_decide.add_argument("--json", action="store_true")
    p_decide.set_defaults(func=_cmd_decide)

    p_chain = sub.add_parser(
        "chain",
        help="report the chain alternative with per-copy certificates",
    )
    p_chain.add_argument("A")
    p_chain.add_argument("B")
    p_chain.add_argument("--s-max", dest="s_max", type=int, default=3)
    p_chain.add_argument("--json", action="store_true")
    p_chain.set_defaults(func=_cmd_chain)

    p_class = sub.add_parser(
        "class",
        help="nilpotency class of C_{p^u} wr (sum of C_{p^{k_i}})",
    )
    p_class.add_argument("p", type=int)
    p_class.add_argument("u", type=int)
    p_class.add_argument("ks", type=int, nargs="*")
    p_class.set_defaults(func=_cmd_class)

    p_bounds = sub.add_parser(
        "bounds",
        help="evaluate a class bound / witness-class formula",
    )
    p_bounds.add_argument(
        "formula",
        choices=["nu", "t0", "gap", "nu-general", "lambda-general", "lambda"],
    )
    p_bounds.add_argument("params", nargs="*")
    p_bounds.set_defaults(func=_cmd_bounds)

    p_verify = sub.add_parser(
        "verify",
        help="run an oracle-versus-formula suite and print its table",
    )
    p_verify.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    p_verify.add_argument(
        "--budget",
        type=int,
        default=None,
        help="suite size limit (max group order for liebeck/identities, "
        "max cycle order for houghton, max generator count for lambda)",
    )
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


_PARSER = build_parser()


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _PARSER.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
