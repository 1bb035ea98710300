"""Command-line front end.

Exit codes: 0 success/true/accepted, 1 false/rejected, 2 usage or parse
error, 3 unknown verdict.  `--json` emits one object per result with the
fields {command, verdict, data}.  All output is deterministic.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from . import arithmetizer, beta, godel, primrec, proofs, semantics
from .arithmetizer import Certificate, make_certificate
from .primrec import BudgetExhausted, PRParseError, STANDARD
from .proofs import ProofParseError
from .semantics import Verdict
from .syntax import CaptureError, FormulaSyntaxError, parse_formula, render

_USAGE_ERROR = 2
_FALSE = 1
_TRUE = 0
_UNKNOWN = 3


def _print_result(args, command: str, verdict: str, data: dict,
                  human: list[str]) -> None:
    if args.json:
        print(json.dumps({"command": command, "verdict": verdict, "data": data},
                         sort_keys=True))
    else:
        for line in human:
            print(line)


def _parse_nat_list(text: str) -> list[int]:
    items = [s for s in text.replace(",", " ").split() if s]
    values = []
    for s in items:
        v = int(s)
        if v < 0:
            raise ValueError(f"expected a natural number, got {s}")
        values.append(v)
    return values


def _resolve_function(args) -> primrec.PRFunction:
    env = dict(STANDARD)
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as fh:
            env = primrec.parse_pr_program(fh.read(), base=env)
    if args.fn not in env:
        known = ", ".join(sorted(env))
        raise ValueError(f"unknown function {args.fn!r} (known: {known})")
    return env[args.fn]


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_parse(args) -> int:
    f = parse_formula(args.formula)
    _print_result(args, "parse", "ok", {"formula": render(f)}, [render(f)])
    return _TRUE


def _cmd_godel_encode(args) -> int:
    code = godel.encode_formula(parse_formula(args.formula))
    text = godel.to_decimal(code)
    _print_result(args, "godel-encode", "ok", {"code": text}, [text])
    return _TRUE


def _cmd_godel_decode(args) -> int:
    f = godel.decode_formula(godel.from_decimal(args.code))
    _print_result(args, "godel-decode", "ok", {"formula": render(f)}, [render(f)])
    return _TRUE


def _cmd_beta_encode(args) -> int:
    pair = beta.encode_seq(_parse_nat_list(args.seq))
    _print_result(args, "beta-encode", "ok",
                  {"n": str(pair.n), "d": str(pair.d)},
                  [f"{pair.n} {pair.d}"])
    return _TRUE


def _cmd_beta_decode(args) -> int:
    n, d = _parse_nat_list(args.pair)
    values = [beta.beta(n, d, i) for i in range(args.count)]
    _print_result(args, "beta-decode", "ok",
                  {"values": [str(v) for v in values]},
                  [" ".join(str(v) for v in values)])
    return _TRUE


def _cmd_pr_eval(args) -> int:
    f = _resolve_function(args)
    value = primrec.eval_pr(f, _parse_nat_list(args.args), args.budget)
    _print_result(args, "pr-eval", "ok", {"value": str(value)}, [str(value)])
    return _TRUE


def _cmd_compile(args) -> int:
    cf = arithmetizer.compile(_resolve_function(args))
    human = [render(cf.formula),
             f"inputs: {' '.join('x%d' % i for i in cf.input_vars)}",
             f"output: x{cf.output_var}"]
    for i, slot in enumerate(cf.slots):
        human.append(f"slot {i}: {slot.description}")
    _print_result(args, "compile", "ok", {
        "formula": render(cf.formula),
        "inputs": list(cf.input_vars),
        "output": cf.output_var,
        "slots": [s.description for s in cf.slots],
    }, human)
    return _TRUE


def _cmd_certify(args) -> int:
    f = _resolve_function(args)
    values = _parse_nat_list(args.args)
    cf = arithmetizer.compile(f)
    cert = make_certificate(cf, f, values, args.budget)
    out = primrec.eval_pr(f, values, args.budget)
    _print_result(args, "certify", "ok", {
        "args": values, "output": str(out),
        "slots": [str(v) for v in cert.slot_values],
    }, [str(v) for v in cert.slot_values])
    return _TRUE


def _verdict_exit(v: Verdict) -> int:
    return {Verdict.TRUE: _TRUE, Verdict.FALSE: _FALSE,
            Verdict.UNKNOWN: _UNKNOWN}[v]


def _cmd_eval(args) -> int:
    if args.cert is not None:
        if args.fn is None or args.instance is None:
            raise ValueError("--cert requires --fn and --instance")
        f = _resolve_function(args)
        cf = arithmetizer.compile(f)
        values = _parse_nat_list(args.instance)
        if len(values) != f.arity + 1:
            raise ValueError(
                f"--instance needs {f.arity} inputs plus the output value")
        assignment = dict(zip(cf.input_vars, values[:-1]))
        assignment[cf.output_var] = values[-1]
        with open(args.cert, encoding="utf-8") as fh:
            cert = Certificate(tuple(_parse_nat_list(fh.read())))
        ok = semantics.check_certificate(cf, assignment, cert)
        verdict = "true" if ok else "false"
        _print_result(args, "eval", verdict, {"instance": values}, [verdict])
        return _TRUE if ok else _FALSE
    if args.formula is None:
        raise ValueError("a formula argument is required without --cert")
    f = parse_formula(args.formula)
    v = semantics.eval_closed(f, args.mode, args.budget)
    _print_result(args, "eval", v.value, {"mode": args.mode}, [v.value])
    return _verdict_exit(v)


def _cmd_proof_check(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        p = proofs.parse_proof_text(fh.read())
    result = proofs.check_proof(p)
    if result.ok:
        _print_result(args, "proof-check", "accepted",
                      {"conclusion": render(result.conclusion),
                       "justifications": list(result.justifications)},
                      [f"accepted: {render(result.conclusion)}"])
        return _TRUE
    _print_result(args, "proof-check", "rejected",
                  {"line": result.line, "reason": result.reason},
                  [f"rejected at line {result.line}: {result.reason}"])
    return _FALSE


def _sequence_code_bits(codes: list[int]) -> float:
    bits = 0.0
    for i, c in enumerate(codes):
        bits += c * math.log2(godel._prime(i))
    return bits


def _cmd_proof_arith(args) -> int:
    if args.x is not None or args.y is not None:
        if args.x is None or args.y is None:
            raise ValueError("--x and --y must be given together")
        holds = proofs.proves_rel(godel.from_decimal(args.x),
                                  godel.from_decimal(args.y))
        verdict = "true" if holds else "false"
        _print_result(args, "proof-arith", verdict, {}, [verdict])
        return _TRUE if holds else _FALSE
    if args.file is None:
        raise ValueError("either a proof file or --x/--y is required")
    with open(args.file, encoding="utf-8") as fh:
        p = proofs.parse_proof_text(fh.read())
    line_codes = [godel.encode_formula(line.formula) for line in p.lines]
    y = godel.encode_formula(p.lines[-1].formula)
    bits = _sequence_code_bits(line_codes)
    if bits > args.max_bits:
        print(f"sequence code needs about {bits:.3g} bits, over the "
              f"--max-bits limit {args.max_bits}; not materializable",
              file=sys.stderr)
        return _USAGE_ERROR
    x = godel.encode_sequence(line_codes)
    holds = proofs.proves_rel(x, y)
    verdict = "true" if holds else "false"
    xd, yd = godel.to_decimal(x), godel.to_decimal(y)
    _print_result(args, "proof-arith", verdict,
                  {"x": xd, "y": yd},
                  [f"x {xd}", f"y {yd}", verdict])
    return _TRUE if holds else _FALSE


def _cmd_represent_check(args) -> int:
    f = _resolve_function(args)
    cf = arithmetizer.compile(f)
    cells = [()]
    for _ in range(f.arity):
        cells = [c + (v,) for c in cells for v in range(args.max + 1)]
    human = []
    passed = 0
    results = []
    for cell in cells:
        out = primrec.eval_pr(f, cell)
        cert = make_certificate(cf, f, cell)
        assignment = dict(zip(cf.input_vars, cell))
        assignment[cf.output_var] = out
        ok = semantics.check_certificate(cf, assignment, cert)
        passed += ok
        results.append({"args": list(cell), "output": str(out), "ok": ok})
        status = "ok" if ok else "FAIL"
        human.append(f"{','.join(map(str, cell))} -> {out} {status}")
    total = len(cells)
    tally = f"OK {passed}/{total}" if passed == total else f"FAIL {passed}/{total}"
    human.append(tally)
    _print_result(args, "represent-check",
                  "ok" if passed == total else "fail",
                  {"cells": results, "passed": passed, "total": total}, human)
    return _TRUE if passed == total else _FALSE


# ---------------------------------------------------------------------------
# Argument parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="peanokit",
        description="First-order Peano Arithmetic toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true",
                       help="emit one JSON object {command, verdict, data}")
        p.set_defaults(handler=fn)
        return p

    p = add("parse", _cmd_parse, help="parse a formula and print its core form")
    p.add_argument("formula")

    p = add("godel-encode", _cmd_godel_encode, help="Godel number of a formula")
    p.add_argument("formula")

    p = add("godel-decode", _cmd_godel_decode, help="formula of a Godel number")
    p.add_argument("code")

    p = add("beta-encode", _cmd_beta_encode,
            help="beta-pair `n d` coding a sequence")
    p.add_argument("--seq", required=True, help="comma-separated naturals")

    p = add("beta-decode", _cmd_beta_decode, help="beta values of a pair")
    p.add_argument("--pair", required=True, help="`n,d` as printed by beta-encode")
    p.add_argument("--count", type=int, required=True,
                   help="number of leading values to print")

    p = add("pr-eval", _cmd_pr_eval, help="evaluate a PR function")
    p.add_argument("--fn", required=True)
    p.add_argument("--file", help="PR DSL file with extra `let` definitions")
    p.add_argument("--args", required=True, help="comma-separated naturals")
    p.add_argument("--budget", type=int, default=None)

    p = add("compile", _cmd_compile,
            help="compile a PR function to its representing formula")
    p.add_argument("--fn", required=True)
    p.add_argument("--file")

    p = add("certify", _cmd_certify,
            help="witness slot values for an instance, one per line")
    p.add_argument("--fn", required=True)
    p.add_argument("--file")
    p.add_argument("--args", required=True)
    p.add_argument("--budget", type=int, default=None)

    p = add("eval", _cmd_eval, help="evaluate a closed formula, or check a certificate")
    p.add_argument("formula", nargs="?")
    p.add_argument("--mode", choices=("exact", "search"), default="exact")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--cert", help="certificate file (slot values, whitespace-separated)")
    p.add_argument("--fn")
    p.add_argument("--file")
    p.add_argument("--instance", help="inputs plus claimed output, comma-separated")

    p = add("proof-check", _cmd_proof_check, help="check a proof file")
    p.add_argument("file")

    p = add("proof-arith", _cmd_proof_arith,
            help="arithmetized proof relation on Godel numbers")
    p.add_argument("file", nargs="?")
    p.add_argument("--x", help="proof sequence code")
    p.add_argument("--y", help="conclusion code")
    p.add_argument("--max-bits", type=float, default=2.0 ** 28,
                   help="refuse to materialize sequence codes above this size")

    p = add("represent-check", _cmd_represent_check,
            help="certificate-check a compiled function on a value grid")
    p.add_argument("--fn", required=True)
    p.add_argument("--file")
    p.add_argument("--max", type=int, required=True)

    return top


def run(argv: Sequence[str] | None = None) -> int:
    """Dispatch one invocation; returns the exit code."""
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else _TRUE
    try:
        return args.handler(args)
    except (FormulaSyntaxError, CaptureError, PRParseError, ProofParseError,
            godel.CodecError, primrec.PRArityError, semantics.EvaluationError,
            ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return _USAGE_ERROR
    except BudgetExhausted:
        print("budget exhausted", file=sys.stderr)
        return _UNKNOWN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
