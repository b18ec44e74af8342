"""Command-line interface: ``bfcalc <command> ...``.

Exit codes: 0 success, 1 a verification failed (with a countermodel or the
failing step), 2 bad input such as a parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from .bf_engine import SimpleValue, bf_eval, describe_valuation, nms_annotate, nms_eval
from .calculi import (
    TupleValue, calculus_equivalent, op_table, pair_calculus_eval, rot_eval,
)
from .pa_engine import M, U, PaValue, UnboundVariable, pa_simplify
from .rewrite import Demonstration, StepError, check, search
from .syntax import ParseError, parse, split_variables
from .verify import SUITES, run_suite

CALCULI = ("pa", "paxpa", "bf", "wf", "belnap")


class UsageError(Exception):
    pass


def _value_text(v) -> dict:
    if isinstance(v, SimpleValue):
        return {"value": int(v), "pair": v.pair_text()}
    if isinstance(v, PaValue):
        return {"value": str(v)}
    return {"value": str(v)}


def _calculus(text: str):
    if text in CALCULI:
        return text, None
    if text.startswith("rot:"):
        try:
            n = int(text[4:])
        except ValueError:
            raise UsageError(f"bad rotation arity in {text!r}") from None
        if n < 1:
            raise UsageError("rotation arity must be at least 1")
        return "rot", n
    raise UsageError(f"unknown calculus {text!r}")


def _parse_value(name: str, raw: str, calculus: str, n: Optional[int], inside_pair: bool):
    raw = raw.strip()
    if calculus == "pa" or inside_pair:
        table = {"m": M, "u": U, "1": M, "0": U}
        if raw not in table:
            raise UsageError(f"{name} needs m/u (or 1/0), got {raw!r}")
        return table[raw]
    if calculus == "rot" and raw and set(raw) <= {"m", "u"}:
        return TupleValue.parse(raw)
    if raw not in ("0", "1", "2", "3"):
        raise UsageError(f"{name} needs a value 0..3, got {raw!r}")
    return SimpleValue(int(raw))


def _assignments(items, e, calculus, n) -> dict:
    _, inner = split_variables(e)
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--assign expects NAME=VALUE, got {item!r}")
        name, raw = item.split("=", 1)
        name = name.strip()
        out[name] = _parse_value(name, raw, calculus, n, name in inner)
    return out


def _emit(args, report: dict, text: str) -> None:
    if args.json:
        print(json.dumps(report, sort_keys=True))
    elif text:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args) -> int:
    calculus, n = _calculus(args.calculus)
    raw = args.method == "nms"
    e = parse(args.expr, canonical=not raw)
    v = _assignments(args.assign, e, calculus, n)
    annotation = None
    if args.method == "nms":
        if calculus != "bf":
            raise UsageError("--method nms is only defined for the bf calculus")
        value = nms_eval(e, v)
        annotation = nms_annotate(e, v)
    elif calculus == "pa":
        value = pa_simplify(e, v)
    elif calculus == "bf":
        value = bf_eval(e, v)
    elif calculus == "rot":
        value = rot_eval(e, v, n)
    else:
        value = pair_calculus_eval(e, v, calculus)
    report = {"command": "eval", "expr": args.expr, "calculus": args.calculus,
              "method": args.method, **_value_text(value)}
    text = str(value) if not isinstance(value, SimpleValue) else str(int(value))
    if annotation is not None:
        report["annotation"] = annotation
        text += "\n" + annotation
    _emit(args, report, text)
    return 0


def cmd_equiv(args) -> int:
    calculus, n = _calculus(args.calculus)
    if calculus == "rot":
        raise UsageError("equiv supports pa, paxpa, bf, wf and belnap")
    f, g = parse(args.e1), parse(args.e2)
    equal, cm, cases = calculus_equivalent(f, g, calculus)
    report = {"command": "equiv", "e1": args.e1, "e2": args.e2, "calculus": calculus,
              "equal": equal, "cases": cases, "countermodel": _cm_json(cm)}
    if equal:
        text = f"equal ({cases} cases)"
    else:
        lhs, rhs = _both_values(f, g, cm, calculus)
        report["values"] = [lhs, rhs]
        text = f"not equal: countermodel {describe_valuation(cm)}; sides give {lhs} and {rhs}"
    _emit(args, report, text)
    return 0 if equal else 1


def _both_values(f, g, v, calculus):
    if calculus == "pa":
        return str(pa_simplify(f, v)), str(pa_simplify(g, v))
    ev = bf_eval if calculus == "bf" else (lambda e, w: pair_calculus_eval(e, w, calculus))
    return (f"{int(ev(f, v))} {ev(f, v).pair_text()}", f"{int(ev(g, v))} {ev(g, v).pair_text()}")


def _cm_json(v) -> Optional[dict]:
    if v is None:
        return None
    out = {}
    for name, value in v.items():
        if isinstance(value, SimpleValue):
            out[name] = {"value": int(value), "pair": value.pair_text()}
        else:
            out[name] = {"value": str(value)}
    return out


def cmd_table(args) -> int:
    try:
        table = op_table(args.op)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    _emit(args, {"command": "table", **table.to_json()}, table.to_text())
    return 0


def cmd_check_proof(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            d = Demonstration.from_json(fh.read())
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise UsageError(f"cannot read demonstration: {exc}") from None
    except StepError as exc:
        raise UsageError(str(exc)) from None
    res = check(d)
    report = {"command": "check-proof", "file": args.file, "valid": res.valid,
              "failing_step": res.failing_step, "reason": res.reason,
              "semantically_equal": res.semantically_equal}
    if res.valid:
        text = f"valid ({len(d.steps)} steps)\n{d}"
    elif res.failing_step is not None:
        text = f"invalid at step {res.failing_step}: {res.reason}"
    else:
        text = f"invalid: {res.reason}"
    _emit(args, report, text)
    return 0 if res.valid else 1


def cmd_search_proof(args) -> int:
    lhs, rhs = parse(args.e1), parse(args.e2)
    d = search(lhs, rhs, max_depth=args.depth, basis=args.basis, max_states=args.max_states)
    report = {"command": "search-proof", "e1": args.e1, "e2": args.e2, "basis": args.basis,
              "depth": args.depth, "found": d is not None,
              "demonstration": d.to_json() if d else None}
    text = f"found ({len(d.steps)} steps)\n{d}" if d else f"no demonstration within depth {args.depth}"
    _emit(args, report, text)
    return 0 if d else 1


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    checks = run_suite(args.suite)
    elapsed = time.perf_counter() - t0
    passed = all(c.passed for c in checks)
    report = {"command": "verify", "suite": args.suite, "passed": passed,
              "elapsed_s": round(elapsed, 3),
              "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail,
                          "cases": c.cases, "witness": _cm_json(c.witness)} for c in checks]}
    lines = []
    for c in checks:
        line = f"{'PASS' if c.passed else 'FAIL'}  {c.name}"
        if c.detail:
            line += f"  [{c.detail}]"
        lines.append(line)
    lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
    _emit(args, report, "\n".join(lines))
    return 0 if passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a single JSON object")

    p = argparse.ArgumentParser(prog="bfcalc", description="Laws of Form and the BF calculus")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    e.add_argument("expr")
    e.add_argument("--assign", action="append", metavar="X=V",
                   help="value for a variable (0..3, or m/u in pa); repeatable")
    e.add_argument("--calculus", default="bf", help="pa, paxpa, bf, wf, belnap or rot:<n>")
    e.add_argument("--method", choices=("pair", "nms"), default="pair")
    e.set_defaults(func=cmd_eval)

    q = sub.add_parser("equiv", parents=[common], help="decide equivalence by truth tables")
    q.add_argument("e1")
    q.add_argument("e2")
    q.add_argument("--calculus", default="bf", help="pa, paxpa, bf, wf or belnap")
    q.set_defaults(func=cmd_equiv)

    t = sub.add_parser("table", parents=[common], help="print a bilattice operation table")
    t.add_argument("op", help="or_t, and_t, oplus_k, otimes_k (or, and, oplus, otimes)")
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("check-proof", parents=[common], help="check a demonstration file")
    c.add_argument("file")
    c.set_defaults(func=cmd_check_proof)

    s = sub.add_parser("search-proof", parents=[common], help="search for a demonstration")
    s.add_argument("e1")
    s.add_argument("e2")
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--basis", choices=("pa", "bf"), default="pa")
    s.add_argument("--max-states", type=int, default=100_000)
    s.set_defaults(func=cmd_search_proof)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=tuple(SUITES) + ("all",))
    v.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _error(args, "parse", str(exc), offset=exc.offset)
    except UnboundVariable as exc:
        _error(args, "unbound", f"no value for variable {exc.args[0]}")
    except (UsageError, ValueError, TypeError) as exc:
        _error(args, "input", str(exc))
    return 2


def _error(args, kind: str, message: str, offset: Optional[int] = None) -> None:
    if getattr(args, "json", False):
        report = {"command": args.command, "error": kind, "message": message}
        if offset is not None:
            report["offset"] = offset
        print(json.dumps(report, sort_keys=True))
    else:
        print(f"error: {message}", file=sys.stderr)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
