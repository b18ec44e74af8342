"""Named verification suites; each returns a list of :class:`Check`."""

from __future__ import annotations

import itertools
from typing import Callable

from . import braid
from .bf_engine import VALUES, SimpleValue, bf_equivalent, describe_valuation, sqrt_val
from .calculi import (
    DIHEDRAL, KLEIN_MARKS, KLEIN_NEGATIONS, TABLE_ORDERS, Check,
    DisagreementError, all_tuples, bilattice_op, calculus_equivalent, conflate, cross_b,
    cross_w, leq_k, leq_t, neg_t, op_table, rot_cross, rot_juxt, rot_order, simple_to_tuple,
    tilde, tuple_to_simple, unary, unary_map, verify_group, verify_wf,
)
from .calculi import TupleValue
from .pa_engine import pa_equivalent
from .rewrite import PA_RULES, RULES, check, imaginary_sum_demonstration, \
    position_demonstration

# Reference operation tables, rows and columns in TABLE_ORDERS order.
EXPECTED_TABLES = {
    "or_t": [[1, 0, 2, 3], [0, 0, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]],
    "and_t": [[1, 1, 1, 1], [1, 0, 1, 0], [1, 1, 2, 2], [1, 0, 2, 3]],
    "oplus_k": [[0, 1, 3, 2], [1, 1, 2, 2], [3, 2, 3, 2], [2, 2, 2, 2]],
    "otimes_k": [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 3, 3], [0, 1, 3, 2]],
}

# rules checked in BF; B3 itself is covered by B3# and is checked too
BF_CONSEQUENCES = ("BF.B1", "BF.B2", "B3#", "B1", "B2", "B3", "B4", "B5", "B6", "B7", "B8",
                   "B9", "B10", "B11", "B12", "CROSS", "SQRT", "JUXT")
MAX_BF_CASES = 64


def _cm(v) -> str:
    return describe_valuation(v) if v else ""


def pa_consequences() -> list[Check]:
    out = []
    for rule in PA_RULES:
        r = pa_equivalent(rule.lhs, rule.rhs)
        out.append(Check(f"PA {rule.id} {rule.name}: {rule.lhs.text} = {rule.rhs.text}",
                         r.equal, _cm(r.countermodel), r.cases, r.countermodel))
    for rule in PA_RULES:
        ok, cm, cases = calculus_equivalent(rule.lhs, rule.rhs, "paxpa")
        out.append(Check(f"PAxPA {rule.id}", ok, _cm(cm), cases, cm))
    for d in (position_demonstration(),):
        res = check(d)
        out.append(Check(f"demonstration {d.start.text} = {d.end.text or '(empty)'}",
                         res.valid, res.reason or ""))
    return out


def bf_consequences() -> list[Check]:
    out = []
    for rid in BF_CONSEQUENCES:
        rule = RULES[rid]
        r = bf_equivalent(rule.lhs, rule.rhs)
        ok = r.equal and r.cases <= MAX_BF_CASES
        detail = _cm(r.countermodel) if not r.equal else (
            "" if ok else f"{r.cases} cases exceed {MAX_BF_CASES}")
        out.append(Check(f"BF {rid} {rule.name}: {rule.lhs.text} = {rule.rhs.text}",
                         ok, detail, r.cases, r.countermodel))
    res = check(imaginary_sum_demonstration())
    out.append(Check("demonstration [] []^3 = [[]]", res.valid, res.reason or ""))
    return out


def wf() -> list[Check]:
    out = verify_wf()
    ok = all(cross_w(x) == conflate(x) for x in VALUES)
    out.append(Check("WF cross equals conflation", ok, cases=4))
    return out


def belnap() -> list[Check]:
    out = [Check("Belnap cross equals t-negation", all(cross_b(x) == neg_t(x) for x in VALUES),
                 cases=4)]
    for name, expect in (("neg_t", {1: 3, 3: 1, 0: 0, 2: 2}), ("conflate", {0: 2, 2: 0, 1: 1, 3: 3})):
        got = {int(x): int(unary(name, x)) for x in VALUES}
        out.append(Check(f"{name} values", got == expect, str(got), 4))
    pairs = list(itertools.product(VALUES, repeat=2))
    laws = {
        "not(A or B) = not A and not B":
            lambda x, y: neg_t(bilattice_op("or_t", x, y)) == bilattice_op("and_t", neg_t(x), neg_t(y)),
        "not(A and B) = not A or not B":
            lambda x, y: neg_t(bilattice_op("and_t", x, y)) == bilattice_op("or_t", neg_t(x), neg_t(y)),
        "!(A + B) = !A x !B":
            lambda x, y: conflate(bilattice_op("oplus_k", x, y)) == bilattice_op("otimes_k", conflate(x), conflate(y)),
        "!(A x B) = !A + !B":
            lambda x, y: conflate(bilattice_op("otimes_k", x, y)) == bilattice_op("oplus_k", conflate(x), conflate(y)),
    }
    for name, law in laws.items():
        bad = [(int(x), int(y)) for x, y in pairs if not law(x, y)]
        out.append(Check(f"De Morgan {name}", not bad, f"fails at {bad[0]}" if bad else "", 16))
    comm = all(neg_t(conflate(x)) == conflate(neg_t(x)) == tilde(x) == sqrt_val(sqrt_val(x))
               for x in VALUES)
    out.append(Check("not ! = ! not = ~ = sqrt^2", comm, cases=4))
    # excluded middle fails here as it does in WF
    ok, cm, cases = calculus_equivalent("((A) A)", "", "belnap")
    out.append(Check("Belnap B4 fails", not ok, _cm(cm), cases, cm))
    return out


def bilattice_tables() -> list[Check]:
    out = []
    for name in TABLE_ORDERS:
        try:
            table = op_table(name)
        except DisagreementError as exc:
            out.append(Check(f"table {name}", False, str(exc)))
            continue
        expect = EXPECTED_TABLES[name]
        bad = [(r, c) for r in range(4) for c in range(4) if table.entries[r][c] != expect[r][c]]
        out.append(Check(f"table {name}", not bad, f"cells differ at {bad}" if bad else "", 16))
    for leq, ops, label in ((leq_t, ("or_t", "and_t"), "t"), (leq_k, ("oplus_k", "otimes_k"), "k")):
        ok = all(leq(x, bilattice_op(ops[0], x, y)) and leq(bilattice_op(ops[1], x, y), x)
                 for x in VALUES for y in VALUES)
        out.append(Check(f"{label}-order bounds", ok, cases=16))
    return out


def groups() -> list[Check]:
    out = []
    for label, names, want in (("negations", KLEIN_NEGATIONS, "Klein four"),
                               ("marks", KLEIN_MARKS, "Klein four"),
                               ("all eight", DIHEDRAL, "dihedral of order 8")):
        rep = verify_group([unary_map(n) for n in names])
        ok = rep.closed and rep.isomorphism_class == want
        out.append(Check(f"group {label} {{{', '.join(names)}}}", ok,
                         f"order {rep.order}, {rep.isomorphism_class}", rep.order))
    return out


def rotation(max_n: int = 6) -> list[Check]:
    out = []
    for n in range(1, max_n + 1):
        tuples = list(all_tuples(n))
        ok = all(rot_power_raw(t, 2 * n) == t for t in tuples)
        out.append(Check(f"rotation n={n}: cross^{2 * n} = id", ok, cases=len(tuples)))
        unit = TupleValue.unmarked(n)
        order = rot_order(unit)
        out.append(Check(f"rotation n={n}: order of unmarked tuple is {2 * n}", order == 2 * n,
                         f"order {order}"))
        out.append(Check(f"rotation n={n}: unmarked is the juxtaposition identity",
                         all(rot_juxt(unit, t) == t for t in tuples), cases=len(tuples)))
    ok = all(tuple_to_simple(rot_cross(simple_to_tuple(x))) == sqrt_val(x) for x in VALUES)
    out.append(Check("rotation n=2 matches sqrt", ok, cases=4))
    return out


def rot_power_raw(t, k):
    """``rot_cross`` applied k times without reducing k."""
    for _ in range(k):
        t = rot_cross(t)
    return t


def braids(ns=range(2, 6)) -> list[Check]:
    out = []
    for n in ns:
        for rel in braid.verify_relations(n):
            out.append(Check(f"SP_{n} {rel.name}", rel.holds, rel.detail))
    g = braid.generator(2, 0)
    # the 2-strand generator acts like sqrt, reading a minus sign as a cross
    ok = all(SimpleValue.from_pair(*g.act_on_marks(x.pair)) == sqrt_val(x) for x in VALUES)
    out.append(Check("SP_2 generator acts as sqrt", ok, cases=4))
    return out


def quaternions() -> list[Check]:
    found = braid.find_quaternions(4)
    minus = braid.minus_identity(4)
    bad = [t for t in found
           if not (t[0] * t[0] == t[1] * t[1] == t[2] * t[2] == t[0] * t[1] * t[2] == minus)]
    out = [Check("SP_4 quaternion triples exist", bool(found), f"{len(found)} triples", len(found)),
           Check("every triple has I^2 = J^2 = K^2 = IJK = -1", not bad,
                 f"bad triple {[str(x) for x in bad[0]]}" if bad else "", len(found))]
    if found:
        size = len(braid.quaternion_group(found[0]))
        out.append(Check("first triple generates a group of order 8", size == 8,
                         " ".join(str(x) for x in found[0])))
    return out


SUITES: dict[str, Callable[[], list]] = {
    "pa-consequences": pa_consequences,
    "bf-consequences": bf_consequences,
    "wf": wf,
    "belnap": belnap,
    "bilattice-tables": bilattice_tables,
    "groups": groups,
    "rotation": rotation,
    "braid": braids,
    "quaternions": quaternions,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for suite in SUITES.values() for c in suite()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name]()
