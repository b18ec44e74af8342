"""Sibling four-valued calculi, the bilattice FOUR and the rotation calculus.

All four pair calculi share componentwise juxtaposition and differ in the
enclosure applied to a pair ``(a, b)``:

    PA x PA   ((a), (b))
    WF        ((b), (a))
    Belnap    (b, a)
    BF        ((b), a)    imaginary cross; the plain cross is its square

Bilattice names: N=0, F=1, B=2, T=3.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import reduce
from typing import Mapping, Optional, Sequence

from .bf_engine import (
    VALUES, SimpleValue, bf_eval, bf_valuations, juxt_pair,
)
from .pa_engine import M, U, UnboundVariable, pa_equivalent, pa_simplify
from .syntax import (
    Cross, CrossI, Expr, Juxt, Pair, Var, as_expr, parse, split_variables,
)

N, F, B, T = (SimpleValue(i) for i in range(4))
BILATTICE_NAMES = {N: "N", F: "F", B: "B", T: "T"}


def _on_pairs(fn):
    def op(x) -> SimpleValue:
        return SimpleValue.from_pair(*fn(*SimpleValue(x).pair))
    op.__name__ = fn.__name__
    return op


@_on_pairs
def cross_product(a, b):
    return ~a, ~b


@_on_pairs
def cross_w(a, b):
    return ~b, ~a


@_on_pairs
def cross_b(a, b):
    return b, a


# ---------------------------------------------------------------------------
# evaluating expressions in a pair calculus

ENCLOSURES = {
    "paxpa": lambda a, b: (~a, ~b),
    "wf": lambda a, b: (~b, ~a),
    "belnap": lambda a, b: (b, a),
}


def pair_calculus_eval(e, v: Optional[Mapping] = None, calculus: str = "wf") -> SimpleValue:
    """Evaluate an expression built from crosses, pairs and juxtaposition."""
    enclose = ENCLOSURES[calculus]
    v = v or {}

    def ev(x: Expr):
        if isinstance(x, Juxt):
            return reduce(juxt_pair, (ev(c) for c in x.children), (U, U))
        if isinstance(x, Cross):
            return enclose(*ev(x.child))
        if isinstance(x, Pair):
            return pa_simplify(x.left, v), pa_simplify(x.right, v)
        if isinstance(x, Var):
            if x.name not in v:
                raise UnboundVariable(x.name)
            return SimpleValue(v[x.name]).pair
        if isinstance(x, CrossI):
            raise ValueError(f"imaginary crosses are not part of the {calculus} calculus")
        raise TypeError(f"not an expression: {x!r}")

    return SimpleValue.from_pair(*ev(as_expr(e)))


# ---------------------------------------------------------------------------
# bilattice FOUR

# x <= y pairs, reflexive closure added below
_T_ORDER = {(F, N), (F, B), (N, T), (B, T), (F, T)}
_K_ORDER = {(N, F), (N, T), (F, B), (T, B), (N, B)}


def leq_t(x, y) -> bool:
    return x == y or (SimpleValue(x), SimpleValue(y)) in _T_ORDER


def leq_k(x, y) -> bool:
    return x == y or (SimpleValue(x), SimpleValue(y)) in _K_ORDER


def _lub(leq, x, y):
    ups = [z for z in VALUES if leq(x, z) and leq(y, z)]
    (least,) = [z for z in ups if all(leq(z, w) for w in ups)]
    return least


def _glb(leq, x, y):
    downs = [z for z in VALUES if leq(z, x) and leq(z, y)]
    (greatest,) = [z for z in downs if all(leq(w, z) for w in downs)]
    return greatest


# BF expression forms; variables A and B are the operands
BILATTICE_FORMS = {
    "or_t": "[[A]^3 [B]^3]",
    "and_t": "[[A] [B]]^3",
    "oplus_k": "A B",
    "otimes_k": "((A) (B))",
}

LATTICE_OPS = {
    "or_t": lambda x, y: _lub(leq_t, x, y),
    "and_t": lambda x, y: _glb(leq_t, x, y),
    "oplus_k": lambda x, y: _lub(leq_k, x, y),
    "otimes_k": lambda x, y: _glb(leq_k, x, y),
}

_OP_ALIASES = {"or": "or_t", "and": "and_t", "oplus": "oplus_k", "otimes": "otimes_k"}


class DisagreementError(AssertionError):
    pass


def bilattice_op(name: str, x, y) -> SimpleValue:
    """Compute a bilattice operation from its BF form and check it against the lattice."""
    name = _OP_ALIASES.get(name, name)
    if name not in BILATTICE_FORMS:
        raise KeyError(f"unknown bilattice operation {name!r}")
    x, y = SimpleValue(x), SimpleValue(y)
    via_bf = bf_eval(_form(BILATTICE_FORMS[name]), {"A": x, "B": y})
    via_lattice = LATTICE_OPS[name](x, y)
    if via_bf != via_lattice:
        raise DisagreementError(f"{name}({x},{y}): BF form gives {via_bf}, lattice gives {via_lattice}")
    return via_bf


_FORM_CACHE: dict = {}


def _form(text: str) -> Expr:
    if text not in _FORM_CACHE:
        _FORM_CACHE[text] = parse(text)
    return _FORM_CACHE[text]


UNARY_FORMS = {
    "id": "A",
    "sqrt1": "[A]",
    "sqrt2": "[A]^2",
    "sqrt3": "[A]^3",
    "neg_t": "([A] []^3) ([A]^3 [])",
    "conflate": "([A] []) ([A]^3 []^3)",
    "tilde": "(A)",
    "mark_right": "((A) []^3) (A [])",
    "mark_left": "(A []^3) ((A) [])",
}

UNARY_CLOSED = {
    "id": lambda a, b: (a, b),
    "sqrt1": lambda a, b: (~b, a),
    "sqrt2": lambda a, b: (~a, ~b),
    "sqrt3": lambda a, b: (b, ~a),
    "neg_t": lambda a, b: (b, a),
    "conflate": lambda a, b: (~b, ~a),
    "tilde": lambda a, b: (~a, ~b),
    "mark_right": lambda a, b: (a, ~b),
    "mark_left": lambda a, b: (~a, b),
}

_UNARY_ALIASES = {"neg": "neg_t", "not": "neg_t", "!": "conflate", "cross": "tilde",
                  "mr": "mark_right", "ml": "mark_left"}


def unary(name: str, x) -> SimpleValue:
    name = _UNARY_ALIASES.get(name, name)
    if name not in UNARY_FORMS:
        raise KeyError(f"unknown unary operation {name!r}")
    x = SimpleValue(x)
    via_bf = bf_eval(_form(UNARY_FORMS[name]), {"A": x})
    via_pair = SimpleValue.from_pair(*UNARY_CLOSED[name](*x.pair))
    if via_bf != via_pair:
        raise DisagreementError(f"{name}({x}): BF form gives {via_bf}, pair formula gives {via_pair}")
    return via_bf


def neg_t(x):
    return unary("neg_t", x)


def conflate(x):
    return unary("conflate", x)


def tilde(x):
    return unary("tilde", x)


# ---------------------------------------------------------------------------
# tables

T_ORDER = (1, 0, 2, 3)
K_ORDER = (0, 1, 3, 2)
TABLE_ORDERS = {"or_t": T_ORDER, "and_t": T_ORDER, "oplus_k": K_ORDER, "otimes_k": K_ORDER}
TABLE_SYMBOLS = {"or_t": "A v B", "and_t": "A ^ B", "oplus_k": "A + B", "otimes_k": "A x B"}


@dataclass
class FourOpTable:
    name: str
    order: tuple
    entries: list  # entries[r][c] = op(order[r], order[c])

    def lookup(self, x, y) -> int:
        return self.entries[self.order.index(int(x))][self.order.index(int(y))]

    def to_json(self) -> dict:
        return {"name": self.name, "order": list(self.order),
                "entries": [list(row) for row in self.entries]}

    @classmethod
    def from_json(cls, data) -> "FourOpTable":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["name"], tuple(data["order"]), [list(r) for r in data["entries"]])

    def to_text(self) -> str:
        head = f"{TABLE_SYMBOLS.get(self.name, self.name):<6}|" + "".join(f" {c}" for c in self.order)
        lines = [f"{self.name}: {BILATTICE_FORMS.get(self.name, '')}".rstrip(), head,
                 "-" * len(head)]
        for r, row in zip(self.order, self.entries):
            lines.append(f"{r:<6}|" + "".join(f" {x}" for x in row))
        return "\n".join(lines)


def op_table(name: str) -> FourOpTable:
    name = _OP_ALIASES.get(name, name)
    if name not in TABLE_ORDERS:
        raise KeyError(f"unknown table {name!r}")
    order = TABLE_ORDERS[name]
    entries = [[int(bilattice_op(name, r, c)) for c in order] for r in order]
    return FourOpTable(name, order, entries)


# ---------------------------------------------------------------------------
# WF verification


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    cases: int = 0
    witness: Optional[dict] = None


def calculus_equivalent(f, g, calculus: str):
    """(equal, countermodel, cases) by enumerating every valuation."""
    f, g = as_expr(f), as_expr(g)
    if calculus == "pa":
        r = pa_equivalent(f, g)
        return r.equal, r.countermodel, r.cases
    if calculus == "bf":
        evaluate = bf_eval
    elif calculus in ENCLOSURES:
        def evaluate(e, v):
            return pair_calculus_eval(e, v, calculus)
    else:
        raise ValueError(f"unknown calculus {calculus!r}")
    fo, fi = split_variables(f)
    go, gi = split_variables(g)
    cases = 0
    for v in bf_valuations(fo | go, fi | gi):
        cases += 1
        if evaluate(f, v) != evaluate(g, v):
            return False, v, cases
    return True, None, cases


WF_LAWS = {
    "W1": ("((A) (B)) C", "((A C) (B C))"),
    "W2": ("((A) B) A", "A"),
}
WF_FAILURES = {
    "B3": ("(A) B", "(A B) B"),
    "B4": ("((A) A)", ""),
}


def verify_wf() -> list[Check]:
    """W1 and W2 hold in WF; B3 and B4 each fail with a witness."""
    out = []
    for name, (lhs, rhs) in WF_LAWS.items():
        ok, cm, cases = calculus_equivalent(lhs, rhs, "wf")
        out.append(Check(f"WF {name} {lhs} = {rhs}", ok, "" if ok else f"fails at {cm}", cases, cm))
    for name, (lhs, rhs) in WF_FAILURES.items():
        ok, cm, cases = calculus_equivalent(lhs, rhs, "wf")
        detail = f"countermodel {describe(cm)}" if cm else "unexpectedly valid"
        out.append(Check(f"WF {name} {lhs} = {rhs} fails", not ok, detail, cases, cm))
    return out


def describe(v) -> str:
    from .bf_engine import describe_valuation
    return describe_valuation(v) if v else ""


# ---------------------------------------------------------------------------
# groups of unary maps


@dataclass(frozen=True)
class UnaryMap:
    name: str
    images: tuple  # images[x] for x = 0..3

    def __call__(self, x) -> SimpleValue:
        return SimpleValue(self.images[int(x)])

    def then(self, other: "UnaryMap") -> "UnaryMap":
        """``other`` after ``self``."""
        return UnaryMap(f"{other.name}.{self.name}", tuple(other.images[i] for i in self.images))


def unary_map(name: str) -> UnaryMap:
    name = _UNARY_ALIASES.get(name, name)
    return UnaryMap(name, tuple(int(unary(name, x)) for x in VALUES))


@dataclass
class GroupReport:
    closed: bool
    order: int
    isomorphism_class: str
    element_orders: dict = field(default_factory=dict)
    abelian: bool = False


def _element_order(images: tuple, limit: int = 64) -> int:
    identity = tuple(range(len(images)))
    cur, k = images, 1
    while cur != identity:
        cur = tuple(images[i] for i in cur)
        k += 1
        if k > limit:
            return 0
    return k


def verify_group(maps: Sequence, bound: int = 256) -> GroupReport:
    """Close ``maps`` under composition and classify the result."""
    given = {tuple(m.images) if isinstance(m, UnaryMap) else tuple(m) for m in maps}
    elements = set(given)
    frontier = list(given)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(elements):
                for c in (tuple(b[i] for i in a), tuple(a[i] for i in b)):
                    if c not in elements:
                        elements.add(c)
                        nxt.append(c)
        if len(elements) > bound:
            return GroupReport(False, len(elements), "unbounded")
        frontier = nxt
    closed = elements == given
    identity = tuple(range(4))
    is_group = identity in elements and all(sorted(e) == [0, 1, 2, 3] for e in elements)
    orders = {e: _element_order(e) for e in elements} if is_group else {}
    abelian = all(tuple(b[i] for i in a) == tuple(a[i] for i in b)
                  for a in elements for b in elements)
    n = len(elements)
    if not is_group:
        cls = "not a group"
    elif n == 4 and all(orders[e] == 2 for e in elements if e != identity):
        cls = "Klein four"
    elif n == 8 and not abelian and sum(1 for o in orders.values() if o == 4) == 2:
        cls = "dihedral of order 8"
    elif any(o == n for o in orders.values()):
        cls = f"cyclic of order {n}"
    else:
        cls = f"group of order {n}"
    return GroupReport(closed, n, cls, {e: o for e, o in orders.items()}, abelian)


KLEIN_NEGATIONS = ("id", "neg_t", "conflate", "tilde")
KLEIN_MARKS = ("id", "tilde", "mark_right", "mark_left")
DIHEDRAL = ("id", "sqrt1", "sqrt2", "sqrt3", "neg_t", "conflate", "mark_right", "mark_left")


# ---------------------------------------------------------------------------
# rotation calculus of order 2n


@dataclass(frozen=True)
class TupleValue:
    components: tuple

    @property
    def n(self) -> int:
        return len(self.components)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.components) + ")"

    @classmethod
    def unmarked(cls, n: int) -> "TupleValue":
        return cls((U,) * n)

    @classmethod
    def parse(cls, text: str) -> "TupleValue":
        body = text.strip().strip("()").replace(",", "").replace(" ", "")
        if not body or set(body) - {"m", "u"}:
            raise ValueError(f"tuple value must be written with m/u, got {text!r}")
        return cls(tuple(M if ch == "m" else U for ch in body))


def all_tuples(n: int):
    for combo in itertools.product((U, M), repeat=n):
        yield TupleValue(combo)


def rot_cross(t: TupleValue) -> TupleValue:
    """Shift right, crossing the component that wraps around."""
    c = t.components
    return TupleValue((~c[-1],) + c[:-1])


def rot_juxt(t: TupleValue, u: TupleValue) -> TupleValue:
    if t.n != u.n:
        raise ValueError(f"arity mismatch: {t.n} vs {u.n}")
    return TupleValue(tuple(M if (a or b) else U for a, b in zip(t.components, u.components)))


def rot_power(t: TupleValue, k: int) -> TupleValue:
    for _ in range(k % (2 * t.n)):
        t = rot_cross(t)
    return t


def rot_order(t: TupleValue) -> int:
    cur, k = rot_cross(t), 1
    while cur != t:
        cur, k = rot_cross(cur), k + 1
    return k


def rot_value(n: int, residue: int) -> TupleValue:
    """The residue-th rotation of the unmarked tuple."""
    return rot_power(TupleValue.unmarked(n), residue)


def rot_eval(e, v: Optional[Mapping] = None, n: int = 2) -> TupleValue:
    """Evaluate in the order-2n rotation calculus.

    ``[E]`` is one rotation and ``(E)`` is n rotations, which crosses every
    component once. Pair literals are only meaningful for n = 2.
    """
    v = v or {}

    def ev(x: Expr) -> TupleValue:
        if isinstance(x, Juxt):
            return reduce(rot_juxt, (ev(c) for c in x.children), TupleValue.unmarked(n))
        if isinstance(x, CrossI):
            return rot_power(ev(x.child), x.power)
        if isinstance(x, Cross):
            return rot_power(ev(x.child), n)
        if isinstance(x, Var):
            if x.name not in v:
                raise UnboundVariable(x.name)
            value = v[x.name]
            if isinstance(value, TupleValue):
                if value.n != n:
                    raise ValueError(f"arity mismatch for {x.name}")
                return value
            return rot_value(n, int(value))
        if isinstance(x, Pair):
            if n != 2:
                raise ValueError("pair literals need arity 2")
            return TupleValue((pa_simplify(x.left, v), pa_simplify(x.right, v)))
        raise TypeError(f"not an expression: {x!r}")

    return ev(as_expr(e))


def tuple_to_simple(t: TupleValue) -> SimpleValue:
    return SimpleValue.from_pair(*t.components)


def simple_to_tuple(x) -> TupleValue:
    return TupleValue(SimpleValue(x).pair)
