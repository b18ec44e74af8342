"""The four-valued BF calculus.

A simple value is a pair of primary-arithmetic values, stored as a residue
mod 4 so that the imaginary cross ``[X]`` is ``+1``::

    0 = (u,u)   1 = (m,u)   2 = (m,m)   3 = (u,m)

Ground expressions are evaluated two independent ways: :func:`bf_eval`
works on pairs (SQRT then JUXT then the primary arithmetic), and
:func:`nms_eval` synthesizes nested-marking labels M0..M3.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Mapping, Optional

from .pa_engine import M, U, PaValue, UnboundVariable, pa_simplify, reduce_value
from .syntax import (
    Cross, CrossI, Expr, Juxt, Pair, Var, as_expr, canonicalize, juxt,
    split_variables, substitute,
)

MAX_BF_VARIABLES = 10


class SimpleValue(enum.IntEnum):
    ZERO = 0
    ONE = 1
    TWO = 2
    THREE = 3

    @property
    def pair(self) -> tuple[PaValue, PaValue]:
        return _PAIRS[self]

    @classmethod
    def from_pair(cls, a: PaValue, b: PaValue) -> "SimpleValue":
        return _FROM_PAIR[(a, b)]

    @property
    def expr(self) -> Expr:
        a, b = self.pair
        return Pair(a.expr, b.expr)

    def pair_text(self) -> str:
        a, b = self.pair
        return f"({a},{b})"

    def __str__(self) -> str:
        return str(int(self))


_PAIRS = {
    SimpleValue.ZERO: (U, U),
    SimpleValue.ONE: (M, U),
    SimpleValue.TWO: (M, M),
    SimpleValue.THREE: (U, M),
}
_FROM_PAIR = {v: k for k, v in _PAIRS.items()}

VALUES = tuple(SimpleValue)


def sqrt_pair(a: PaValue, b: PaValue) -> tuple[PaValue, PaValue]:
    """[(a,b)] = ((b), a)"""
    return ~b, a


def juxt_pair(x, y):
    return (M if (x[0] or y[0]) else U), (M if (x[1] or y[1]) else U)


def sqrt_val(x) -> SimpleValue:
    return SimpleValue((int(x) + 1) % 4)


def juxt_val(x, y) -> SimpleValue:
    """Componentwise juxtaposition of the pair forms."""
    return SimpleValue.from_pair(*juxt_pair(SimpleValue(x).pair, SimpleValue(y).pair))


# ---------------------------------------------------------------------------
# pair evaluation


def bf_eval(e, v: Optional[Mapping[str, object]] = None) -> SimpleValue:
    """Evaluate ``e`` to a simple value.

    ``v`` maps variables outside pairs to :class:`SimpleValue` and variables
    inside pair components to :class:`PaValue`.
    """
    e = as_expr(e)
    return SimpleValue.from_pair(*_eval_pair(e, v or {}))


def _eval_pair(e: Expr, v) -> tuple[PaValue, PaValue]:
    if isinstance(e, Juxt):
        return reduce(juxt_pair, (_eval_pair(c, v) for c in e.children), (U, U))
    if isinstance(e, CrossI):
        a, b = _eval_pair(e.child, v)
        for _ in range(e.power % 4):
            a, b = sqrt_pair(a, b)
        return a, b
    if isinstance(e, Cross):
        return sqrt_pair(*sqrt_pair(*_eval_pair(e.child, v)))
    if isinstance(e, Pair):
        return pa_simplify(e.left, v), pa_simplify(e.right, v)
    if isinstance(e, Var):
        if e.name not in v:
            raise UnboundVariable(e.name)
        return SimpleValue(v[e.name]).pair
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# nested marking scheme

# rules for juxtaposed marks: M2 absorbs, M0 is neutral, Mx Mx = Mx, M1 M3 = M2
NMS_COMBINE = {}
for _x in range(4):
    for _y in range(4):
        if 2 in (_x, _y):
            NMS_COMBINE[_x, _y] = 2
        elif _x == _y:
            NMS_COMBINE[_x, _y] = _x
        elif 0 in (_x, _y):
            NMS_COMBINE[_x, _y] = _x + _y
        else:
            NMS_COMBINE[_x, _y] = 2

_CONSTANT_LABEL = {(U, U): 0, (M, U): 1, (M, M): 2, (U, M): 3}


def _constant_label(p: Pair) -> int:
    # components are reduced by literal A1/A2 rewriting, not by pa_simplify
    return _CONSTANT_LABEL[reduce_value(p.left), reduce_value(p.right)]


def _ground(e, v) -> Expr:
    outer, inner = split_variables(e)
    missing = sorted((outer | inner) - set(v or {}))
    if missing:
        raise UnboundVariable(missing[0])
    if not outer and not inner:
        return e
    mapping = {name: SimpleValue(v[name]).expr for name in outer}
    mapping.update({name: v[name].expr for name in inner})
    return substitute(e, mapping)


def nms_label(e: Expr) -> int:
    """Label of the outermost space of a ground expression."""
    if isinstance(e, Juxt):
        label = 0
        for c in e.children:
            label = NMS_COMBINE[label, nms_label(c)]
        return label
    if isinstance(e, CrossI):
        return (nms_label(e.child) + e.power) % 4
    if isinstance(e, Cross):
        return (nms_label(e.child) + 2) % 4
    if isinstance(e, Pair):
        return _constant_label(e)
    raise TypeError(f"nested marking needs a ground expression, got {e.text!r}")


def nms_eval(e, v: Optional[Mapping[str, object]] = None) -> SimpleValue:
    e = _ground(as_expr(e), v)
    return SimpleValue(nms_label(e))


def nms_annotate(e, v=None) -> str:
    """Write every space of ``e`` followed by its label.

    ``[[[[[ ]]]]]`` becomes ``[[[[[0] 1] 2] 3] 0] 1``.
    """
    e = _ground(as_expr(e), v)
    text, _ = _annotate(e)
    return text


def _annotate(e: Expr) -> tuple[str, int]:
    if isinstance(e, Juxt):
        if not e.children:
            return "0", 0
        parts, label = [], 0
        for c in e.children:
            t, lab = _annotate(c)
            parts.append(t)
            label = NMS_COMBINE[label, lab]
        if len(parts) > 1:
            parts.append(str(label))  # label of the shared space
        return " ".join(parts), label
    if isinstance(e, CrossI):
        text, label = _annotate(e.child)
        for _ in range(e.power):
            label = (label + 1) % 4
            text = f"[{text}] {label}"
        return text, label
    if isinstance(e, Cross):
        text, label = _annotate(e.child)
        label = (label + 2) % 4
        return f"({text}) {label}", label
    if isinstance(e, Pair):
        label = _constant_label(e)
        return f"{e.text} {label}", label
    raise TypeError(f"nested marking needs a ground expression, got {e.text!r}")


# ---------------------------------------------------------------------------
# flattening to a pair of primary-algebra expressions


def component_names(name: str) -> tuple[str, str]:
    """Primary-algebra variables standing for the two sides of a BF variable."""
    return name + "1", name + "2"


@dataclass(frozen=True)
class FlattenedExpr:
    first: Expr
    second: Expr

    def __str__(self) -> str:
        return "{" + self.first.text + "," + self.second.text + "}"

    def as_pair(self) -> Pair:
        return Pair(self.first, self.second)

    def evaluate(self, v: Optional[Mapping[str, object]] = None) -> SimpleValue:
        pv = expand_valuation(v or {})
        return SimpleValue.from_pair(pa_simplify(self.first, pv), pa_simplify(self.second, pv))


def expand_valuation(v: Mapping[str, object]) -> dict:
    """BF valuation -> valuation of the doubled primary-algebra variables."""
    out = {}
    for name, value in v.items():
        if isinstance(value, PaValue):
            out[name] = value
        else:
            n1, n2 = component_names(name)
            out[n1], out[n2] = SimpleValue(value).pair
    return out


def flatten(e) -> FlattenedExpr:
    """Reduce ``e`` to a pair of primary-algebra expressions.

    Works on raw (non-canonical) trees too, so ``[X]^4`` flattens to
    ``{((X1)),((X2))}`` rather than the reflexion-reduced ``{X1,X2}``.
    """
    e = as_expr(e)
    a, b = _flatten(e)
    return FlattenedExpr(canonicalize(a), canonicalize(b))


def _flatten(e: Expr) -> tuple[Expr, Expr]:
    if isinstance(e, Var):
        n1, n2 = component_names(e.name)
        return Var(n1), Var(n2)
    if isinstance(e, Pair):
        return e.left, e.right
    if isinstance(e, Juxt):
        parts = [_flatten(c) for c in e.children]
        return juxt(*(p[0] for p in parts)), juxt(*(p[1] for p in parts))
    if isinstance(e, CrossI):
        a, b = _flatten(e.child)
        for _ in range(e.power):
            a, b = Cross(b), a
        return a, b
    if isinstance(e, Cross):
        a, b = _flatten(e.child)
        for _ in range(2):
            a, b = Cross(b), a
        return a, b
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# equivalence


@dataclass
class BfEquivalence:
    equal: bool
    countermodel: Optional[dict] = None
    cases: int = 0


def bf_valuations(outer, inner):
    """Four values per BF variable, two per variable inside a pair."""
    outer, inner = sorted(outer), sorted(inner)
    for bf_combo in itertools.product(VALUES, repeat=len(outer)):
        for pa_combo in itertools.product((U, M), repeat=len(inner)):
            v = dict(zip(outer, bf_combo))
            v.update(zip(inner, pa_combo))
            yield v


def bf_equivalent(f, g, evaluate=None) -> BfEquivalence:
    f, g = as_expr(f), as_expr(g)
    evaluate = evaluate or bf_eval
    fo, fi = split_variables(f)
    go, gi = split_variables(g)
    outer, inner = fo | go, fi | gi
    if outer & inner:
        raise ValueError(f"variables used both inside and outside pairs: {sorted(outer & inner)}")
    if len(outer) > MAX_BF_VARIABLES:
        raise ValueError(f"{len(outer)} variables exceed the limit of {MAX_BF_VARIABLES}")
    cases = 0
    for v in bf_valuations(outer, inner):
        cases += 1
        if evaluate(f, v) != evaluate(g, v):
            return BfEquivalence(False, v, cases)
    return BfEquivalence(True, None, cases)


def describe_valuation(v: Mapping[str, object]) -> str:
    """``A=1 (m,u), B=u`` style rendering in residue and pair notation."""
    parts = []
    for name in sorted(v):
        value = v[name]
        if isinstance(value, PaValue):
            parts.append(f"{name}={value}")
        elif isinstance(value, SimpleValue):
            parts.append(f"{name}={int(value)} {value.pair_text()}")
        else:
            parts.append(f"{name}={value}")
    return ", ".join(parts)
