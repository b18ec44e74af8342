"""Two-valued primary arithmetic and algebra.

Evaluation, equivalence by exhaustive valuation, a literal A1/A2 rewriter
used to check confluence, and the propositional-logic reading where the
mark is *true* and the empty space is *false*.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Mapping, Optional

from .syntax import (
    EMPTY, MARK, Cross, CrossI, Expr, Juxt, Pair, Var, as_expr, cross, items, juxt,
    positions, replace_at, subterm, variables,
)

MAX_PA_VARIABLES = 20


class UnboundVariable(KeyError):
    pass


class PaValue(enum.Enum):
    UNMARKED = 0
    MARKED = 1

    def __invert__(self) -> "PaValue":
        return PaValue.MARKED if self is PaValue.UNMARKED else PaValue.UNMARKED

    def __bool__(self) -> bool:
        return self is PaValue.MARKED

    def __str__(self) -> str:
        return "m" if self is PaValue.MARKED else "u"

    @property
    def expr(self) -> Expr:
        return MARK if self is PaValue.MARKED else EMPTY

    @classmethod
    def of(cls, flag) -> "PaValue":
        return cls.MARKED if flag else cls.UNMARKED


M = PaValue.MARKED
U = PaValue.UNMARKED


def pa_simplify(e, v: Optional[Mapping[str, PaValue]] = None) -> PaValue:
    """Value of a primary-algebra expression under valuation ``v``.

    A juxtaposition is marked as soon as one member is marked (A1 in
    multiset form); a cross inverts its contents (A2).
    """
    e = as_expr(e)
    v = v or {}
    if isinstance(e, Juxt):
        return M if any(pa_simplify(c, v) is M for c in e.children) else U
    if isinstance(e, Cross):
        return ~pa_simplify(e.child, v)
    if isinstance(e, Var):
        try:
            value = v[e.name]
        except KeyError:
            raise UnboundVariable(e.name) from None
        if not isinstance(value, PaValue):
            raise TypeError(f"variable {e.name} needs a marked/unmarked value, got {value!r}")
        return value
    if isinstance(e, (CrossI, Pair)):
        raise TypeError(f"not a primary-algebra expression: {e.text!r}")
    raise TypeError(f"not an expression: {e!r}")


def valuations(names, values=(U, M)):
    """All assignments of ``values`` to ``names`` in lexicographic order."""
    names = sorted(names)
    for combo in itertools.product(values, repeat=len(names)):
        yield dict(zip(names, combo))


@dataclass
class Equivalence:
    equal: bool
    countermodel: Optional[dict] = None
    cases: int = 0


def pa_equivalent(f, g) -> Equivalence:
    f, g = as_expr(f), as_expr(g)
    names = variables(f) | variables(g)
    if len(names) > MAX_PA_VARIABLES:
        raise ValueError(f"{len(names)} variables exceed the limit of {MAX_PA_VARIABLES}")
    cases = 0
    for v in valuations(names):
        cases += 1
        if pa_simplify(f, v) is not pa_simplify(g, v):
            return Equivalence(False, v, cases)
    return Equivalence(True, None, cases)


def is_tautology(e) -> bool:
    e = as_expr(e)
    return all(pa_simplify(e, v) is M for v in valuations(variables(e)))


# ---------------------------------------------------------------------------
# literal A1/A2 rewriting on ground expressions


def redexes(e: Expr) -> list:
    """Paths of A1 and A2 redexes in post-order (innermost first)."""
    found = [(p, sub) for p, sub in positions(e) if _is_redex(sub)]
    # post-order: deeper paths before their ancestors, then left to right
    found.sort(key=lambda ps: _postorder_key(ps[0]))
    return [p for p, _ in found]


def _postorder_key(path):
    return tuple(path) + (float("inf"),)


def _is_redex(sub: Expr) -> bool:
    if isinstance(sub, Cross) and sub.child == MARK:
        return True  # A2: (()) -> empty
    if isinstance(sub, Juxt):
        return sum(1 for c in sub.children if c == MARK) >= 2  # A1: () () -> ()
    return False


def _contract(sub: Expr) -> Expr:
    if isinstance(sub, Cross):
        return EMPTY
    kids = list(sub.children)
    kids.remove(MARK)
    return juxt(*kids)


def contract_at(e: Expr, path) -> Expr:
    """Perform the single A1 or A2 step at ``path``."""
    sub = subterm(e, path)
    if not _is_redex(sub):
        raise ValueError(f"no A1/A2 redex at {list(path)}")
    return replace_at(e, path, _contract(sub))


class _Node:
    """Mutable cross used by the reducer; ``space`` lists the crosses inside."""

    __slots__ = ("space", "parent", "depth")

    def __init__(self, parent, depth):
        self.space = []
        self.parent = parent
        self.depth = depth

    def is_mark(self):
        return not self.space


def _build(e: Expr, owner: _Node) -> None:
    for c in items(e):
        if isinstance(c, Juxt):
            _build(c, owner)
            continue
        if not isinstance(c, Cross):
            raise TypeError(f"not a ground primary-arithmetic expression: {c.text!r}")
        node = _Node(owner, owner.depth + 1)
        owner.space.append(node)
        _build(c.child, node)


def _all_nodes(root):
    stack = [root]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(n.space)


# Redexes are recorded as ("A1", space owner) or ("A2", cross).
def _valid(kind, node) -> bool:
    if kind == "A2":
        return node.parent is not None and len(node.space) == 1 and node.space[0].is_mark() \
            and node in node.parent.space
    return sum(1 for c in node.space if c.is_mark()) >= 2


def _attached(node) -> bool:
    while node.parent is not None:
        if node not in node.parent.space:
            return False
        node = node.parent
    return True


def _fire(kind, node) -> _Node:
    """Contract a redex and return the owner of the space that changed."""
    if kind == "A2":
        node.parent.space.remove(node)
        return node.parent
    for c in node.space:
        if c.is_mark():
            node.space.remove(c)
            break
    return node


def _local(owner):
    # a changed space can only create redexes at most two levels up
    out = [("A1", owner)]
    p = owner.parent
    if p is not None:
        out.append(("A2", owner))
        out.append(("A1", p))
        if p.parent is not None:
            out.append(("A2", p))
    return out


class _Bag:
    """Insertion-ordered set with O(1) removal by index."""

    def __init__(self, elems=()):
        self.items, self.index = [], {}
        for x in elems:
            self.add(x)

    def __len__(self):
        return len(self.items)

    def add(self, x):
        if x not in self.index:
            self.index[x] = len(self.items)
            self.items.append(x)

    def pop_at(self, i):
        x, last = self.items[i], self.items.pop()
        del self.index[x]
        if i < len(self.items):
            self.items[i] = last
            self.index[last] = i
        return x

    def pop_min(self, key):
        return self.pop_at(min(range(len(self.items)), key=lambda i: key(self.items[i])))


def _innermost(owner: _Node) -> int:
    """Leftmost-innermost normalization of a space, counting steps."""
    steps = 0
    i = 0
    while i < len(owner.space):
        c = owner.space[i]
        steps += _innermost(c)
        if len(c.space) == 1 and c.space[0].is_mark():
            owner.space.pop(i)  # A2
            steps += 1
            continue
        i += 1
    while sum(1 for c in owner.space if c.is_mark()) >= 2:
        _fire("A1", owner)
        steps += 1
    return steps


def pa_reduce(e, strategy: str = "innermost", rng: Optional[random.Random] = None,
              max_steps: int = 1_000_000) -> tuple[Expr, int]:
    """Rewrite a ground expression with A1 and A2 until no redex is left.

    ``strategy`` is ``"innermost"`` (leftmost-innermost), ``"outermost"`` or
    ``"random"`` (uniform over the current redexes). Returns the final
    simple expression and the step count.
    """
    e = as_expr(e)
    if variables(e):
        raise ValueError("pa_reduce works on ground expressions only")
    if strategy not in ("innermost", "outermost", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = rng or random.Random(0)
    root = _Node(None, 0)
    _build(e, root)
    if strategy == "innermost":
        steps = _innermost(root)
    else:
        pending = _Bag((k, n) for n in _all_nodes(root) for k in ("A1", "A2") if _valid(k, n))
        steps = 0
        while pending:
            if strategy == "random":
                redex = pending.pop_at(rng.randrange(len(pending)))
            else:
                redex = pending.pop_min(lambda r: (r[1].depth, r[0]))
            kind, node = redex
            if not (_valid(kind, node) and _attached(node)):
                continue
            owner = _fire(kind, node)
            steps += 1
            if steps > max_steps:
                raise RuntimeError("reduction did not terminate")
            for r in _local(owner):
                if _valid(*r):
                    pending.add(r)
    if len(root.space) > 1 or (root.space and not root.space[0].is_mark()):
        raise AssertionError("irreducible non-simple expression")
    return (MARK if root.space else EMPTY), steps


def reduce_value(e, strategy: str = "innermost", rng=None) -> PaValue:
    final, _ = pa_reduce(e, strategy, rng)
    return M if final == MARK else U


# ---------------------------------------------------------------------------
# propositional logic


class PropFormula:
    pass


@dataclass(frozen=True)
class Atom(PropFormula):
    name: str


@dataclass(frozen=True)
class Not(PropFormula):
    arg: PropFormula


@dataclass(frozen=True)
class And(PropFormula):
    left: PropFormula
    right: PropFormula


@dataclass(frozen=True)
class Or(PropFormula):
    left: PropFormula
    right: PropFormula


@dataclass(frozen=True)
class Implies(PropFormula):
    left: PropFormula
    right: PropFormula


@dataclass(frozen=True)
class ConstTrue(PropFormula):
    pass


@dataclass(frozen=True)
class ConstFalse(PropFormula):
    pass


def from_logic(p: PropFormula) -> Expr:
    if isinstance(p, Atom):
        return Var(p.name)
    if isinstance(p, ConstTrue):
        return MARK
    if isinstance(p, ConstFalse):
        return EMPTY
    if isinstance(p, Not):
        return cross(from_logic(p.arg))
    if isinstance(p, Or):
        return juxt(from_logic(p.left), from_logic(p.right))
    if isinstance(p, And):
        return cross(juxt(cross(from_logic(p.left)), cross(from_logic(p.right))))
    if isinstance(p, Implies):
        return juxt(cross(from_logic(p.left)), from_logic(p.right))
    raise TypeError(f"not a formula: {p!r}")


def truth(p: PropFormula, v: Mapping[str, bool]) -> bool:
    """Classical truth value, used as an oracle for :func:`from_logic`."""
    if isinstance(p, Atom):
        return bool(v[p.name])
    if isinstance(p, ConstTrue):
        return True
    if isinstance(p, ConstFalse):
        return False
    if isinstance(p, Not):
        return not truth(p.arg, v)
    if isinstance(p, Or):
        return truth(p.left, v) or truth(p.right, v)
    if isinstance(p, And):
        return truth(p.left, v) and truth(p.right, v)
    if isinstance(p, Implies):
        return (not truth(p.left, v)) or truth(p.right, v)
    raise TypeError(f"not a formula: {p!r}")
