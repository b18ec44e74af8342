"""Expression trees, the ASCII grammar, printer and canonical form.

Concrete syntax::

    ()        the mark (cross)
    [E]       imaginary cross, [E]^k for k-fold nesting (input only)
    {E1,E2}   ordered pair of primary-algebra expressions
    A, B7     variables
    0 1 2 3   the simple values {,} {(),} {(),()} {,()}

Juxtaposition is adjacency. A canonical juxtaposition is a flat multiset
whose members are sorted by their printed text; it is never idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.message = message
        self.offset = offset


class Expr:
    """Base class for all expression nodes."""

    @cached_property
    def text(self) -> str:
        return to_text(self)

    def __str__(self) -> str:
        return self.text

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.text))


@dataclass(frozen=True, eq=True)
class Juxt(Expr):
    children: tuple = ()

    __hash__ = Expr.__hash__


@dataclass(frozen=True, eq=True)
class Cross(Expr):
    child: Expr

    __hash__ = Expr.__hash__


@dataclass(frozen=True, eq=True)
class CrossI(Expr):
    child: Expr
    power: int = 1

    __hash__ = Expr.__hash__


@dataclass(frozen=True, eq=True)
class Pair(Expr):
    left: Expr
    right: Expr

    __hash__ = Expr.__hash__


@dataclass(frozen=True, eq=True)
class Var(Expr):
    name: str

    __hash__ = Expr.__hash__


EMPTY = Juxt(())
MARK = Cross(EMPTY)

# residue -> pair literal; 0=(u,u) 1=(m,u) 2=(m,m) 3=(u,m)
DIGITS = {
    "0": Pair(EMPTY, EMPTY),
    "1": Pair(MARK, EMPTY),
    "2": Pair(MARK, MARK),
    "3": Pair(EMPTY, MARK),
}


# ---------------------------------------------------------------------------
# smart constructors


def items(e: Expr) -> tuple:
    """Members of ``e`` viewed as a juxtaposition."""
    if isinstance(e, Juxt):
        return e.children
    return (e,)


def juxt(*members: Expr) -> Expr:
    flat = []
    for m in members:
        flat.extend(items(m))
    if len(flat) == 1:
        return flat[0]
    flat.sort(key=lambda x: x.text)
    return Juxt(tuple(flat))


def cross(e: Expr) -> Cross:
    return Cross(e)


def crossi(e: Expr, power: int = 1) -> Expr:
    if isinstance(e, CrossI):
        power += e.power
        e = e.child
    power %= 4
    if power == 0:
        return e
    return CrossI(e, power)


def pair(left: Expr, right: Expr) -> Pair:
    for side in (left, right):
        if not is_pa(side):
            raise ValueError("pair components must be primary-algebra expressions")
    return Pair(left, right)


def canonicalize(e: Expr) -> Expr:
    """Flatten juxtapositions, sort members and reduce imaginary powers mod 4."""
    if isinstance(e, Juxt):
        return juxt(*(canonicalize(c) for c in e.children))
    if isinstance(e, Cross):
        return Cross(canonicalize(e.child))
    if isinstance(e, CrossI):
        return crossi(canonicalize(e.child), e.power)
    if isinstance(e, Pair):
        return Pair(canonicalize(e.left), canonicalize(e.right))
    return e


# ---------------------------------------------------------------------------
# printing


def to_text(e: Expr) -> str:
    if isinstance(e, Juxt):
        return " ".join(c.text for c in e.children)
    if isinstance(e, Cross):
        return "(" + e.child.text + ")"
    if isinstance(e, CrossI):
        return "[" * e.power + e.child.text + "]" * e.power
    if isinstance(e, Pair):
        return "{" + e.left.text + "," + e.right.text + "}"
    if isinstance(e, Var):
        return e.name
    raise TypeError(f"not an expression: {e!r}")


def print_expr(e: Expr) -> str:
    return canonicalize(e).text


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str, canonical: bool):
        self.text = text
        self.pos = 0
        self.canonical = canonical

    def error(self, message: str, pos: int | None = None):
        pos = self.pos if pos is None else pos
        raise ParseError(message, len(self.text[:pos].encode("utf-8")))

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def join(self, terms: list) -> Expr:
        if self.canonical:
            return juxt(*terms)
        flat = []
        for t in terms:
            flat.extend(items(t))
        return flat[0] if len(flat) == 1 else Juxt(tuple(flat))

    def expr(self, stop: str) -> Expr:
        terms = []
        while True:
            ch = self.peek()
            if ch == "" or ch in stop:
                return self.join(terms)
            terms.append(self.term())

    def term(self) -> Expr:
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            inner = self.expr(")")
            self.expect(")")
            return Cross(inner)
        if ch == "[":
            self.pos += 1
            inner = self.expr("]")
            self.expect("]")
            power = 1
            if self.peek() == "^":
                self.pos += 1
                self.skip_ws()
                m = self.pos
                while self.pos < len(self.text) and self.text[self.pos].isdigit():
                    self.pos += 1
                if m == self.pos:
                    self.error("expected an integer after '^'")
                power = int(self.text[m:self.pos])
            if self.canonical:
                return crossi(inner, power)
            return inner if power == 0 else CrossI(inner, power)
        if ch == "{":
            self.pos += 1
            self.skip_ws()
            left_at = self.pos
            left = self.expr(",}")
            self.expect(",")
            self.skip_ws()
            right_at = self.pos
            right = self.expr(",}")
            self.expect("}")
            for side, at in ((left, left_at), (right, right_at)):
                if not is_pa(side):
                    self.error("pair components must be primary-algebra expressions", at)
            return Pair(left, right)
        if "A" <= ch <= "Z":
            self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Var(self.text[start:self.pos])
        if ch in DIGITS:
            self.pos += 1
            return DIGITS[ch]
        self.error(f"unexpected character {ch!r}")


def parse(text: str, canonical: bool = True) -> Expr:
    """Parse ``text`` in the expression grammar.

    With ``canonical=False`` juxtapositions keep their written order and
    imaginary crosses keep their written power (``[X]^4`` stays a fourfold
    cross), which is what :func:`bfcalc.bf_engine.flatten` needs to show
    reflexion step by step.
    """
    p = _Parser(text, canonical)
    e = p.expr("")
    if p.pos != len(text):
        p.error(f"unexpected character {text[p.pos]!r}")
    return e


def as_expr(e) -> Expr:
    return parse(e) if isinstance(e, str) else e


# ---------------------------------------------------------------------------
# queries and traversal


def is_pa(e: Expr) -> bool:
    """True when ``e`` uses only the two-valued primary-algebra syntax."""
    if isinstance(e, Juxt):
        return all(is_pa(c) for c in e.children)
    if isinstance(e, Cross):
        return is_pa(e.child)
    return isinstance(e, Var)


def variables(e: Expr) -> set:
    out = set()
    for _, sub in positions(e):
        if isinstance(sub, Var):
            out.add(sub.name)
    return out


def split_variables(e: Expr) -> tuple[set, set]:
    """(variables outside pairs, variables inside pair components)."""
    outer, inner = set(), set()

    def walk(x, in_pair):
        if isinstance(x, Var):
            (inner if in_pair else outer).add(x.name)
        elif isinstance(x, Pair):
            walk(x.left, True)
            walk(x.right, True)
        else:
            for c in children(x):
                walk(c, in_pair)

    walk(e, False)
    return outer, inner


def children(e: Expr) -> tuple:
    if isinstance(e, Juxt):
        return e.children
    if isinstance(e, (Cross, CrossI)):
        return (e.child,)
    if isinstance(e, Pair):
        return (e.left, e.right)
    return ()


def positions(e: Expr, path: tuple = ()) -> Iterator[tuple[tuple, Expr]]:
    """Pre-order walk yielding ``(path, subterm)``."""
    yield path, e
    for i, c in enumerate(children(e)):
        yield from positions(c, path + (i,))


def in_pair(e: Expr, path) -> bool:
    """True when ``path`` points strictly inside a pair component."""
    node = e
    for i in path:
        if isinstance(node, Pair):
            return True
        node = children(node)[i]
    return False


def subterm(e: Expr, path) -> Expr:
    node = e
    for i in path:
        kids = children(node)
        if not 0 <= i < len(kids):
            raise IndexError(f"path {list(path)} does not address a subterm of {e.text!r}")
        node = kids[i]
    return node


def replace_at(e: Expr, path, new: Expr) -> Expr:
    """Replace the subterm at ``path`` and re-canonicalize."""
    if not path:
        return canonicalize(new)
    i, rest = path[0], path[1:]
    kids = children(e)
    if not 0 <= i < len(kids):
        raise IndexError(f"path index {i} out of range")
    replaced = replace_at(kids[i], rest, new)
    if isinstance(e, Juxt):
        return juxt(*kids[:i], replaced, *kids[i + 1:])
    if isinstance(e, Cross):
        return Cross(replaced)
    if isinstance(e, CrossI):
        return crossi(replaced, e.power)
    if isinstance(e, Pair):
        return Pair(replaced, e.right) if i == 0 else Pair(e.left, replaced)
    raise IndexError("variables have no subterms")


def substitute(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """Replace every listed variable by its image; result is canonical."""
    if isinstance(e, Var):
        return mapping.get(e.name, e)
    if isinstance(e, Juxt):
        return juxt(*(substitute(c, mapping) for c in e.children))
    if isinstance(e, Cross):
        return Cross(substitute(e.child, mapping))
    if isinstance(e, CrossI):
        return crossi(substitute(e.child, mapping), e.power)
    if isinstance(e, Pair):
        return Pair(substitute(e.left, mapping), substitute(e.right, mapping))
    return e


def size(e: Expr) -> int:
    return sum(1 for _ in positions(e))


def depth(e: Expr) -> int:
    """Nesting depth counting every cross layer."""
    if isinstance(e, Juxt):
        return max((depth(c) for c in e.children), default=0)
    if isinstance(e, Cross):
        return 1 + depth(e.child)
    if isinstance(e, CrossI):
        return e.power + depth(e.child)
    if isinstance(e, Pair):
        return 1 + max(depth(e.left), depth(e.right))
    return 0
