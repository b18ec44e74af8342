"""Random expressions for property tests and the agreement checks."""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .syntax import EMPTY, MARK, Cross, CrossI, DIGITS, Expr, Juxt, Var, canonicalize

MAX_DEPTH = 8
MAX_WIDTH = 5


def random_pa(rng: random.Random, depth: int = MAX_DEPTH, width: int = MAX_WIDTH,
              names: Sequence[str] = (), leaf: float = 0.55) -> Expr:
    """A primary-algebra expression; ground unless ``names`` is given."""
    return _pa(rng, depth, width, tuple(names), leaf)


def _pa(rng, depth, width, names, leaf):
    # a mark leaf is itself one enclosure deep
    if depth <= 1 or rng.random() < leaf:
        if names and rng.random() < 0.5:
            return Var(rng.choice(names))
        return MARK if rng.random() < 0.5 else EMPTY
    members = [Cross(_pa(rng, depth - 1, width, names, leaf))
               for _ in range(rng.randint(1, width))]
    # leave some bare variables next to the crosses
    if names and rng.random() < 0.3:
        members.append(Var(rng.choice(names)))
    return members[0] if len(members) == 1 else Juxt(tuple(members))


def random_bf(rng: random.Random, depth: int = MAX_DEPTH, width: int = MAX_WIDTH,
              names: Sequence[str] = (), leaf: float = 0.55, raw: bool = False) -> Expr:
    """A BF expression mixing plain crosses, imaginary crosses and pair literals.

    With ``raw=True`` the tree is left as built (powers may exceed 3 and
    imaginary crosses may nest), which is what the nested-marking
    annotation wants to see; otherwise it is canonicalized.
    """
    e = _bf(rng, depth, width, tuple(names), leaf)
    return e if raw else canonicalize(e)


def _leaf(rng, names):
    r = rng.random()
    if names and r < 0.4:
        return Var(rng.choice(names))
    if r < 0.7:
        return rng.choice(list(DIGITS.values()))
    return EMPTY


def _bf(rng, depth, width, names, leaf):
    if depth <= 0 or rng.random() < leaf:
        return _leaf(rng, names)
    members = []
    for _ in range(rng.randint(1, width)):
        inner = _bf(rng, depth - 1, width, names, leaf)
        r = rng.random()
        if r < 0.3:
            members.append(Cross(inner))
        elif r < 0.85:
            members.append(CrossI(inner, rng.randint(1, 5)))
        elif isinstance(inner, Juxt):
            members.append(Cross(inner))  # a bare juxtaposition would widen the parent
        else:
            members.append(inner)
    return members[0] if len(members) == 1 else Juxt(tuple(members))


def random_pa_many(count: int, seed: Optional[int] = 0, **kw) -> list:
    rng = random.Random(seed)
    return [random_pa(rng, **kw) for _ in range(count)]


def random_bf_many(count: int, seed: Optional[int] = 0, **kw) -> list:
    rng = random.Random(seed)
    return [random_bf(rng, **kw) for _ in range(count)]


def enclosure_depth(e: Expr) -> int:
    """Nesting depth with each enclosure (whatever its power) as one level."""
    if isinstance(e, Juxt):
        return max((enclosure_depth(c) for c in e.children), default=0)
    if isinstance(e, (Cross, CrossI)):
        return 1 + enclosure_depth(e.child)
    return 0


def width(e: Expr) -> int:
    """Largest juxtaposition anywhere outside pair literals."""
    if isinstance(e, Juxt):
        return max([len(e.children)] + [width(c) for c in e.children])
    if isinstance(e, (Cross, CrossI)):
        return width(e.child)
    return 1
