"""Signed permutations and the order-four braid representation.

A :class:`SignedPerm` sends basis vector ``e_i`` to ``signs[i] * e_{perm[i]}``.
Composition follows matrix multiplication: ``a * b`` applies ``b`` first.

The generator ``sigma_i`` crosses strands i and i+1 with the over-crossing
strand acting as a mark: ``e_i -> e_{i+1}`` and ``e_{i+1} -> -e_i``. On two
strands this is the square root of negation, ``(a, b) -> ((b), a)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class SignedPerm:
    perm: tuple
    signs: tuple

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"not a permutation: {self.perm}")
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +1/-1, one per strand: {self.signs}")

    @property
    def n(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        return compose(self, other)

    def __neg__(self) -> "SignedPerm":
        return compose(minus_identity(self.n), self)

    def __pow__(self, k: int) -> "SignedPerm":
        if k < 0:
            return inverse(self) ** (-k)
        out = identity(self.n)
        for _ in range(k):
            out = compose(out, self)
        return out

    def matrix(self) -> list:
        m = [[0] * self.n for _ in range(self.n)]
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            m[p][i] = s
        return m

    def act(self, vector: Sequence) -> tuple:
        """Image of a formal vector whose entries support unary minus."""
        out = [None] * self.n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p] = vector[i] if s == 1 else -vector[i]
        return tuple(out)

    def act_on_marks(self, values: Sequence) -> tuple:
        """Same action with a minus sign read as a cross on PA values."""
        out = [None] * self.n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p] = values[i] if s == 1 else ~values[i]
        return tuple(out)

    def to_text(self) -> str:
        return "(" + ",".join(str(s * (p + 1)) for p, s in zip(self.perm, self.signs)) + ")"

    def to_json(self) -> list:
        return [s * (p + 1) for p, s in zip(self.perm, self.signs)]

    @classmethod
    def from_signed(cls, entries: Sequence[int]) -> "SignedPerm":
        if any(x == 0 for x in entries):
            raise ValueError("entries are +/-(image+1) and cannot be zero")
        return cls(tuple(abs(x) - 1 for x in entries), tuple(1 if x > 0 else -1 for x in entries))

    @classmethod
    def parse(cls, text: str) -> "SignedPerm":
        body = text.strip().strip("()")
        return cls.from_signed([int(x) for x in body.split(",") if x.strip()])

    def __str__(self) -> str:
        return self.to_text()


def identity(n: int) -> SignedPerm:
    return SignedPerm(tuple(range(n)), (1,) * n)


def minus_identity(n: int) -> SignedPerm:
    return SignedPerm(tuple(range(n)), (-1,) * n)


def compose(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    """``a * b``: apply ``b``, then ``a``."""
    if a.n != b.n:
        raise ValueError(f"arity mismatch: {a.n} vs {b.n}")
    perm = tuple(a.perm[b.perm[i]] for i in range(a.n))
    signs = tuple(b.signs[i] * a.signs[b.perm[i]] for i in range(a.n))
    return SignedPerm(perm, signs)


def inverse(a: SignedPerm) -> SignedPerm:
    perm = [0] * a.n
    signs = [1] * a.n
    for i, (p, s) in enumerate(zip(a.perm, a.signs)):
        perm[p] = i
        signs[p] = s
    return SignedPerm(tuple(perm), tuple(signs))


def order(a: SignedPerm) -> int:
    e = identity(a.n)
    cur, k = a, 1
    while cur != e:
        cur, k = compose(cur, a), k + 1
    return k


def generator(n: int, i: int) -> SignedPerm:
    if n < 2:
        raise ValueError("braids need at least two strands")
    if not 0 <= i <= n - 2:
        raise ValueError(f"generator index {i} out of range for {n} strands")
    perm = list(range(n))
    signs = [1] * n
    perm[i], perm[i + 1] = i + 1, i
    signs[i + 1] = -1
    return SignedPerm(tuple(perm), tuple(signs))


def all_signed_perms(n: int):
    for p in itertools.permutations(range(n)):
        for s in itertools.product((1, -1), repeat=n):
            yield SignedPerm(p, s)


@dataclass
class Relation:
    name: str
    holds: bool
    detail: str = ""


def verify_relations(n: int) -> list[Relation]:
    """Braid relations and the order-four laws for the generators on n strands."""
    if not 2 <= n <= 6:
        raise ValueError("n must be between 2 and 6")
    g = [generator(n, i) for i in range(n - 1)]
    e = identity(n)
    out = []
    for i, j in itertools.combinations(range(n - 1), 2):
        if abs(i - j) > 1:
            out.append(Relation(f"s{i} s{j} = s{j} s{i}", g[i] * g[j] == g[j] * g[i]))
        else:
            lhs, rhs = g[i] * g[j] * g[i], g[j] * g[i] * g[j]
            out.append(Relation(f"s{i} s{j} s{i} = s{j} s{i} s{j}", lhs == rhs, lhs.to_text()))
    for i in range(n - 1):
        sq = g[i] ** 2
        out.append(Relation(f"s{i}^4 = 1", g[i] ** 4 == e))
        out.append(Relation(f"s{i}^2 = s{i}^-2", sq == g[i] ** -2))
        out.append(Relation(f"s{i}^2 has order 2", order(sq) == 2, sq.to_text()))
    if n == 2:
        out.append(Relation("s0^2 = -1", g[0] ** 2 == minus_identity(2)))
    return out


def find_quaternions(n: int = 4) -> list:
    """All ordered triples (I, J, K) in SP_n with I^2 = J^2 = K^2 = IJK = -1."""
    minus = minus_identity(n)
    roots = sorted((a for a in all_signed_perms(n) if a * a == minus), key=_key)
    root_set = set(roots)
    out = []
    for i in roots:
        for j in roots:
            # IJK = -1  =>  K = (IJ)^-1 (-1)
            k = inverse(i * j) * minus
            if k in root_set:
                out.append((i, j, k))
    return out


def _key(a: SignedPerm):
    return a.to_json()


def quaternion_group(triple) -> set:
    """Closure of a quaternion triple; should have eight elements."""
    i, j, k = triple
    elems = {identity(i.n)}
    frontier = [identity(i.n)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in (i, j, k):
                c = a * g
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return elems
