"""Equational demonstrations over juxtaposition multisets.

Rules are bidirectional equations between patterns. Juxtaposition is
matched modulo associativity and commutativity: a juxtaposition pattern
matches any sub-multiset of the members at the addressed position, and the
unmatched members are carried over unchanged. A pattern variable in a
juxtaposition may bind the empty expression.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .bf_engine import bf_equivalent
from .pa_engine import pa_equivalent
from .syntax import (
    EMPTY, Cross, CrossI, Expr, Juxt, Pair, Var, as_expr, in_pair, is_pa, items,
    juxt, parse, positions, replace_at, subterm, substitute, variables,
)

LR, RL = "lr", "rl"


class StepError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    id: str
    name: str
    lhs: Expr
    rhs: Expr
    calculus: str  # "pa", "bf" or "wf"

    def sides(self, direction: str) -> tuple[Expr, Expr]:
        if direction == LR:
            return self.lhs, self.rhs
        if direction == RL:
            return self.rhs, self.lhs
        raise ValueError(f"direction must be 'lr' or 'rl', got {direction!r}")

    def __str__(self) -> str:
        return f"{self.id} ({self.name}): {self.lhs.text} = {self.rhs.text}"


def _rule(rid, name, lhs, rhs, calculus) -> Rule:
    return Rule(rid, name, parse(lhs), parse(rhs), calculus)


PA_RULES = [
    _rule("B1", "Integration", "() A", "()", "pa"),
    _rule("B2", "Reflexion", "((A))", "A", "pa"),
    _rule("B3", "Generation", "(A) B", "(A B) B", "pa"),
    _rule("B4", "Position", "((A) A)", "", "pa"),
    _rule("B5", "Transposition", "((A) (B)) C", "((A C) (B C))", "pa"),
    _rule("B6", "Occultation", "((A) B) A", "A", "pa"),
    _rule("B7", "Iteration", "A A", "A", "pa"),
    _rule("B8", "Extension", "((A) (B)) ((A) B)", "A", "pa"),
    _rule("B9", "Echelon", "(((A) B) C)", "(A C) ((B) C)", "pa"),
    _rule("B10", "Cross Transposition", "((A C) (B (C)))", "((A) C) ((B) (C))", "pa"),
]

BF_ONLY_RULES = [
    # canonical form already reduces imaginary powers mod 4, so reflexion is
    # an identity on canonical trees; it is kept for proofs that cite it
    _rule("BF.B1", "Reflexion", "[[[[A]]]]", "A", "bf"),
    _rule("BF.B2", "Integration", "A [[]]", "[[]]", "bf"),
    _rule("B3#", "Split Generation", "[[A] B] C", "[[A C] B] C", "bf"),
    _rule("B11", "Distribution", "[[A]^3 [B]^3] C", "[[A C]^3 [B C]^3]", "bf"),
    _rule("B12", "Distribution", "[[A] [B]]^3 C", "[[A C] [B C]]^3", "bf"),
    _rule("CROSS", "Cross Definition", "(A)", "[[A]]", "bf"),
    _rule("SQRT", "Square Root of Negation", "[{A,B}]", "{(B),A}", "bf"),
    _rule("JUXT", "Pair Juxtaposition", "{A,B} {C,D}", "{A C,B D}", "bf"),
]

WF_RULES = [
    _rule("W1", "Transposition", "((A) (B)) C", "((A C) (B C))", "wf"),
    _rule("W2", "Occultation", "((A) B) A", "A", "wf"),
]

RULES = {r.id: r for r in PA_RULES + BF_ONLY_RULES + WF_RULES}

PA_BASIS = ("B1", "B2", "B3")
BF_BASIS = ("BF.B1", "BF.B2", "B3#", "CROSS", "SQRT", "JUXT")
CALCULUS_RULES = {
    "pa": tuple(r.id for r in PA_RULES),
    "bf": tuple(r.id for r in PA_RULES + BF_ONLY_RULES),
    "wf": tuple(r.id for r in WF_RULES),
}
BASES = {"pa": PA_BASIS, "bf": BF_BASIS}


# ---------------------------------------------------------------------------
# matching


def match(pattern: Expr, term: Expr, subst: Optional[dict] = None) -> Iterator[dict]:
    """All substitutions extending ``subst`` that make ``pattern`` equal to ``term``."""
    s = dict(subst or {})
    if isinstance(pattern, Var):
        bound = s.get(pattern.name)
        if bound is None:
            s[pattern.name] = term
            yield s
        elif bound == term:
            yield s
    elif isinstance(pattern, Juxt):
        for s2, rest in match_members(pattern.children, items(term), s, allow_rest=False):
            yield s2
    elif isinstance(pattern, Cross):
        if isinstance(term, Cross):
            yield from match(pattern.child, term.child, s)
    elif isinstance(pattern, CrossI):
        if isinstance(term, CrossI):
            residual = (term.power - pattern.power) % 4
            inner = term.child if residual == 0 else CrossI(term.child, residual)
            yield from match(pattern.child, inner, s)
    elif isinstance(pattern, Pair):
        if isinstance(term, Pair):
            for s2 in match(pattern.left, term.left, s):
                yield from match(pattern.right, term.right, s2)


def _remove(pool: list, members: Sequence) -> Optional[list]:
    pool = list(pool)
    for m in members:
        try:
            pool.remove(m)
        except ValueError:
            return None
    return pool


def _sub_multisets(pool: list, times: int) -> Iterator[list]:
    counts = Counter(pool)
    keys = sorted(counts, key=lambda e: e.text)
    ranges = [range(counts[k] // times, -1, -1) for k in keys]  # largest first
    for combo in product(*ranges):
        yield [k for k, c in zip(keys, combo) for _ in range(c)]


def match_members(patterns: Sequence, terms: Sequence, subst: dict,
                  allow_rest: bool = True, absorb: bool = False) -> Iterator[tuple[dict, list]]:
    """Match pattern members against a sub-multiset of ``terms``.

    Yields ``(substitution, leftover)``. Without ``allow_rest`` the leftover
    is always empty. With ``absorb`` the unbound variables take every
    leftover member, which keeps search branching small.
    """
    fixed = [p for p in patterns if not isinstance(p, Var)]
    var_counts = Counter(p.name for p in patterns if isinstance(p, Var))
    yield from _match_fixed(fixed, list(terms), subst, var_counts, allow_rest, absorb)


def _match_fixed(fixed, pool, s, var_counts, allow_rest, absorb):
    if not fixed:
        yield from _match_vars(sorted(var_counts), pool, s, var_counts, allow_rest, absorb)
        return
    first, rest = fixed[0], fixed[1:]
    tried = set()
    for i, t in enumerate(pool):
        if t in tried:
            continue
        tried.add(t)
        remaining = pool[:i] + pool[i + 1:]
        for s2 in match(first, t, s):
            yield from _match_fixed(rest, remaining, s2, var_counts, allow_rest, absorb)


def _match_vars(names, pool, s, var_counts, allow_rest, absorb):
    bound = [n for n in names if n in s]
    for n in bound:
        pool = _remove(pool, list(items(s[n])) * var_counts[n])
        if pool is None:
            return
    free = [n for n in names if n not in s]
    if not free:
        if allow_rest or not pool:
            yield s, pool
        return
    must_consume = not allow_rest or absorb
    yield from _distribute(free, pool, s, var_counts, must_consume)


def _distribute(free, pool, s, var_counts, must_consume):
    name, others = free[0], free[1:]
    k = var_counts[name]
    if not others and must_consume and k == 1:
        yield {**s, name: juxt(*pool)}, []
        return
    for chosen in _sub_multisets(pool, k):
        remaining = _remove(pool, chosen * k)
        s2 = {**s, name: juxt(*chosen)}
        if others:
            yield from _distribute(others, remaining, s2, var_counts, must_consume)
        elif not must_consume or not remaining:
            yield s2, remaining


def match_at(pattern: Expr, term: Expr, subst: Optional[dict] = None,
             absorb: bool = False) -> Iterator[tuple[dict, list]]:
    """Match ``pattern`` against part of the juxtaposition at ``term``."""
    pats = pattern.children if isinstance(pattern, Juxt) else (pattern,)
    yield from match_members(pats, items(term), dict(subst or {}), allow_rest=True, absorb=absorb)


# ---------------------------------------------------------------------------
# steps and demonstrations


@dataclass
class Step:
    rule: str
    path: tuple = ()
    direction: str = LR
    substitution: dict = field(default_factory=dict)  # var -> Expr

    def to_json(self) -> dict:
        return {"rule": self.rule, "path": list(self.path), "dir": self.direction,
                "subst": {k: v.text for k, v in sorted(self.substitution.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> "Step":
        subst = {k: parse(v) for k, v in (data.get("subst") or {}).items()}
        return cls(data["rule"], tuple(data.get("path", ())), data.get("dir", LR).lower(), subst)

    def __str__(self) -> str:
        sub = ", ".join(f"{k}:={v.text or '∅'}" for k, v in sorted(self.substitution.items()))
        return f"{self.rule} {self.direction} @{list(self.path)}" + (f" [{sub}]" if sub else "")


def _resolve_rule(rule_id: str, allowed: Optional[Iterable[str]]) -> Rule:
    if rule_id not in RULES:
        raise StepError(f"unknown rule {rule_id!r}")
    if allowed is not None and rule_id not in allowed:
        raise StepError(f"rule {rule_id} is not available in this calculus")
    return RULES[rule_id]


def _rewrite(e: Expr, path, target: Expr, s: dict, leftover: list) -> Expr:
    new = juxt(*leftover, substitute(target, s))
    if in_pair(e, path) and not is_pa(new):
        raise StepError("rewrite would put imaginary marks or pairs inside a pair")
    return replace_at(e, path, new)


def apply_step(e, step: Step, allowed: Optional[Iterable[str]] = None) -> Expr:
    """Apply one rewrite step; the result is canonical."""
    e = as_expr(e)
    rule = _resolve_rule(step.rule, allowed)
    source, target = rule.sides(step.direction)
    try:
        t = subterm(e, step.path)
    except IndexError as exc:
        raise StepError(str(exc)) from None
    subst = {k: as_expr(v) for k, v in step.substitution.items()}
    found = next(match_at(source, t, subst), None)
    if found is None:
        raise StepError(f"{rule.id} {step.direction} does not match {t.text!r} at {list(step.path)}")
    s, leftover = found
    fresh = sorted(variables(target) - set(s))
    if fresh:
        raise StepError(f"variable {fresh[0]} introduced by {rule.id} needs a substitution")
    return _rewrite(e, step.path, target, s, leftover)


@dataclass
class Demonstration:
    start: Expr
    end: Expr
    steps: list
    calculus: str = "pa"

    def to_json(self) -> dict:
        return {"calculus": self.calculus, "start": self.start.text, "end": self.end.text,
                "steps": [s.to_json() for s in self.steps]}

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, data) -> "Demonstration":
        if isinstance(data, str):
            data = json.loads(data)
        calculus = data.get("calculus", "pa")
        if calculus not in ("pa", "bf"):
            raise ValueError(f"calculus must be 'pa' or 'bf', got {calculus!r}")
        return cls(parse(data["start"]), parse(data["end"]),
                   [Step.from_json(s) for s in data["steps"]], calculus)

    def trace(self) -> list:
        """Intermediate expressions, starting with ``start``."""
        out = [self.start]
        for s in self.steps:
            out.append(apply_step(out[-1], s, CALCULUS_RULES[self.calculus]))
        return out

    def __str__(self) -> str:
        lines = [f"  {self.start.text or '∅'}"]
        cur = self.start
        for s in self.steps:
            cur = apply_step(cur, s, CALCULUS_RULES[self.calculus])
            lines.append(f"= {cur.text or '∅'}    [{s}]")
        return "\n".join(lines)


@dataclass
class CheckResult:
    valid: bool
    failing_step: Optional[int] = None  # 1-based
    reason: str = ""
    semantically_equal: Optional[bool] = None
    final: Optional[Expr] = None


def semantic_equal(f: Expr, g: Expr, calculus: str) -> Optional[bool]:
    """Truth-table verdict, or None when there are too many variables."""
    try:
        if calculus == "pa":
            return pa_equivalent(f, g).equal
        return bf_equivalent(f, g).equal
    except ValueError:
        return None


def check(d: Demonstration) -> CheckResult:
    allowed = CALCULUS_RULES[d.calculus]
    sem = semantic_equal(d.start, d.end, d.calculus)
    cur = d.start
    for i, step in enumerate(d.steps, 1):
        try:
            cur = apply_step(cur, step, allowed)
        except StepError as exc:
            return CheckResult(False, i, str(exc), sem, cur)
    if cur != d.end:
        return CheckResult(False, None, f"demonstration ends at {cur.text!r}, not {d.end.text!r}",
                           sem, cur)
    return CheckResult(True, None, "", sem, cur)


# ---------------------------------------------------------------------------
# search

DEFAULT_DEPTH = 6


def successors(e: Expr, rule_ids: Sequence[str]) -> Iterator[tuple[Step, Expr]]:
    """Single-step rewrites in a fixed order; fresh variables become empty."""
    for rid in rule_ids:
        rule = RULES[rid]
        for direction in (LR, RL):
            source, target = rule.sides(direction)
            single = not isinstance(source, (Juxt, Var))
            for path, t in positions(e):
                if single and isinstance(t, Juxt):
                    continue
                seen = set()
                for s, leftover in match_at(source, t, absorb=True):
                    full = dict(s)
                    for name in variables(target) - set(full):
                        full[name] = EMPTY
                    try:
                        out = _rewrite(e, path, target, full, leftover)
                    except StepError:
                        continue
                    if out == e or out in seen:
                        continue
                    seen.add(out)
                    yield Step(rid, path, direction, full), out


def _flip(direction: str) -> str:
    return RL if direction == LR else LR


def _invert(src: Expr, step: Step, dst: Expr, allowed) -> Optional[Step]:
    """A step turning ``dst`` back into ``src`` given ``step: src -> dst``."""
    for path, _ in positions(dst):
        cand = Step(step.rule, path, _flip(step.direction), dict(step.substitution))
        try:
            if apply_step(dst, cand, allowed) == src:
                return cand
        except StepError:
            continue
    return None


class _Frontier:
    """Breadth-first layers grown on demand from one side of an equation."""

    def __init__(self, root: Expr, rule_ids):
        self.rule_ids = rule_ids
        self.parents = {root: None}  # expr -> (previous expr, step)
        self.depth_of = {root: 0}
        self.layer = [root]
        self.depth = 0
        self.truncated = False

    def grow(self, budget: int) -> bool:
        """Add one layer; False (layer left incomplete) once ``budget`` states exist."""
        nxt = []
        for node in self.layer:
            for step, out in successors(node, self.rule_ids):
                if out not in self.parents:
                    if len(self.parents) >= budget:
                        return False
                    self.parents[out] = (node, step)
                    self.depth_of[out] = self.depth + 1
                    nxt.append(out)
        self.layer = nxt
        self.depth += 1
        return True

    def within(self, d: int):
        return (n for n, k in self.depth_of.items() if k <= d)

    def chain(self, node) -> list:
        out = []
        while self.parents[node] is not None:
            prev, step = self.parents[node]
            out.append((prev, step, node))
            node = prev
        return out[::-1]


def _splits(total: int):
    """(forward, backward) depth pairs, most balanced first."""
    pairs = [(f, total - f) for f in range(total + 1)]
    return sorted(pairs, key=lambda fb: (max(fb), -fb[0]))


def search(lhs, rhs, max_depth: int = DEFAULT_DEPTH, basis="pa",
           max_states: int = 100_000) -> Optional[Demonstration]:
    """Bidirectional breadth-first search for a demonstration of ``lhs = rhs``.

    ``basis`` is ``"pa"``, ``"bf"`` or an explicit sequence of rule ids.
    Returns None when the sides are not equivalent or nothing is found within
    ``max_depth`` steps. The shortest demonstration found is returned, ties
    broken by its JSON text.
    """
    lhs, rhs = as_expr(lhs), as_expr(rhs)
    if isinstance(basis, str):
        calculus, rule_ids = basis, BASES[basis]
    else:
        rule_ids = tuple(basis)
        calculus = "pa" if all(RULES[r].calculus == "pa" for r in rule_ids) else "bf"
    allowed = CALCULUS_RULES[calculus]
    if semantic_equal(lhs, rhs, calculus) is False:
        return None
    if lhs == rhs:
        return Demonstration(lhs, rhs, [], calculus)

    fwd, bwd = _Frontier(lhs, rule_ids), _Frontier(rhs, rule_ids)

    def reach(side: _Frontier, d: int) -> bool:
        while side.depth < d:
            if not side.layer or side.truncated:
                return False
            if not side.grow(max_states // 2):
                side.truncated = True
                return False
        return True

    def build(meet) -> Optional[Demonstration]:
        steps = [step for _, step, _ in fwd.chain(meet)]
        for prev, step, node in reversed(bwd.chain(meet)):
            inv = _invert(prev, step, node, allowed)
            if inv is None:
                return None
            steps.append(inv)
        return Demonstration(lhs, rhs, steps, calculus)

    for total in range(1, max_depth + 1):
        for f, b in _splits(total):
            if not (reach(fwd, f) and reach(bwd, b)):
                continue
            meets = [n for n in fwd.within(f) if bwd.depth_of.get(n, b + 1) <= b]
            found = [d for d in map(build, meets) if d is not None and check(d).valid]
            found = [d for d in found if len(d.steps) <= total]
            if found:
                return min(found, key=lambda d: (len(d.steps), d.dumps(sort_keys=True)))
    return None


# ---------------------------------------------------------------------------
# reference demonstrations


def _steps(*specs) -> list:
    return [Step(rid, tuple(path), d, {k: parse(v) for k, v in sub.items()})
            for rid, path, d, sub in specs]


def position_demonstration() -> Demonstration:
    """((A) A) = empty via Generation, Integration, Reflexion."""
    return Demonstration(parse("((A) A)"), parse(""), _steps(
        ("B3", [0], RL, {"A": "", "B": "A"}),
        ("B1", [0], LR, {"A": "A"}),
        ("B2", [], LR, {"A": ""}),
    ), "pa")


def imaginary_sum_demonstration() -> Demonstration:
    """[] [[[]]] = [[]], the BF arithmetic derived from the axioms."""
    return Demonstration(parse("[] []^3"), parse("[[]]"), _steps(
        ("CROSS", [0], RL, {"A": "[]"}),
        ("B3", [], RL, {"A": "", "B": "[]"}),
        ("CROSS", [0], LR, {"A": ""}),
        ("BF.B2", [], LR, {"A": "[]"}),
    ), "bf")
