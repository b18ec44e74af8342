import itertools
import random

import pytest
from hypothesis import given, strategies as st

from bfcalc.pa_engine import (
    M, U, And, Atom, ConstFalse, ConstTrue, Implies, Not, Or, PaValue, UnboundVariable,
    contract_at, from_logic, is_tautology, pa_equivalent, pa_reduce, pa_simplify, redexes,
    reduce_value, truth, valuations,
)
from bfcalc.rewrite import PA_RULES
from bfcalc.syntax import EMPTY, MARK, parse, variables
from strategies import ground_pa, pa_exprs


def test_worked_example_unmarked():
    e = parse("(() ((())))")
    assert pa_simplify(e) is U
    final, steps = pa_reduce(e)
    assert final == EMPTY
    assert steps == 3  # A2, A1, A2


def test_simple_cases():
    assert pa_simplify(parse("")) is U
    assert pa_simplify(parse("()")) is M
    assert pa_simplify(parse("(A) B"), {"A": M, "B": U}) is U


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        pa_simplify(parse("A"))


def test_rejects_bf_syntax():
    with pytest.raises(TypeError):
        pa_simplify(parse("[A]"), {"A": M})


def test_value_helpers():
    assert ~M is U and ~U is M
    assert bool(M) and not bool(U)
    assert str(M) == "m" and str(U) == "u"
    assert PaValue.of(1) is M


def test_equivalence_examples():
    assert pa_equivalent("((A) A)", "").equal
    assert pa_equivalent("(A) B", "(A B) B").equal
    r = pa_equivalent("A", "(A)")
    assert not r.equal
    assert r.countermodel == {"A": U}


def test_equivalence_guard():
    names = " ".join(f"A{i}" for i in range(21))
    with pytest.raises(ValueError):
        pa_equivalent(names, "")


def test_initials():
    # integration, reflexion and generation as equivalences
    assert pa_equivalent("A ()", "()").equal
    assert pa_equivalent("((A))", "A").equal
    assert pa_equivalent("(A) B", "(A B) B").equal


def _classical(e, v):
    """Independent oracle: a juxtaposition is `or`, a cross is `not`."""
    from bfcalc.syntax import Cross, Juxt, Var
    if isinstance(e, Juxt):
        return any(_classical(c, v) for c in e.children)
    if isinstance(e, Cross):
        return not _classical(e.child, v)
    assert isinstance(e, Var)
    return v[e.name]


@pytest.mark.parametrize("rule", PA_RULES, ids=lambda r: r.id)
def test_consequences_against_boolean_oracle(rule):
    names = sorted(variables(rule.lhs) | variables(rule.rhs))
    for bits in itertools.product((False, True), repeat=len(names)):
        v = dict(zip(names, bits))
        assert _classical(rule.lhs, v) == _classical(rule.rhs, v)
    assert pa_equivalent(rule.lhs, rule.rhs).equal


@given(pa_exprs())
def test_simplify_matches_boolean_oracle(e):
    for v in valuations(variables(e)):
        assert (pa_simplify(e, v) is M) == _classical(e, {k: bool(x) for k, x in v.items()})


def test_from_logic_shapes():
    a, b = Atom("A"), Atom("B")
    assert from_logic(Or(a, b)) == parse("A B")
    assert from_logic(And(a, b)) == parse("((A) (B))")
    assert from_logic(Implies(a, a)) == parse("(A) A")
    assert from_logic(ConstTrue()) == MARK
    assert from_logic(ConstFalse()) == EMPTY


formulas = st.recursive(
    st.sampled_from([Atom("A"), Atom("B"), Atom("C"), ConstTrue(), ConstFalse()]),
    lambda f: st.one_of(
        f.map(Not),
        st.builds(And, f, f), st.builds(Or, f, f), st.builds(Implies, f, f),
    ),
    max_leaves=10,
)


@given(formulas)
def test_from_logic_preserves_truth(p):
    e = from_logic(p)
    for bits in itertools.product((False, True), repeat=3):
        v = dict(zip("ABC", bits))
        pv = {k: PaValue.of(x) for k, x in v.items() if k in variables(e)}
        assert (pa_simplify(e, pv) is M) == truth(p, v)


def test_tautology():
    assert is_tautology(from_logic(Implies(Atom("A"), Atom("A"))))
    assert is_tautology(parse("()"))
    assert not is_tautology(parse("A"))


def test_redexes_and_single_steps():
    e = parse("(()) () ()")
    found = redexes(e)
    assert (0,) in found and () in found
    assert contract_at(e, (0,)) == parse("() ()")
    with pytest.raises(ValueError):
        contract_at(e, (1,))


@pytest.mark.parametrize("strategy", ["innermost", "outermost", "random"])
def test_strategies_reach_simple_value(strategy):
    e = parse("((()) ()) (((())))")
    final, _ = pa_reduce(e, strategy, random.Random(1))
    assert final == (MARK if pa_simplify(e) is M else EMPTY)


def test_reduce_rejects_variables_and_bad_strategy():
    with pytest.raises(ValueError):
        pa_reduce(parse("A"))
    with pytest.raises(ValueError):
        pa_reduce(parse("()"), "sideways")


@given(ground_pa(20), st.integers(0, 2**16))
def test_confluence(e, seed):
    values = {reduce_value(e, "innermost"), reduce_value(e, "outermost"),
              reduce_value(e, "random", random.Random(seed))}
    assert values == {pa_simplify(e)}
