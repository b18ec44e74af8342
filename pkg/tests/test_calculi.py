import itertools

import pytest

from bfcalc.bf_engine import VALUES, SimpleValue, sqrt_val
from bfcalc.calculi import (
    B, DIHEDRAL, F, KLEIN_MARKS, KLEIN_NEGATIONS, N, T, DisagreementError, FourOpTable,
    TupleValue, UnaryMap, all_tuples, bilattice_op, calculus_equivalent, conflate,
    cross_b, cross_product, cross_w, leq_k, leq_t, neg_t, op_table, pair_calculus_eval,
    rot_cross, rot_eval, rot_juxt, rot_order, rot_power, rot_value, simple_to_tuple, tilde,
    tuple_to_simple, unary, unary_map, verify_group, verify_wf,
)
from bfcalc.pa_engine import M, U
from bfcalc.rewrite import PA_RULES

# rows/columns in the printed order: 1 0 2 3 for the t-tables, 0 1 3 2 for the k-tables
OR_T = [[1, 0, 2, 3], [0, 0, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]]
AND_T = [[1, 1, 1, 1], [1, 0, 1, 0], [1, 1, 2, 2], [1, 0, 2, 3]]
OPLUS_K = [[0, 1, 3, 2], [1, 1, 2, 2], [3, 2, 3, 2], [2, 2, 2, 2]]
OTIMES_K = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 3, 3], [0, 1, 3, 2]]


@pytest.mark.parametrize("name, order, expected", [
    ("or_t", (1, 0, 2, 3), OR_T),
    ("and_t", (1, 0, 2, 3), AND_T),
    ("oplus_k", (0, 1, 3, 2), OPLUS_K),
    ("otimes_k", (0, 1, 3, 2), OTIMES_K),
])
def test_tables(name, order, expected):
    table = op_table(name)
    assert table.order == order
    assert table.entries == expected


def test_table_lookups():
    assert bilattice_op("or_t", 2, 3) == 3
    assert bilattice_op("and_t", 1, 0) == 1
    assert bilattice_op("otimes_k", 1, 3) == 0
    assert op_table("or").lookup(0, 2) == 3


def test_table_json_round_trip():
    t = op_table("oplus_k")
    back = FourOpTable.from_json(t.to_json())
    assert back == t
    assert set(t.to_json()) == {"name", "order", "entries"}
    text = t.to_text()
    assert "A + B" in text
    assert text.splitlines()[-1].split("|")[1].split() == ["2", "2", "2", "2"]


def test_unknown_names():
    with pytest.raises(KeyError):
        op_table("xor")
    with pytest.raises(KeyError):
        unary("spin", 0)


def test_lattice_orders():
    assert leq_t(F, N) and leq_t(F, B) and leq_t(N, T) and leq_t(B, T)
    assert not leq_t(N, B) and not leq_t(B, N)
    assert leq_k(N, F) and leq_k(N, T) and leq_k(F, B) and leq_k(T, B)
    assert not leq_k(F, T)


def test_ops_are_lattice_bounds():
    for x, y in itertools.product(VALUES, repeat=2):
        for op, leq in (("or_t", leq_t), ("oplus_k", leq_k)):
            z = bilattice_op(op, x, y)
            assert leq(x, z) and leq(y, z)
            assert all(z == w or leq(z, w) or not (leq(x, w) and leq(y, w)) for w in VALUES)


def test_enclosures():
    assert [int(cross_product(x)) for x in VALUES] == [2, 3, 0, 1]
    assert int(cross_w(0)) == 2 and int(cross_w(1)) == 1 and int(cross_w(3)) == 3
    assert int(cross_b(1)) == 3 and int(cross_b(0)) == 0 and int(cross_b(2)) == 2
    for x in VALUES:
        assert cross_product(x) == sqrt_val(sqrt_val(x))


def test_unary_examples():
    assert neg_t(1) == 3
    assert conflate(0) == 2
    assert unary("mark_right", 0) == 3


def test_embeddings():
    for x in VALUES:
        assert cross_w(x) == conflate(x)
        assert cross_b(x) == neg_t(x)


def test_negations_commute():
    for x in VALUES:
        assert neg_t(conflate(x)) == conflate(neg_t(x)) == tilde(x) == sqrt_val(sqrt_val(x))


def test_de_morgan():
    for x, y in itertools.product(VALUES, repeat=2):
        assert neg_t(bilattice_op("or_t", x, y)) == bilattice_op("and_t", neg_t(x), neg_t(y))
        assert neg_t(bilattice_op("and_t", x, y)) == bilattice_op("or_t", neg_t(x), neg_t(y))
        assert conflate(bilattice_op("oplus_k", x, y)) == bilattice_op("otimes_k", conflate(x), conflate(y))
        assert conflate(bilattice_op("otimes_k", x, y)) == bilattice_op("oplus_k", conflate(x), conflate(y))


def test_negation_names():
    # t-negation swaps T and F, conflation swaps N and B
    assert neg_t(T) == F and neg_t(F) == T and neg_t(N) == N and neg_t(B) == B
    assert conflate(N) == B and conflate(B) == N


def test_disagreement_is_reported(monkeypatch):
    from bfcalc import calculi
    monkeypatch.setitem(calculi.LATTICE_OPS, "or_t", lambda x, y: SimpleValue(0))
    with pytest.raises(DisagreementError):
        bilattice_op("or_t", 3, 3)


def test_wf_report():
    checks = {c.name.split()[1]: c for c in verify_wf()}
    assert checks["W1"].passed and checks["W1"].cases == 64
    assert checks["W2"].passed and checks["W2"].cases == 16
    assert checks["B4"].passed and checks["B4"].witness == {"A": SimpleValue(1)}
    assert checks["B3"].passed and checks["B3"].witness is not None


def test_wf_position_by_hand():
    # cross_w(1) = 1, juxt(1, 1) = 1, cross_w(1) = 1
    assert pair_calculus_eval("((A) A)", {"A": SimpleValue(1)}, "wf") == 1
    assert pair_calculus_eval("((A) B) A", {"A": SimpleValue(1), "B": SimpleValue(2)}, "wf") == 1


def test_imaginary_cross_not_in_pair_calculi():
    with pytest.raises(ValueError):
        pair_calculus_eval("[A]", {"A": SimpleValue(0)}, "wf")


@pytest.mark.parametrize("rule", PA_RULES, ids=lambda r: r.id)
def test_product_calculus_keeps_pa_laws(rule):
    ok, cm, _ = calculus_equivalent(rule.lhs, rule.rhs, "paxpa")
    assert ok, cm


def test_groups():
    rep = verify_group([unary_map(n) for n in KLEIN_NEGATIONS])
    assert (rep.closed, rep.order, rep.isomorphism_class) == (True, 4, "Klein four")
    rep = verify_group([unary_map(n) for n in KLEIN_MARKS])
    assert (rep.closed, rep.order, rep.isomorphism_class) == (True, 4, "Klein four")
    rep = verify_group([unary_map(n) for n in DIHEDRAL])
    assert (rep.closed, rep.order, rep.isomorphism_class) == (True, 8, "dihedral of order 8")
    assert not rep.abelian
    assert sorted(rep.element_orders.values()).count(4) == 2


def test_group_classifier_on_other_sets():
    rep = verify_group([unary_map("id"), unary_map("sqrt1")])
    assert not rep.closed
    assert rep.isomorphism_class == "cyclic of order 4"
    assert verify_group([UnaryMap("c", (0, 0, 1, 2))]).isomorphism_class == "not a group"


def test_unary_map_composition():
    s = unary_map("sqrt1")
    assert s.then(s).images == unary_map("sqrt2").images
    assert s(3) == 0


def test_rotation_n2_is_sqrt():
    for x in VALUES:
        assert tuple_to_simple(rot_cross(simple_to_tuple(x))) == sqrt_val(x)


def test_rotation_n3_six_cycle():
    for t in all_tuples(3):
        u = t
        for _ in range(6):
            u = rot_cross(u)
        assert u == t


@pytest.mark.parametrize("n", range(1, 7))
def test_rotation_order(n):
    assert rot_order(TupleValue.unmarked(n)) == 2 * n
    assert rot_power(TupleValue.unmarked(n), 2 * n) == TupleValue.unmarked(n)


def test_rotation_juxt():
    unit = TupleValue.unmarked(3)
    for t in all_tuples(3):
        assert rot_juxt(unit, t) == t
    with pytest.raises(ValueError):
        rot_juxt(TupleValue.unmarked(2), unit)


def test_rotation_eval():
    assert rot_eval("[]", n=3) == TupleValue((M, U, U))
    assert rot_eval("()", n=3) == TupleValue((M, M, M))
    assert rot_eval("[A]", {"A": TupleValue.parse("mum")}, n=3) == TupleValue.parse("umu")
    assert rot_value(2, 3) == simple_to_tuple(3)
    # for n = 2 the rotation calculus is BF
    from bfcalc.bf_engine import bf_eval
    for x in VALUES:
        assert tuple_to_simple(rot_eval("[A] (A [A])", {"A": x}, n=2)) == bf_eval("[A] (A [A])", {"A": x})
