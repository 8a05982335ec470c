import itertools

import pytest
from hypothesis import given, settings, strategies as st

from braidweyl.pbw import (
    Element, Generator, OrientationError, RelationTable, RewriteBudgetExceeded, RewriteRule,
    TableError, check_local_confluence,
)
from braidweyl.scalars import H, ONE, Q, Scalar
from braidweyl.tables import load_table

W = Element.word


def two_letter(rhs):
    gens = [Generator("a", "coordinate", 0), Generator("b", "coordinate", 1)]
    return RelationTable(gens, [RewriteRule(("b", "a"), rhs)])


def test_leib_r_example(u2h):
    assert u2h.normal_form(W("dx", "x")) == W("x", "dx") + W("dtt").scale(H / 2)


def test_q_table_example(weyl_n):
    assert weyl_n.normal_form(W("db", "c")) == W("c", "db")


def test_normal_word_unchanged(u2h):
    assert u2h.normal_form(W("x", "y")) == W("x", "y")
    assert u2h.is_normal(("t", "x", "x", "dz"))


def test_multiply_examples(u2h):
    assert u2h.normal_form(W("x", "y") - W("y", "x")) == W("z").scale(H)
    mrea = load_table("mREA")
    assert mrea.normal_form(W("a", "d") - W("d", "a")) == Element.zero()
    e = W("z", "x") + W("t").scale(Q)
    assert u2h.multiply(Element.one(), e) == u2h.normal_form(e)


def test_normal_form_is_idempotent_and_linear(u2h):
    e = W("dz", "y", "x") - W("x", "dtt", "t").scale(H)
    nf = u2h.normal_form(e)
    assert u2h.normal_form(nf) == nf
    assert all(u2h.is_normal(w) for w in nf.terms)
    f = W("dy", "z")
    assert u2h.normal_form(e + f) == nf + u2h.normal_form(f)


def test_unknown_letter(u2h):
    with pytest.raises(TableError):
        u2h.normal_form(W("a"))


def test_incomplete_table_rejected():
    gens = [Generator("a", "coordinate", 0), Generator("b", "coordinate", 1)]
    with pytest.raises(TableError):
        RelationTable(gens, [])


def test_rule_on_normal_word_rejected():
    gens = [Generator("a", "coordinate", 0), Generator("b", "coordinate", 1)]
    with pytest.raises(TableError):
        RelationTable(gens, [RewriteRule(("b", "a"), W("a", "b")), RewriteRule(("a", "b"), W("b", "a"))])


def test_duplicate_ranks_rejected():
    with pytest.raises(TableError):
        RelationTable([Generator("a", "coordinate", 0), Generator("b", "coordinate", 0)], [], check=False)


def test_orientation_check():
    two_letter(W("a", "b").scale(Q)).check_orientation()
    bad = two_letter(W("b", "b", "b"))
    with pytest.raises(OrientationError):
        bad.check_orientation()


def test_cycle_detected():
    gens = [Generator(n, "coordinate", k) for k, n in enumerate("abc")]
    rules = [RewriteRule(("b", "a"), W("a", "b")), RewriteRule(("c", "a"), W("a", "c")),
             RewriteRule(("c", "b"), W("c", "b"))]
    with pytest.raises(RewriteBudgetExceeded):
        RelationTable(gens, rules).normal_form(W("c", "b"))
    # a rule that re-creates its own left-hand side through another rule
    rules = [RewriteRule(("b", "a"), W("a", "c", "b", "a")), RewriteRule(("c", "a"), W("a", "c")),
             RewriteRule(("c", "b"), W("b", "c"))]
    t = RelationTable(gens, rules)
    with pytest.raises(RewriteBudgetExceeded):
        t.normal_form(W("b", "a"))


def test_quantum_plane_powers():
    t = two_letter(W("a", "b").scale(Q))
    # b^2 a = q^2 a b^2 and b a^3 = q^3 a^3 b
    assert t.normal_form(W("b", "b", "a")) == W("a", "b", "b").scale(Q ** 2)
    assert t.normal_form(W("b", "a", "a", "a")) == W("a", "a", "a", "b").scale(Q ** 3)


def test_confluence_examples(u2h):
    assert check_local_confluence(u2h, 3) == []
    one = RelationTable([Generator("a", "coordinate", 0)], [])
    assert check_local_confluence(one, 3) == []


def test_corrupted_leib_r_is_not_confluent(u2h):
    rules = []
    for r in u2h.rules:
        if r.lhs == ("dx", "x"):
            r = RewriteRule(r.lhs, W("x", "dx") - W("dtt").scale(H / 2))
        rules.append(r)
    bad = u2h.with_rules(rules)
    rep = check_local_confluence(bad, 3)
    assert rep and "word" in rep[0]


def test_json_roundtrip():
    for tid in ("RE", "weyl-N", "u2h"):
        t = load_table(tid)
        again = RelationTable.loads(t.dumps())
        assert again.same_relations(t)
        assert again.weights == t.weights
        assert again.aliases == t.aliases
        assert [g.counit for g in again.alphabet] == [g.counit for g in t.alphabet]


def test_restricted_coordinate_subtable(u2h):
    coords = u2h.restricted(u2h.gens_of_sort("coordinate"))
    assert coords.names == ["t", "x", "y", "z"]
    assert coords.normal_form(W("z", "x")) == u2h.normal_form(W("z", "x"))


letters = st.sampled_from(["t", "x", "y", "z", "dtt", "dx", "dy", "dz"])


@settings(max_examples=60, deadline=None)
@given(st.lists(letters, max_size=4), st.lists(letters, max_size=4), st.lists(letters, max_size=3))
def test_associativity(u2h, a, b, c):
    A, B, C = W(*a), W(*b), W(*c)
    left = u2h.normal_form(u2h.normal_form(A * B) * C)
    right = u2h.normal_form(A * u2h.normal_form(B * C))
    assert left == right


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(["a", "b", "c", "d", "da", "db", "dc", "dd"]), max_size=4))
def test_q_table_normal_forms_are_normal(weyl_n, word):
    nf = weyl_n.normal_form(W(*word))
    assert all(weyl_n.is_normal(w) for w in nf.terms)
