import itertools

import pytest

from braidweyl.hecke import (
    BraidMatrix, KINDS, change_basis_compact, check_hecke, check_qybe, generate_relations, limit_q1,
)
from braidweyl.linalg import identity
from braidweyl.pbw import Element, TableError, check_local_confluence
from braidweyl.scalars import H, ONE, Q, ZERO, PoleError, substitute
from braidweyl.tables import load_table

W = Element.word


def comm(t, u, v):
    return t.normal_form(W(u, v) - W(v, u))


@pytest.fixture(scope="module")
def R():
    return BraidMatrix.standard()


def test_standard_matrix_entries(R):
    e = R.entries
    assert e[0][0] == Q and e[3][3] == Q
    assert e[1][1] == Q - Q ** -1 and e[1][2] == ONE and e[2][1] == ONE and e[2][2] == ZERO


def test_qybe(R):
    assert check_qybe(R)
    assert check_qybe(BraidMatrix.flip(2))
    assert not check_qybe(R.with_entry(1, 1, Q + 1))


def test_checks_are_cached(R):
    check_qybe(R)
    assert R._checks["qybe"] is True


def test_hecke(R):
    assert check_hecke(R)
    assert check_hecke(BraidMatrix.flip(2))
    assert not check_hecke(BraidMatrix(2, identity(4), q=Q))


def test_flip_in_dimension_three_is_a_braiding():
    P = BraidMatrix.flip(3)
    assert check_qybe(P) and check_hecke(P)


def test_bad_matrix_rejected(R):
    with pytest.raises(TableError):
        generate_relations(R.with_entry(1, 1, Q + 1), "RE")


def test_unknown_kind(R):
    with pytest.raises(ValueError):
        generate_relations(R, "XYZ")


def test_flip_re_is_commutative():
    t = generate_relations(BraidMatrix.flip(2), "RE")
    for u, v in itertools.combinations("abcd", 2):
        assert not comm(t, u, v)


def test_flip_mrea_is_gl2():
    t = generate_relations(BraidMatrix.flip(2), "mREA")
    assert comm(t, "a", "b") == W("b").scale(H)
    assert comm(t, "a", "c") == W("c").scale(-H)
    assert comm(t, "b", "c") == (W("a") - W("d")).scale(H)
    assert not comm(t, "a", "d")


def test_mrea_at_h0_is_re(R):
    mrea = generate_relations(R, "mREA")
    at0 = mrea.map_coefficients(lambda c: substitute(c, "h", 0), parameters={"q"})
    assert at0.same_relations(generate_relations(R, "RE"))


def test_weyl_m0_drops_only_the_constant(R):
    m, m0 = generate_relations(R, "weyl-M"), generate_relations(R, "weyl-M", inhomogeneous=False)
    for lhs, rhs in m._rule_map.items():
        const = rhs.coefficient(())
        assert m0._rule_map[lhs] == rhs - Element.scalar(const)


def test_compact_of_flip_mrea():
    t = change_basis_compact(generate_relations(BraidMatrix.flip(2), "mREA"))
    assert t.names == ["t", "x", "y", "z"]
    assert comm(t, "x", "y") == W("z").scale(H)
    assert comm(t, "y", "z") == W("x").scale(H)
    assert comm(t, "z", "x") == W("y").scale(H)
    for v in "xyz":
        assert not comm(t, "t", v)


def test_compact_is_idempotent(u2h):
    assert change_basis_compact(u2h) is u2h


def test_compact_leib_r_row(u2h):
    assert comm(u2h, "dx", "x") == W("dtt").scale(H / 2)
    assert comm(u2h, "dtt", "t") == W("dtt").scale(H / 2)


def test_limit_q1_rows(weyl_n):
    gl = limit_q1(weyl_n)
    assert comm(gl, "da", "a") == Element.one() + W("da").scale(H)
    assert comm(gl, "da", "b") == W("dc").scale(H)
    for u, v in itertools.combinations(gl.gens_of_sort("derivative"), 2):
        assert not comm(gl, u, v)


def test_limit_q1_of_q_free_table(gl2h):
    assert limit_q1(gl2h).same_relations(gl2h)


def test_limit_q1_pole_is_reported():
    t = load_table("RE")
    bad = t.map_coefficients(lambda c: c / (Q - 1))
    with pytest.raises(PoleError):
        limit_q1(bad)


@pytest.mark.parametrize("kind", KINDS)
def test_generated_tables_are_confluent(R, kind):
    assert check_local_confluence(generate_relations(R, kind), 3) == []


def test_flip_weyl_tables_are_confluent():
    for kind in ("weyl-M", "weyl-N", "double-KM"):
        assert check_local_confluence(generate_relations(BraidMatrix.flip(2), kind), 3) == []


def test_q_case_counits(weyl_n):
    from braidweyl.calculus import apply_operator
    for d, v, val in (("da", "a", Q ** -1), ("db", "b", Q ** -1), ("dc", "c", Q ** -3), ("dd", "d", Q ** -3)):
        assert apply_operator(W(d), W(v), weyl_n) == Element.scalar(val)
    assert not apply_operator(W("da"), W("b"), weyl_n)
