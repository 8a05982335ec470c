import itertools

import pytest

from braidweyl.poisson import (
    COMPACT_GENERATORS, GL2_NEW_COORDS, PoissonTable, bracket1_table, bracket2_compact,
    bracket2_conventions, bracket2_table, compatibility_check, darboux_table, extract_bracket,
    extract_table, jacobi_residuals,
)
from braidweyl.poly import Poly, parse_poly
from braidweyl.reference import BRACKET2_COORD, BRACKET2_MIXED, BRACKET2_MOMENTA
from braidweyl.tables import load_table

V = Poly.var


@pytest.fixture(scope="module")
def m0():
    return load_table("weyl-M0")


def test_first_bracket_example(u2h):
    assert extract_bracket(u2h, "hbar-linear", "dtt", "t") == V("p_t") * Poly.const(1) / 2
    assert extract_bracket(u2h, "hbar-linear", "x", "y") == V("z")


def test_first_bracket_p_x_t(u2h):
    # read off the compact derivative table: [dx, t] = (h/2) dx
    assert extract_bracket(u2h, "hbar-linear", "dx", "t") == V("p_x") / 2


def test_second_bracket_example(m0):
    raw = extract_table(m0, "q-linear")
    # [h, b] with h = a - d: coefficient of (q - 1) is -4ab
    hb = raw.apply(V("a") - V("d"), V("b"))
    assert hb == V("a") * V("b") * -4
    assert bracket2_table(m0).bracket("H", "b") == parse_poly("-2*b*(H + L)", GL2_NEW_COORDS)


def test_self_bracket_vanishes(u2h):
    for g in ("t", "x", "dx"):
        assert not extract_bracket(u2h, "hbar-linear", g, g)


def test_unknown_scheme(u2h):
    with pytest.raises(ValueError):
        extract_bracket(u2h, "cubic", "x", "y")


def test_second_bracket_printed_sectors(m0):
    p2 = bracket2_table(m0)
    for src in (BRACKET2_COORD, BRACKET2_MOMENTA):
        for (u, v), rhs in src.items():
            assert p2.bracket(u, v) == parse_poly(rhs, GL2_NEW_COORDS)


def test_jacobi(u2h, m0):
    assert jacobi_residuals(darboux_table()) == []
    assert jacobi_residuals(bracket1_table(u2h)) == []
    assert jacobi_residuals(bracket2_table(m0)) == []


def test_corrupted_entry_breaks_jacobi(u2h):
    p1 = bracket1_table(u2h)
    entries = p1.entries()
    entries[("x", "y")] = -entries[("x", "y")] * 2
    res = jacobi_residuals(PoissonTable(p1.generators, entries))
    assert res and res[0][1]


def test_compatibility(u2h, m0):
    p0, p1 = darboux_table(), bracket1_table(u2h)
    assert compatibility_check(p0, p1)
    assert compatibility_check(p0, p0)
    assert compatibility_check(bracket2_compact(m0), p0 + p1)


def test_antisymmetry_and_leibniz(u2h):
    p1 = bracket1_table(u2h)
    gens = p1.generators
    monos = [V(a) * V(b) for a, b in itertools.combinations_with_replacement(gens[:4], 2)]
    f, g, k = V("x") * V("p_y"), V("t") * V("z"), V("p_t") * V("y")
    assert p1.apply(f, g) == -p1.apply(g, f)
    assert p1.apply(f, g * k) == p1.apply(f, g) * k + g * p1.apply(f, k)
    for m in monos:
        assert p1.apply(m, m) == Poly()


def test_mismatched_generators():
    with pytest.raises(ValueError):
        darboux_table() + PoissonTable(("u", "v"), {})


def test_convention_report(m0):
    rep = bracket2_conventions({"weyl-M0": m0, "weyl-M": load_table("weyl-M")}, BRACKET2_MIXED)
    assert rep and all(r["total"] == 16 for r in rep)
    best = rep[0]
    assert best["momenta"] == "p_L=(p_a+p_d)/2" and best["scale"] == "1"
    assert best["agree"] == 13 and best["constants"] == "dropped"
    wrong = {tuple(e["pair"]) for e in best["entries"] if not e["agree"]}
    assert wrong == {("b", "pL"), ("b", "pH"), ("b", "pb")}


def test_printed_mixed_sector_fails_jacobi():
    entries = {}
    for src in (BRACKET2_COORD, BRACKET2_MOMENTA, BRACKET2_MIXED):
        entries.update({k: parse_poly(v, GL2_NEW_COORDS) for k, v in src.items()})
    assert jacobi_residuals(PoissonTable(GL2_NEW_COORDS, entries))


def test_json_report(u2h):
    doc = bracket1_table(u2h).to_json()
    assert doc["generators"] == list(COMPACT_GENERATORS)
    assert {"pair": ["x", "y"], "value": "z"} in doc["brackets"]
