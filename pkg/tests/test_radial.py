from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from braidweyl.pbw import Element
from braidweyl.poly import Poly
from braidweyl.radial import (
    CAS, LAM, MU, S, RadialError, SymmetricMuElement, center_from_mu, certify_pi, ch_residual,
    classical_radial_limit, delta3_reading_report, delta_on_cas_power, det, engine_delta_on_center,
    matrix_function_LS, mu_coordinates, pi_eigenvalues, pi_matrix, pi_matrix_mu, radial_apply,
    trace_power,
)
from braidweyl.scalars import H

T = Poly.var("t")
h = Poly.const(H)
half = Fraction(1, 2)


def sym(p):
    return SymmetricMuElement.from_lam_mu(p)


def test_ch_residual(u2h):
    assert all(not e for row in ch_residual(u2h) for e in row)
    bad = ch_residual(u2h, trace_coeff=Element.word("t").scale(2))
    assert any(e for row in bad for e in row)
    assert all(not e for row in ch_residual(u2h, hbar=0) for e in row)


def test_mu_coordinates():
    assert mu_coordinates(T) == sym((LAM - h) * half)
    assert mu_coordinates(CAS) == sym((MU - h * h) * Fraction(-1, 4))
    c = T * T * CAS
    assert center_from_mu(mu_coordinates(c)) == c


def test_center_from_mu_rejects_odd_part():
    with pytest.raises(RadialError):
        center_from_mu(SymmetricMuElement(S))


def test_trace_powers():
    assert trace_power(0) == sym(Poly.const(2))
    assert trace_power(1) == sym(LAM - h)
    mu1, mu2 = (LAM + S) * half, (LAM - S) * half
    assert trace_power(2) == SymmetricMuElement(mu1 * mu1 + mu2 * mu2 - h * LAM)
    assert trace_power(1) == mu_coordinates(T * 2)
    assert trace_power(2) == mu_coordinates((T * T - CAS) * 2)


def test_pi_entries(u2h):
    P = pi_matrix()
    assert P[1][0] == h * h * Fraction(3, 2)
    assert P[3][3] == CAS + h * h * half
    assert not certify_pi(u2h)[0]


def test_corrupted_pi_is_detected(u2h):
    P = pi_matrix()
    P[2][3] = -P[2][3]
    res = certify_pi(u2h, P)
    assert res[2] and not res[0]


def test_eigenvalues():
    l0, lp, lm = pi_eigenvalues()
    assert l0 == (h * h - S * S) * Fraction(1, 4)
    at0 = lp.substitute_scalar("h", 0)
    assert at0 == mu_coordinates(CAS).poly.substitute_scalar("h", 0)
    P = pi_matrix_mu()
    shifted = [[P[i][j] - (l0 if i == j else Poly()) for j in range(4)] for i in range(4)]
    assert not det(shifted)


def _mat_mul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(4)), Poly()) for j in range(4)] for i in range(4)]


def _center(M):
    return [[center_from_mu(mu_coordinates(e)) for e in row] for row in M]


def test_lagrange_sylvester():
    x = Poly.var("x")
    P = pi_matrix()
    ident = [[Poly.const(1) if i == j else Poly() for j in range(4)] for i in range(4)]
    assert matrix_function_LS(x) == P
    assert matrix_function_LS(Poly.const(1)) == ident
    assert matrix_function_LS(x * x) == _center(_mat_mul(P, P))


def test_lagrange_sylvester_confluent_at_h0():
    with pytest.raises(RadialError):
        matrix_function_LS(Poly.var("x"), substitution={"h": 0})


def test_delta_examples(u2h):
    assert delta_on_cas_power(1, 0) == sym(Poly())
    assert delta_on_cas_power(0, 0) == sym(Poly.const(4 / (H * H)))
    assert delta_on_cas_power(1, 1) == sym(Poly.const(6))
    assert engine_delta_on_center("D1", CAS, u2h) == Poly.const(6)


def test_delta3_reading(u2h):
    assert delta3_reading_report(u2h, 3) == {
        "lambda_0^p": False, "2*lambda_0^p": True, "3*lambda_0^p": False}


def test_radial_examples():
    assert radial_apply(Poly.const(1)).in_lam_mu() == Poly()
    assert radial_apply(MU).in_lam_mu() == Poly.const(-24)
    assert radial_apply(LAM).in_lam_mu() == Poly()


def test_radial_rejects_other_variables():
    with pytest.raises(ValueError):
        radial_apply(Poly.var("t"))


def test_radial_matches_laplacian_on_center(u2h):
    # Delta acting on Cas^p (as a function of mu) agrees with the engine
    for p in range(4):
        c = CAS ** p
        eng = engine_delta_on_center("D1", c, u2h)
        f = mu_coordinates(c).in_lam_mu()
        assert mu_coordinates(eng) == radial_apply(f)


def test_classical_limit_examples():
    rep = classical_radial_limit(2)
    assert rep[0]["limit"] == "0"
    assert rep[1]["limit"] == "-24"
    assert rep[2]["limit"] == "-80*mu"
    assert all(r["matches_mu_operator"] and r["matches_r_operator"] for r in rep)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3))
def test_center_roundtrip(a, b):
    c = T ** a * CAS ** b + T
    assert center_from_mu(mu_coordinates(c)) == c
