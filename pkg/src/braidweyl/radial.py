"""Center of U(u(2)_h), quantum eigenvalues and the radial part of the Laplacian.

Center elements are commutative polynomials in ``t`` and ``Cas``.  Symmetric
functions of the two roots mu1, mu2 are stored as polynomials in
``lam = mu1 + mu2`` and ``s = mu1 - mu2``; a function of ``mu = s^2`` is the
part even in ``s``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .calculus import apply_operator, build_operator
from .linalg import Decomposer
from .pbw import Element, RelationTable
from .poly import Poly
from .scalars import H, I, ONE, ZERO, Scalar, substitute

__all__ = [
    "RadialError",
    "SymmetricMuElement",
    "casimir",
    "generating_matrix",
    "ch_residual",
    "mu_coordinates",
    "center_from_mu",
    "trace_power",
    "engine_trace_power",
    "center_to_element",
    "element_to_center",
    "PI_PRINTED",
    "pi_matrix",
    "pi_matrix_mu",
    "certify_pi",
    "pi_eigenvalues",
    "det",
    "matrix_function_LS",
    "delta_on_cas_power",
    "delta_from_pi",
    "engine_delta_on_center",
    "radial_apply",
    "classical_radial_limit",
    "delta3_reading_report",
]

HALF = Scalar(Fraction(1, 2))
T, CAS = Poly.var("t"), Poly.var("Cas")
LAM, S, MU = Poly.var("lam"), Poly.var("s"), Poly.var("mu")
h = Poly.const(H)


class RadialError(ValueError):
    pass


class SymmetricMuElement:
    """Function of the roots stored as a polynomial in lam and s = mu1 - mu2."""

    __slots__ = ("poly",)

    def __init__(self, poly: Poly):
        extra = poly.variables() - {"lam", "s"}
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)}")
        self.poly = poly

    @classmethod
    def from_lam_mu(cls, f: Poly) -> "SymmetricMuElement":
        return cls(f.subs({"mu": S * S}))

    def odd_part(self) -> Poly:
        return Poly({m: c for m, c in self.poly.terms.items() if dict(m).get("s", 0) % 2})

    def even_part(self) -> Poly:
        return Poly({m: c for m, c in self.poly.terms.items() if not dict(m).get("s", 0) % 2})

    def is_symmetric(self) -> bool:
        return not self.odd_part()

    def in_lam_mu(self) -> Poly:
        if not self.is_symmetric():
            raise RadialError("odd part in sqrt(mu) present")
        out = {}
        for m, c in self.poly.terms.items():
            d = dict(m)
            k = d.pop("s", 0)
            if k:
                d["mu"] = k // 2
            out[tuple(sorted(d.items()))] = c
        return Poly(out)

    def __add__(self, other):
        return SymmetricMuElement(self.poly + other.poly)

    def __sub__(self, other):
        return SymmetricMuElement(self.poly - other.poly)

    def __mul__(self, other):
        if isinstance(other, SymmetricMuElement):
            return SymmetricMuElement(self.poly * other.poly)
        return SymmetricMuElement(self.poly * other)

    def __eq__(self, other):
        return isinstance(other, SymmetricMuElement) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def render(self) -> str:
        if self.is_symmetric():
            return self.in_lam_mu().render(["lam", "mu"])
        return self.poly.render(["lam", "s"])

    def __repr__(self):
        return f"SymmetricMuElement({self.render()!r})"


# -- coordinates of the center ---------------------------------------------------

def mu_coordinates(c: Poly) -> SymmetricMuElement:
    """t = (lam - h)/2, Cas = -(mu - h^2)/4."""
    return SymmetricMuElement(c.subs({"t": (LAM - h) * HALF,
                                      "Cas": (S * S - h * h) * Scalar(Fraction(-1, 4))}))


def center_from_mu(m: SymmetricMuElement) -> Poly:
    """Inverse of :func:`mu_coordinates`: lam = 2t + h, mu = h^2 - 4 Cas."""
    if not m.is_symmetric():
        raise RadialError("not in center: odd part in sqrt(mu)")
    return m.in_lam_mu().subs({"lam": T * 2 + h, "mu": h * h - CAS * 4})


# -- engine side -----------------------------------------------------------------

def casimir() -> Element:
    W = Element.word
    return W("x", "x") + W("y", "y") + W("z", "z")


def generating_matrix() -> List[List[Element]]:
    """N in the compact generators."""
    W = Element.word
    return [[W("t") - W("z").scale(I), -W("x").scale(I) - W("y")],
            [-W("x").scale(I) + W("y"), W("t") + W("z").scale(I)]]


def _mat_mul(A, B, table: RelationTable):
    n = len(A)
    return [[table.normal_form(sum((A[i][k] * B[k][j] for k in range(n)), Element.zero()))
             for j in range(n)] for i in range(n)]


def ch_residual(table: RelationTable, trace_coeff: Optional[Element] = None,
                hbar: Optional[Scalar] = None) -> List[List[Element]]:
    """N^2 - (2t + h) N + (t^2 + Cas + h t) I, normal-ordered entrywise.

    ``trace_coeff`` replaces 2t + h (perturbation witness); ``hbar`` substitutes
    a value for h in the table first (h = 0 gives the commutative identity).
    """
    if hbar is not None:
        coords = table.restricted(table.gens_of_sort("coordinate"))
        table = coords.map_coefficients(lambda c: substitute(c, "h", hbar))
    hh = H if hbar is None else Scalar._lift(hbar)
    W = Element.word
    N = generating_matrix()
    tr = trace_coeff if trace_coeff is not None else W("t").scale(2) + Element.scalar(hh)
    det = W("t", "t") + casimir() + W("t").scale(hh)
    N2 = _mat_mul(N, N, table)
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            e = N2[i][j] - table.normal_form(tr * N[i][j])
            if i == j:
                e = e + det
            row.append(table.normal_form(e))
        out.append(row)
    return out


class _CenterBasis:
    """Normal forms of t^a Cas^b in a table, with a decomposer per degree."""

    def __init__(self, table: RelationTable):
        self.table = table
        self._pow: Dict[Tuple[int, int], Element] = {}
        self._dec: Dict[int, Tuple[List[Tuple[int, int]], Decomposer]] = {}

    def monomial(self, a: int, b: int) -> Element:
        key = (a, b)
        if key not in self._pow:
            if b:
                e = self.table.normal_form(self.monomial(a, b - 1) * casimir())
            elif a:
                e = self.table.normal_form(self.monomial(a - 1, 0) * Element.word("t"))
            else:
                e = Element.one()
            self._pow[key] = e
        return self._pow[key]

    def decomposer(self, degree: int):
        if degree not in self._dec:
            idx = [(a, b) for b in range(degree // 2 + 1) for a in range(degree - 2 * b + 1)]
            self._dec[degree] = (idx, Decomposer([dict(self.monomial(a, b).terms) for a, b in idx]))
        return self._dec[degree]


_BASES: Dict[int, _CenterBasis] = {}


def _basis(table: RelationTable) -> _CenterBasis:
    key = id(table)
    if key not in _BASES or _BASES[key].table is not table:
        _BASES[key] = _CenterBasis(table)
    return _BASES[key]


def center_to_element(c: Poly, table: RelationTable) -> Element:
    B = _basis(table)
    out = Element.zero()
    for m, coef in c.terms.items():
        d = dict(m)
        out = out + B.monomial(d.get("t", 0), d.get("Cas", 0)).scale(coef)
    return out


def element_to_center(e: Element, table: RelationTable) -> Optional[Poly]:
    """Express ``e`` in the span of t^a Cas^b, or None if it is not there."""
    if not e:
        return Poly()
    idx, dec = _basis(table).decomposer(max(len(w) for w in e.terms))
    coeffs = dec.decompose(dict(e.terms))
    if coeffs is None:
        return None
    return Poly({(("Cas", b), ("t", a)): c for (a, b), c in zip(idx, coeffs)})


def trace_power(k: int) -> SymmetricMuElement:
    """Tr N^k = ((s - h) mu1^k + (s + h) mu2^k) / s with mu1,2 = (lam +- s)/2."""
    if k < 0:
        raise ValueError("k must be >= 0")
    mu1 = (LAM + S) * HALF
    mu2 = (LAM - S) * HALF
    num = (S - h) * mu1 ** k + (S + h) * mu2 ** k
    return SymmetricMuElement(num.exact_divide(S, "s"))


def engine_trace_power(k: int, table: RelationTable) -> Poly:
    N = generating_matrix()
    P = [[Element.one(), Element.zero()], [Element.zero(), Element.one()]]
    for _ in range(k):
        P = _mat_mul(P, N, table)
    tr = table.normal_form(P[0][0] + P[1][1])
    c = element_to_center(tr, table)
    if c is None:
        raise RadialError(f"Tr N^{k} is not central")
    return c


# -- the Pi matrix ---------------------------------------------------------------

def _q(x) -> Poly:
    return Poly.const(Scalar(Fraction(x)))


PI_PRINTED: List[List[Poly]] = [
    [CAS - h * h * _q("3/2"), h * h * _q("1/2"), h * -2, Poly()],
    [h * h * _q("3/2"), CAS - h * h * _q("1/2"), h * 2, Poly()],
    [h * CAS, Poly(), CAS - h * h * _q("1/2"), -h],
    [h * h * CAS, h * h * CAS * _q("-1/2"), h * (CAS * 2 + h * h * _q("1/4")), CAS + h * h * _q("1/2")],
]

DELTA_KINDS = ("D0", "D1", "D2", "D3")


def pi_matrix() -> List[List[Poly]]:
    return [list(row) for row in PI_PRINTED]


def certify_pi(table: RelationTable, pi: Optional[List[List[Poly]]] = None) -> List[Element]:
    """Residuals D_i Cas - sum_j Pi_ij D_j in W, one per row (all zero if certified)."""
    pi = pi or pi_matrix()
    ops = [build_operator(k, table) for k in DELTA_KINDS]
    cas = casimir()
    out = []
    for i in range(4):
        e = table.normal_form(ops[i] * cas)
        for j in range(4):
            if pi[i][j]:
                e = e - table.normal_form(center_to_element(pi[i][j], table) * ops[j])
        out.append(e)
    return out


def pi_matrix_mu(pi: Optional[List[List[Poly]]] = None) -> List[List[Poly]]:
    """Pi with Cas = -(s^2 - h^2)/4, entries as polynomials in s."""
    return [[mu_coordinates(e).poly for e in row] for row in (pi or pi_matrix())]


def pi_eigenvalues() -> Tuple[Poly, Poly, Poly]:
    """(lambda_0, lambda_+, lambda_-) as polynomials in s."""
    q4 = Scalar(Fraction(1, 4))
    l0 = (h * h - S * S) * q4
    lp = (h * h - (S + h * 2) ** 2) * q4
    lm = (h * h - (S - h * 2) ** 2) * q4
    return l0, lp, lm


def det(M: List[List[Poly]]) -> Poly:
    n = len(M)
    if n == 1:
        return M[0][0]
    out = Poly()
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


def _pmat_mul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), Poly()) for j in range(n)] for i in range(n)]


def _pmat_shift(A, lam: Poly):
    return [[A[i][j] - lam if i == j else A[i][j] for j in range(len(A))] for i in range(len(A))]


def _pmat_scale(A, c: Poly):
    return [[x * c for x in row] for row in A]


def _pmat_add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def matrix_function_LS(f: Poly, var: str = "x", substitution: Optional[Dict[str, Scalar]] = None
                       ) -> List[List[Poly]]:
    """f(Pi) by the Lagrange-Sylvester interpolation over the three eigenvalues.

    Entries are returned as center elements (polynomials in t, Cas).  With
    ``substitution`` (e.g. {"h": 0}) the scalars are specialized first; a
    coincidence of eigenvalues then raises ``RadialError("confluent spectrum")``.
    """
    P = pi_matrix_mu()
    lams = list(pi_eigenvalues())
    if substitution:
        for v, val in substitution.items():
            P = [[e.substitute_scalar(v, val) for e in row] for row in P]
            lams = [l.substitute_scalar(v, val) for l in lams]
    d01, d02, d12 = lams[0] - lams[1], lams[0] - lams[2], lams[1] - lams[2]
    if not (d01 and d02 and d12):
        raise RadialError("confluent spectrum")
    den = d01 * d02 * d12
    # each Lagrange term times the common denominator
    parts = [
        (0, (1, 2), d12),
        (1, (0, 2), -d02),
        (2, (0, 1), d01),
    ]
    acc = [[Poly() for _ in range(4)] for _ in range(4)]
    for a, (b, c), rest in parts:
        prod = _pmat_mul(_pmat_shift(P, lams[b]), _pmat_shift(P, lams[c]))
        fa = f.subs({var: lams[a]})
        acc = _pmat_add(acc, _pmat_scale(prod, fa * rest))
    out = []
    for row in acc:
        new = []
        for e in row:
            q = e.exact_divide(den, "s")
            new.append(center_from_mu(SymmetricMuElement(q)))
        out.append(new)
    return out


# -- Delta_i on powers of the Casimir ---------------------------------------------

def delta_on_cas_power(i: int, p: int, lambda0_factor: int = 2) -> SymmetricMuElement:
    """Closed formula for Delta_i(Cas^p) in the roots; the 1/s factor is divided
    out exactly.

    ``lambda0_factor`` is the multiple of lambda_0^p in the Delta_3 formula,
    whose printed form has a garbled token there.  The engine supports 2
    (see :func:`delta3_reading_report`); 1 and 3 are the literal readings.
    """
    l0, lp, lm = pi_eigenvalues()
    a, b, c = l0 ** p, lp ** p, lm ** p
    hh = h * h
    if i == 0:
        num, den = S * 2 * a + (S + h * 2) * b + (S - h * 2) * c, hh * S
    elif i == 1:
        num, den = S * 2 * a - (S + h * 2) * b - (S - h * 2) * c, hh * S
    elif i == 2:
        u = S * S + h * S - hh * 2
        v = S * S - h * S - hh * 2
        num, den = -(h * S * 2 * a) + u * b - v * c, hh * S * 2
    elif i == 3:
        u = S * S + h * S - hh * 2
        v = S * S - h * S - hh * 2
        num = (hh * 2 - S * S) * a * lambda0_factor + u * b + v * c
        den = hh * 4
    else:
        raise ValueError("i must be 0..3")
    try:
        q = num.exact_divide(den, "s") if den.degree("s") > 0 else num / den.constant()
    except ValueError as err:
        raise RadialError(f"closed form for Delta_{i}(Cas^{p}) is not polynomial: {err}") from None
    return SymmetricMuElement(q)


def delta_from_pi(i: int, p: int) -> SymmetricMuElement:
    """4 h^-2 (Pi^p)_{i0} computed by plain matrix powers."""
    P = pi_matrix_mu()
    M = [[Poly.const(1) if r == c else Poly() for c in range(4)] for r in range(4)]
    for _ in range(p):
        M = _pmat_mul(M, P)
    return SymmetricMuElement(M[i][0] * (4 / (H * H)))


def engine_delta_on_center(kind: str, c: Poly, table: RelationTable) -> Optional[Poly]:
    """Apply an operator to a center element in the engine; None if the result
    leaves the center."""
    op = build_operator(kind, table)
    return element_to_center(apply_operator(op, center_to_element(c, table), table), table)


def delta3_reading_report(table: RelationTable, p_max: int = 4) -> Dict[str, bool]:
    """Which reading of the garbled lambda_0 token in the Delta_3 formula agrees
    with the engine for all p <= p_max."""
    out = {}
    for label, factor in (("lambda_0^p", 1), ("2*lambda_0^p", 2), ("3*lambda_0^p", 3)):
        ok = True
        for p in range(p_max + 1):
            eng = engine_delta_on_center("D3", CAS ** p, table)
            if eng is None or mu_coordinates(eng) != delta_on_cas_power(3, p, factor):
                ok = False
                break
        out[label] = ok
    return out


# -- the radial part as a difference operator -----------------------------------------

def radial_apply(f: Poly) -> SymmetricMuElement:
    """Delta_rad on f(lam, mu):

        (2 f(lam+2h, mu) - f(lam+2h, (s-2h)^2) - f(lam+2h, (s+2h)^2)) / h^2
        + 2 (f(lam+2h, (s-2h)^2) - f(lam+2h, (s+2h)^2)) / (h s)

    with s = sqrt(mu); the odd part in s must cancel.
    """
    extra = f.variables() - {"lam", "mu"}
    if extra:
        raise ValueError(f"f must be a polynomial in lam and mu, found {sorted(extra)}")
    lam2 = LAM + h * 2
    f0 = f.subs({"lam": lam2, "mu": S * S})
    fm = f.subs({"lam": lam2, "mu": (S - h * 2) ** 2})
    fp = f.subs({"lam": lam2, "mu": (S + h * 2) ** 2})
    num = S * (f0 * 2 - fm - fp) + h * 2 * (fm - fp)
    try:
        val = num.exact_divide(S * (H * H), "s")
    except ValueError as err:
        raise RadialError(f"sqrt(mu) division left a remainder: {err}") from None
    out = SymmetricMuElement(val)
    if not out.is_symmetric():
        raise RadialError(f"odd part in sqrt(mu) does not cancel: {out.odd_part()}")
    return out


def classical_radial_limit(p_max: int) -> List[Dict]:
    """Per p: the h -> 0 limit of Delta_rad(mu^p) against -16 mu f'' - 24 f', and that
    operator against d^2/dr^2 + (2/r) d/dr under mu = -4 r^2."""
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    r = Poly.var("r")
    report = []
    for p in range(p_max + 1):
        f = MU ** p
        limit = radial_apply(f).in_lam_mu().series_coefficient("h", 0, 0)
        classical = MU * f.diff("mu").diff("mu") * -16 - f.diff("mu") * 24
        expected = MU ** max(p - 1, 0) * (-16 * p * (p - 1) - 24 * p)
        g = f.subs({"mu": r * r * -4})
        radial_r = (g.diff("r").diff("r") * r + g.diff("r") * 2)  # r * (g'' + 2 g'/r)
        in_r = classical.subs({"mu": r * r * -4}) * r
        report.append({
            "p": p,
            "limit": limit.render(["mu"]),
            "matches_mu_operator": limit == classical and classical == expected,
            "matches_r_operator": in_r == radial_r,
        })
    return report
