"""Action of braided partial derivatives on algebra elements.

Two independent paths are provided and cross-checked by the tests: the
engine path (normal-order ``operator * element``, then apply the counit) and
closed forms built from the difference operators A and B.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .pbw import Element, RelationTable, TableError
from .poly import Poly, cos_series, exp_series, sin_series, truncate
from .scalars import H, I, ONE, ZERO, Scalar

__all__ = [
    "counit",
    "apply_operator",
    "closed_form_univariate",
    "A_k",
    "B_k",
    "PROP6_ROWS",
    "permute_through_power",
    "permute_closed_form",
    "apply_decomposable",
    "leibniz_apply",
    "derivative_by_coproduct",
    "build_operator",
    "OPERATOR_KINDS",
    "eigenvalue_series",
    "eigen_check",
    "FormElement",
    "de_rham_d",
    "FORM_LETTERS",
    "poly_to_element",
    "element_to_poly",
]

HALF = Scalar(Fraction(1, 2))
COMPACT = ("t", "x", "y", "z")
DERIV_OF = {"t": "dtt", "x": "dx", "y": "dy", "z": "dz"}


# -- engine path ------------------------------------------------------------------

def counit(e: Element, table: RelationTable) -> Element:
    """Evaluate the trailing derivative letters of a normal-ordered element on 1."""
    out: Dict[Tuple[str, ...], Scalar] = {}
    gens = table.by_name
    for w, c in e.terms.items():
        k = len(w)
        while k and gens[w[k - 1]].sort == "derivative":
            k -= 1
        factor = c
        for a in w[k:]:
            factor = factor * gens[a].counit
            if not factor:
                break
        if factor:
            head = w[:k]
            if any(gens[a].sort == "derivative" for a in head):
                raise TableError("element is not normal-ordered (derivative before coordinate)")
            s = out.get(head, ZERO) + factor
            if s:
                out[head] = s
            else:
                out.pop(head, None)
    return Element(out)


def apply_operator(w: Element, f: Element, table: RelationTable) -> Element:
    """w(f): normal-order ``w * f`` and send derivatives to their value on 1."""
    return counit(table.normal_form(w * f), table)


# -- closed forms -----------------------------------------------------------------

def closed_form_univariate(f: Poly, v: str) -> Tuple[Poly, Poly]:
    """A(f) = (f(v - ih/2) + f(v + ih/2))/2 and B(f) = i(f(v - ih/2) - f(v + ih/2))/2."""
    shift = Poly.const(I * H * HALF)
    minus = f.subs({v: Poly.var(v) - shift})
    plus = f.subs({v: Poly.var(v) + shift})
    return (minus + plus) * HALF, (minus - plus) * (I * HALF)


def A_k(v: str, k: int) -> Poly:
    return closed_form_univariate(Poly.var(v, k), v)[0]


def B_k(v: str, k: int) -> Poly:
    return closed_form_univariate(Poly.var(v, k), v)[1]


def shift_t(f: Poly, amount: Scalar = None) -> Poly:
    amount = H * HALF if amount is None else amount
    return f.subs({"t": Poly.var("t") + Poly.const(amount)})


# Rows of the permutation relations: (derivative, coordinate) -> list of
# (kind, derivative letter, sign) with kind "A", "B" or "shift" (t + h/2).
PROP6_ROWS: Dict[Tuple[str, str], List[Tuple[str, str, int]]] = {}
for _d in ("dtt", "dx", "dy", "dz"):
    PROP6_ROWS[(_d, "t")] = [("shift", _d, 1)]
PROP6_ROWS.update({
    ("dtt", "x"): [("A", "dtt", 1), ("B", "dx", -1)],
    ("dtt", "y"): [("A", "dtt", 1), ("B", "dy", -1)],
    ("dtt", "z"): [("A", "dtt", 1), ("B", "dz", -1)],
    ("dx", "x"): [("A", "dx", 1), ("B", "dtt", 1)],
    ("dx", "y"): [("A", "dx", 1), ("B", "dz", 1)],
    ("dx", "z"): [("A", "dx", 1), ("B", "dy", -1)],
    ("dy", "x"): [("A", "dy", 1), ("B", "dz", -1)],
    ("dy", "y"): [("A", "dy", 1), ("B", "dtt", 1)],
    ("dy", "z"): [("A", "dy", 1), ("B", "dx", 1)],
    ("dz", "x"): [("A", "dz", 1), ("B", "dy", 1)],
    ("dz", "y"): [("A", "dz", 1), ("B", "dx", -1)],
    ("dz", "z"): [("A", "dz", 1), ("B", "dtt", 1)],
})


def poly_to_element(p: Poly, order: Sequence[str] = COMPACT, tail: Sequence[str] = ()) -> Element:
    """Commutative polynomial -> ordered words (letters in ``order``), times ``tail``."""
    out: Dict[Tuple[str, ...], Scalar] = {}
    rank = {v: k for k, v in enumerate(order)}
    for m, c in p.terms.items():
        if any(v not in rank for v, _ in m):
            raise ValueError(f"variables {sorted(v for v, _ in m)} outside {list(order)}")
        word = tuple(v for v, e in sorted(m, key=lambda t: rank[t[0]]) for _ in range(e)) + tuple(tail)
        out[word] = out.get(word, ZERO) + c
    return Element(out)


def element_to_poly(e: Element, rename: Optional[Mapping[str, str]] = None) -> Poly:
    """Commutative image: each word becomes the product of its letters."""
    rename = rename or {}
    out = Poly()
    for w, c in e.terms.items():
        m: Dict[str, int] = {}
        for a in w:
            a = rename.get(a, a)
            m[a] = m.get(a, 0) + 1
        out = out + Poly({tuple(sorted(m.items())): c})
    return out


def permute_closed_form(d: str, v: str, f: Poly) -> Element:
    """Right-hand side of ``d * f(v)`` in normal order (corollary form)."""
    if (d, v) not in PROP6_ROWS:
        raise KeyError(f"no permutation row for {d} {v}")
    A, B = closed_form_univariate(f, v)
    out = Element.zero()
    for kind, letter, sign in PROP6_ROWS[(d, v)]:
        coeff = shift_t(f) if kind == "shift" else (A if kind == "A" else B)
        out = out + poly_to_element(coeff * sign, tail=(letter,))
    return out


def permute_through_power(d: str, v: str, k: int) -> Element:
    """``d * v^k`` rewritten with the derivative on the right, from the closed form."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return permute_closed_form(d, v, Poly.var(v, k))


def _as_poly(f, v: str) -> Poly:
    if isinstance(f, Poly):
        return f
    return Poly.const(f)


def apply_decomposable(d: str, f0, f1, f2, f3) -> Poly:
    """d(f0(t) f1(x) f2(y) f3(z)) from the closed forms; ``d`` in dtt, dt, dx, dy, dz.

    The result is returned as a commutative polynomial standing for the
    ordered product t^a x^b y^c z^e (see :func:`poly_to_element`).
    """
    f0, f1, f2, f3 = (_as_poly(f, v) for f, v in zip((f0, f1, f2, f3), COMPACT))
    A1, B1 = closed_form_univariate(f1, "x")
    A2, B2 = closed_form_univariate(f2, "y")
    A3, B3 = closed_form_univariate(f3, "z")
    pre = shift_t(f0) * (2 / H)
    if d in ("dtt", "dt"):
        val = pre * (A1 * A2 * A3 - B1 * B2 * B3)
        if d == "dt":
            val = val - f0 * f1 * f2 * f3 * (2 / H)
        return val
    if d == "dx":
        return pre * (B1 * A2 * A3 + A1 * B2 * B3)
    if d == "dy":
        return pre * (A1 * B2 * A3 - B1 * A2 * B3)
    if d == "dz":
        return pre * (A1 * A2 * B3 + B1 * B2 * A3)
    raise KeyError(f"unknown derivative {d!r}")


# -- Leibniz rule through the coproduct -----------------------------------------

def _gl_index(table: RelationTable):
    """Maps for the 2x2 matrix generators: coordinate (k, l) and derivative (i, j)."""
    from .hecke import coordinate_names, derivative_names

    coords = coordinate_names(2)
    derivs = derivative_names(2)
    cpos = {coords[k][l]: (k, l) for k in range(2) for l in range(2)}
    dpos = {derivs[i][j]: (i, j) for i in range(2) for j in range(2)}
    missing = (set(cpos) | set(dpos)) - set(table.names)
    if missing:
        raise TableError(f"table lacks generators {sorted(missing)}")
    return cpos, dpos, derivs


def derivative_by_coproduct(d: str, f: Element, table: RelationTable) -> Element:
    """d(f) computed from d(1) = 0, d_i^j(n_k^l) = delta_k^j delta_i^l and the
    coproduct d_i^j -> d_i^j (x) 1 + 1 (x) d_i^j + h d_k^j (x) d_i^k, recursing
    on the first letter of each word.  Products are taken in ``table``."""
    cpos, dpos, derivs = _gl_index(table)
    memo: Dict[Tuple[Tuple[int, int], Tuple[str, ...]], Element] = {}

    def on_letter(ij, a) -> Scalar:
        i, j = ij
        k, l = cpos[a]
        return ONE if (k == j and i == l) else ZERO

    def on_word(ij, w) -> Element:
        key = (ij, w)
        if key in memo:
            return memo[key]
        if not w:
            res = Element.zero()
        else:
            a, rest = w[0], w[1:]
            i, j = ij
            res = Element.word(*rest).scale(on_letter(ij, a))
            res = res + table.normal_form(Element.word(a) * on_word(ij, rest))
            for k in range(2):
                c = on_letter((k, j), a)
                if c:
                    res = res + on_word((i, k), rest).scale(c * H)
        memo[key] = res
        return res

    ij = dpos[d]
    out = Element.zero()
    for w, c in f.terms.items():
        out = out + on_word(ij, w).scale(c)
    return out


def leibniz_apply(d: str, f: Element, g: Element, table: RelationTable) -> Element:
    """d(f g) = d(f) g + f d(g) + h sum_k d_k^j(f) d_i^k(g)."""
    cpos, dpos, derivs = _gl_index(table)
    i, j = dpos[d]
    df = derivative_by_coproduct(d, f, table)
    dg = derivative_by_coproduct(d, g, table)
    out = table.normal_form(df * g) + table.normal_form(f * dg)
    for k in range(2):
        left = derivative_by_coproduct(derivs[k][j], f, table)
        right = derivative_by_coproduct(derivs[i][k], g, table)
        out = out + table.normal_form(left * right).scale(H)
    return out


# -- operators ---------------------------------------------------------------------

OPERATOR_KINDS = ("laplacian", "dalembertian", "Q", "D0", "D1", "D2", "D3")


def build_operator(kind: str, table: RelationTable) -> Element:
    """Second-order operators on the compact table, normal-ordered.

    D0 = dtt^2, D1 = laplacian, D2 = Q dtt, D3 = Q^2 with Q = x dx + y dy + z dz;
    the d'Alembertian uses the unshifted dt = dtt - 2/h.
    """
    W = Element.word
    lap = W("dx", "dx") + W("dy", "dy") + W("dz", "dz")
    Qop = W("x", "dx") + W("y", "dy") + W("z", "dz")
    if kind in ("laplacian", "D1"):
        e = lap
    elif kind == "dalembertian":
        dt = W("dtt") - Element.scalar(2 / H)
        e = dt * dt - lap
    elif kind == "Q":
        e = Qop
    elif kind == "D0":
        e = W("dtt", "dtt")
    elif kind == "D2":
        e = Qop * W("dtt")
    elif kind == "D3":
        e = Qop * Qop
    else:
        raise KeyError(f"unknown operator {kind!r}; expected one of {OPERATOR_KINDS}")
    return table.normal_form(e)


# -- eigenfunctions ----------------------------------------------------------------

ALPHA = ("a0", "a1", "a2", "a3")


def eigenvalue_series(d: str, order: int, active: Sequence[bool] = (True,) * 4) -> Poly:
    """The eigenvalue of ``d`` on the ordered exponential, as a series in the
    formal parameters a0..a3 truncated at total degree ``order``."""
    args = [Poly.var(a) * (H * HALF) if on else Poly() for a, on in zip(ALPHA, active)]
    E0 = exp_series(args[0], order)
    c = [cos_series(x, order) for x in args[1:]]
    s = [sin_series(x, order) for x in args[1:]]
    if d == "dtt":
        core = c[0] * c[1] * c[2] - s[0] * s[1] * s[2]
    elif d == "dx":
        core = s[0] * c[1] * c[2] + c[0] * s[1] * s[2]
    elif d == "dy":
        core = c[0] * s[1] * c[2] - s[0] * c[1] * s[2]
    elif d == "dz":
        core = c[0] * c[1] * s[2] + s[0] * s[1] * c[2]
    else:
        raise KeyError(d)
    return truncate(truncate(E0, ALPHA, order) * truncate(core, ALPHA, order), ALPHA, order) * (2 / H)


def _exp_truncated(active: Sequence[bool], order: int) -> Dict[Tuple[int, ...], Element]:
    """alpha-multi-index n -> t^n0 x^n1 y^n2 z^n3 / n! for |n| <= order."""
    out = {}
    ranges = [range(order + 1) if on else range(1) for on in active]
    for n in itertools.product(*ranges):
        if sum(n) > order:
            continue
        fact = 1
        for k in n:
            for j in range(2, k + 1):
                fact *= j
        word = tuple(v for v, k in zip(COMPACT, n) for _ in range(k))
        out[n] = Element({word: Scalar(Fraction(1, fact))})
    return out


def eigen_check(d: str, table: RelationTable, active: Sequence[bool] = (True,) * 4,
                degree: int = 4) -> bool:
    """Compare d(f) with eigenvalue * f coefficient by coefficient in alpha, up to
    alpha-degree ``degree`` (which requires exactly the generator degrees <= ``degree``)."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    f = _exp_truncated(active, degree)
    ev = eigenvalue_series(d, degree, active)
    ev_coeff: Dict[Tuple[int, ...], Scalar] = {}
    for m, c in ev.terms.items():
        dm = dict(m)
        ev_coeff[tuple(dm.get(a, 0) for a in ALPHA)] = c
    D = Element.word(d)
    for n, mono in f.items():
        lhs = apply_operator(D, mono, table)
        rhs = Element.zero()
        for m, c in ev_coeff.items():
            rest = tuple(x - y for x, y in zip(n, m))
            if min(rest) < 0:
                continue
            rhs = rhs + f[rest].scale(c)
        if lhs != rhs:
            return False
    return True


# -- differential forms ----------------------------------------------------------

FORM_LETTERS = ("Dt", "Dx", "Dy", "Dz")


class FormElement:
    """Finite map: strictly increasing tuple of form letters -> coordinate element."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Tuple[str, ...], Element]] = None):
        self.terms: Dict[Tuple[str, ...], Element] = {}
        for k, v in (terms or {}).items():
            k = tuple(k)
            if list(k) != sorted(set(k), key=FORM_LETTERS.index):
                raise ValueError(f"form monomial {k} not strictly increasing")
            if v:
                self.terms[k] = v

    @classmethod
    def function(cls, f: Element) -> "FormElement":
        return cls({(): f})

    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=-1)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Element.zero()) + v
        return FormElement(out)

    def __eq__(self, other):
        return isinstance(other, FormElement) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        parts = [f"{'^'.join(k) or '1'}*({v})" for k, v in self.terms.items()]
        return "FormElement(" + " + ".join(parts) + ")"


def _wedge_right(mono: Tuple[str, ...], letter: str):
    """(sign, monomial) for mono ^ letter, or None if it vanishes."""
    if letter in mono:
        return None
    idx = FORM_LETTERS.index(letter)
    after = sum(1 for a in mono if FORM_LETTERS.index(a) > idx)
    new = tuple(sorted(mono + (letter,), key=FORM_LETTERS.index))
    return (-1) ** after, new


def de_rham_d(w: FormElement, table: RelationTable) -> FormElement:
    """d(omega f) = omega ^ (Dt dt(f) + Dx dx(f) + Dy dy(f) + Dz dz(f)), dt unshifted."""
    ops = {
        "Dt": Element.word("dtt") - Element.scalar(2 / H),
        "Dx": Element.word("dx"),
        "Dy": Element.word("dy"),
        "Dz": Element.word("dz"),
    }
    out: Dict[Tuple[str, ...], Element] = {}
    for mono, f in w.terms.items():
        for letter, op in ops.items():
            wedge = _wedge_right(mono, letter)
            if wedge is None:
                continue
            sign, new = wedge
            val = apply_operator(op, f, table)
            if val:
                out[new] = out.get(new, Element.zero()) + val.scale(sign)
    return FormElement(out)
