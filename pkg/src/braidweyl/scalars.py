"""Exact coefficients: rational functions in ``q`` and ``h`` over the Gaussian rationals.

A :class:`Scalar` is stored as ``num / den`` where ``num`` is a Laurent
polynomial in ``q, h`` and ``den`` is either ``None`` (meaning 1) or an
ordinary polynomial with no monomial factor, coprime to ``num`` and monic
with respect to the degree-lex order that compares the ``h`` exponent first.
That form is unique, so equality is structural.

Coefficients of the polynomials are pairs ``(re, im)`` of :class:`gmpy2.mpq`.
Almost everything in this package lives on the Laurent fast path
(``den is None``); only relation generation occasionally produces a genuine
denominator, and then the gcd is delegated to sympy.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Optional, Tuple, Union

import gmpy2
from gmpy2 import mpq

__all__ = [
    "Scalar",
    "ScalarError",
    "ZeroDivisorError",
    "PoleError",
    "scalar_arith",
    "substitute",
    "series_coefficient",
    "VARS",
]

Mono = Tuple[int, int]  # (exponent of q, exponent of h)
Coef = Tuple[mpq, mpq]
Poly = Dict[Mono, Coef]

VARS = ("q", "h")
_ZERO = mpq(0)
_ONE = mpq(1)


class ScalarError(ArithmeticError):
    pass


class ZeroDivisorError(ScalarError, ZeroDivisionError):
    def __init__(self, msg: str = "zero divisor"):
        super().__init__(msg)


class PoleError(ScalarError):
    pass


# -- Gaussian rationals as (re, im) -----------------------------------------

def _cmul(a: Coef, b: Coef) -> Coef:
    ar, ai = a
    br, bi = b
    if not ai and not bi:
        return (ar * br, _ZERO)
    return (ar * br - ai * bi, ar * bi + ai * br)


def _cinv(a: Coef) -> Coef:
    ar, ai = a
    if not ai:
        return (1 / ar, _ZERO)
    n = ar * ar + ai * ai
    return (ar / n, -ai / n)


def _cnonzero(a: Coef) -> bool:
    return bool(a[0]) or bool(a[1])


# -- sparse Laurent polynomials ---------------------------------------------

def _padd(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for m, (br, bi) in b.items():
        if sign < 0:
            br, bi = -br, -bi
        c = out.get(m)
        if c is None:
            out[m] = (br, bi)
        else:
            r, i = c[0] + br, c[1] + bi
            if r or i:
                out[m] = (r, i)
            else:
                del out[m]
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    if len(a) == 1 and len(b) == 1:
        (ma, ca), = a.items()
        (mb, cb), = b.items()
        return {(ma[0] + mb[0], ma[1] + mb[1]): _cmul(ca, cb)}
    out: Dict[Mono, list] = {}
    for (aq, ah), (ar, ai) in a.items():
        for (bq, bh), (br, bi) in b.items():
            m = (aq + bq, ah + bh)
            if ai or bi:
                r, i = ar * br - ai * bi, ar * bi + ai * br
            else:
                r, i = ar * br, _ZERO
            acc = out.get(m)
            if acc is None:
                out[m] = [r, i]
            else:
                acc[0] += r
                acc[1] += i
    return {m: (r, i) for m, (r, i) in out.items() if r or i}


def _pscale(a: Poly, c: Coef) -> Poly:
    return {m: _cmul(v, c) for m, v in a.items()}


def _pshift(a: Poly, dq: int, dh: int) -> Poly:
    return {(m[0] + dq, m[1] + dh): v for m, v in a.items()}


def _min_exponents(a: Poly) -> Mono:
    return (min(m[0] for m in a), min(m[1] for m in a))


def _order_key(m: Mono):
    # degree-lex, h compared before q
    return (m[0] + m[1], m[1], m[0])


def _leading(a: Poly) -> Tuple[Mono, Coef]:
    m = max(a, key=_order_key)
    return m, a[m]


def _is_monomial(a: Poly) -> bool:
    return len(a) == 1


_SYMPY_RING = None


def _sympy_ring():
    global _SYMPY_RING
    if _SYMPY_RING is None:
        from sympy import QQ_I, ring

        _SYMPY_RING = ring("q,h", QQ_I)[0]
    return _SYMPY_RING


def _to_sympy(a: Poly):
    from sympy import QQ, QQ_I

    R = _sympy_ring()
    return R.from_dict({m: QQ_I(QQ(int(r.numerator), int(r.denominator)),
                                QQ(int(i.numerator), int(i.denominator)))
                        for m, (r, i) in a.items()})


def _from_sympy(p) -> Poly:
    out = {}
    for m, c in p.terms():
        out[(m[0], m[1])] = (mpq(c.x), mpq(c.y))
    return out


def _poly_gcd_cofactors(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """gcd and cofactors of two ordinary (non-negative exponent) polynomials."""
    g, ca, cb = _to_sympy(a).cofactors(_to_sympy(b))
    return _from_sympy(g), _from_sympy(ca), _from_sympy(cb)


def _coerce_coef(x) -> Coef:
    if isinstance(x, tuple):
        return (mpq(x[0]), mpq(x[1]))
    if isinstance(x, complex):
        return (mpq(Fraction(x.real)), mpq(Fraction(x.imag)))
    return (mpq(x), _ZERO)


class Scalar:
    """Immutable element of Q(i)(q, h)."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, value: Union[int, Fraction, "Scalar", tuple, complex] = 0):
        if isinstance(value, Scalar):
            self._num, self._den = value._num, value._den
        else:
            c = _coerce_coef(value)
            self._num = {(0, 0): c} if _cnonzero(c) else {}
            self._den = None
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Optional[Poly] = None) -> "Scalar":
        s = object.__new__(cls)
        s._num = num
        s._den = den
        s._hash = None
        return s

    @classmethod
    def from_terms(cls, terms: Dict[Mono, object]) -> "Scalar":
        """Laurent polynomial from ``{(exp_q, exp_h): coefficient}``."""
        num = {}
        for m, c in terms.items():
            cc = _coerce_coef(c)
            if _cnonzero(cc):
                num[(int(m[0]), int(m[1]))] = cc
        return cls._raw(num)

    @classmethod
    def _make(cls, num: Poly, den: Optional[Poly]) -> "Scalar":
        """Canonicalize ``num/den``; ``num`` Laurent, ``den`` Laurent and nonzero."""
        if not num:
            return ZERO
        if den is None:
            return cls._raw(num)
        if not den:
            raise ZeroDivisorError()
        if _is_monomial(den):
            (m, c), = den.items()
            return cls._raw(_pscale(_pshift(num, -m[0], -m[1]), _cinv(c)))
        # strip the monomial content of den into num
        dq, dh = _min_exponents(den)
        den = _pshift(den, -dq, -dh)
        num = _pshift(num, -dq, -dh)
        nq, nh = _min_exponents(num)
        nq, nh = min(nq, 0), min(nh, 0)
        g, cn, cd = _poly_gcd_cofactors(_pshift(num, -nq, -nh), den)
        num = _pshift(cn, nq, nh)
        den = cd
        if _is_monomial(den):
            return cls._make(num, den)
        _, lc = _leading(den)
        inv = _cinv(lc)
        return cls._raw(_pscale(num, inv), _pscale(den, inv))

    # -- constants / generators --------------------------------------------
    @staticmethod
    def var(name: str) -> "Scalar":
        if name == "q":
            return Q
        if name in ("h", "hbar"):
            return H
        if name == "i":
            return I
        raise ValueError(f"unknown scalar variable {name!r}")

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self) -> bool:
        return bool(self._num)

    def is_laurent(self) -> bool:
        return self._den is None

    def is_constant(self) -> bool:
        return self._den is None and all(m == (0, 0) for m in self._num)

    def constant_value(self) -> Coef:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self._num.get((0, 0), (_ZERO, _ZERO))

    def is_rational(self) -> bool:
        return self.is_constant() and not self.constant_value()[1]

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational number")
        r = self.constant_value()[0]
        return Fraction(int(r.numerator), int(r.denominator))

    def num_terms(self) -> Dict[Mono, Coef]:
        return dict(self._num)

    def den_terms(self) -> Dict[Mono, Coef]:
        return dict(self._den) if self._den is not None else {(0, 0): (_ONE, _ZERO)}

    def is_real(self) -> bool:
        """True if no coefficient has an imaginary part."""
        polys = [self._num] + ([self._den] if self._den else [])
        return all(not c[1] for p in polys for c in p.values())

    def conjugate(self) -> "Scalar":
        conj = lambda p: {m: (r, -i) for m, (r, i) in p.items()}
        return Scalar._raw(conj(self._num), conj(self._den) if self._den else None)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _lift(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction, complex)) or type(x) is type(_ONE):
            return Scalar(x)
        return NotImplemented

    def __add__(self, other):
        other = Scalar._lift(other)
        if other is NotImplemented:
            return other
        if not other._num:
            return self
        if not self._num:
            return other
        if self._den is None and other._den is None:
            return Scalar._raw(_padd(self._num, other._num))
        return self._general(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar._lift(other)
        if other is NotImplemented:
            return other
        if not other._num:
            return self
        if self._den is None and other._den is None:
            return Scalar._raw(_padd(self._num, other._num, -1))
        return self._general(other, -1)

    def __rsub__(self, other):
        other = Scalar._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def _general(self, other: "Scalar", sign: int) -> "Scalar":
        one = {(0, 0): (_ONE, _ZERO)}
        ad = self._den or one
        bd = other._den or one
        num = _padd(_pmul(self._num, bd), _pmul(other._num, ad), sign)
        return Scalar._make(num, _pmul(ad, bd))

    def __neg__(self):
        return Scalar._raw({m: (-r, -i) for m, (r, i) in self._num.items()}, self._den)

    def __mul__(self, other):
        other = Scalar._lift(other)
        if other is NotImplemented:
            return other
        if not self._num or not other._num:
            return ZERO
        if self._den is None and other._den is None:
            return Scalar._raw(_pmul(self._num, other._num))
        one = {(0, 0): (_ONE, _ZERO)}
        return Scalar._make(_pmul(self._num, other._num),
                            _pmul(self._den or one, other._den or one))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self._num:
            raise ZeroDivisorError()
        if self._den is None and len(self._num) == 1:
            (m, c), = self._num.items()
            return Scalar._raw({(-m[0], -m[1]): _cinv(c)})
        return Scalar._make(self._den or {(0, 0): (_ONE, _ZERO)}, self._num)

    def __truediv__(self, other):
        other = Scalar._lift(other)
        if other is NotImplemented:
            return other
        if not other._num:
            raise ZeroDivisorError()
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Scalar._lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar._lift(other)
            if other is NotImplemented:
                return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._num.items()),
                               frozenset(self._den.items()) if self._den else None))
        return self._hash

    # -- evaluation ---------------------------------------------------------
    def substitute(self, var: str, value: "Scalar") -> "Scalar":
        return substitute(self, var, value)

    def series_coefficient(self, var: str, center, order: int) -> "Scalar":
        return series_coefficient(self, var, center, order)

    def __repr__(self):
        return f"Scalar({render_scalar(self)!r})"

    def __str__(self):
        return render_scalar(self)


ZERO = Scalar._raw({})
ONE = Scalar._raw({(0, 0): (_ONE, _ZERO)})
Q = Scalar._raw({(1, 0): (_ONE, _ZERO)})
H = Scalar._raw({(0, 1): (_ONE, _ZERO)})
I = Scalar._raw({(0, 0): (_ZERO, _ONE)})
Scalar.ZERO, Scalar.ONE, Scalar.Q, Scalar.H, Scalar.I = ZERO, ONE, Q, H, I


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# -- substitution -------------------------------------------------------------

def _var_index(var: str) -> int:
    if var == "q":
        return 0
    if var in ("h", "hbar"):
        return 1
    raise ValueError(f"unknown variable {var!r}")


def _laurent_to_scalar(p: Poly) -> Scalar:
    return Scalar._raw({m: c for m, c in p.items() if _cnonzero(c)})


def _eval_poly(p: Poly, k: int, value: Scalar) -> Scalar:
    """Substitute ``value`` for variable ``k`` in the Laurent polynomial ``p``."""
    groups: Dict[int, Poly] = {}
    for m, c in p.items():
        e = m[k]
        rest = (0, m[1]) if k == 0 else (m[0], 0)
        groups.setdefault(e, {})[rest] = c
    total = ZERO
    for e, rest in groups.items():
        if e < 0 and value.is_zero():
            raise PoleError(f"pole: {VARS[k]}^{e} at {VARS[k]}=0")
        total = total + _laurent_to_scalar(rest) * value ** e
    return total


def substitute(s: Scalar, var: str, value) -> Scalar:
    """Evaluate ``s`` at ``var = value`` exactly; raises :class:`PoleError` on a pole."""
    k = _var_index(var)
    value = Scalar._lift(value)
    num = _eval_poly(s._num, k, value)
    if s._den is None:
        return num
    den = _eval_poly(s._den, k, value)
    if den.is_zero():
        raise PoleError(f"pole: denominator {render_poly(s._den)} vanishes at {var}={value}")
    return num / den


def _taylor_coeffs(p: Poly, k: int, center: Scalar, upto: int):
    """Coefficients c_0..c_upto of p(center + x) in powers of x (Laurent in the other var).

    Returns None-free list; a negative power of the expansion variable with
    ``center == 0`` gives a pole, reported by the caller.
    """
    # p(center + x) = sum_e rest_e (center+x)^e
    groups: Dict[int, Poly] = {}
    for m, c in p.items():
        rest = (0, m[1]) if k == 0 else (m[0], 0)
        groups.setdefault(m[k], {})[rest] = c
    coeffs = [ZERO] * (upto + 1)
    for e, rest in groups.items():
        r = _laurent_to_scalar(rest)
        if e >= 0:
            for j in range(min(e, upto) + 1):
                coeffs[j] = coeffs[j] + r * comb(e, j) * center ** (e - j)
        else:
            if center.is_zero():
                raise PoleError(f"pole: {VARS[k]}^{e} at {VARS[k]}=0")
            # (c + x)^e = c^e (1 + x/c)^e, generalized binomial
            n = -e
            for j in range(upto + 1):
                # binom(e, j) = (-1)^j binom(n + j - 1, j)
                b = (-1) ** j * comb(n + j - 1, j)
                coeffs[j] = coeffs[j] + r * b * center ** (e - j)
    return coeffs


def series_coefficient(s: Scalar, var: str, center, order: int) -> Scalar:
    """Coefficient of ``(var - center)^order`` in the Taylor expansion of ``s``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    k = _var_index(var)
    center = Scalar._lift(center)
    num = _taylor_coeffs(s._num, k, center, order)
    if s._den is None:
        return num[order]
    den = _taylor_coeffs(s._den, k, center, order)
    if den[0].is_zero():
        raise PoleError(f"pole: denominator {render_poly(s._den)} vanishes at {var}={center}")
    # power series division num / den
    inv0 = den[0].inverse()
    out = []
    for n in range(order + 1):
        acc = num[n]
        for j in range(1, n + 1):
            acc = acc - den[j] * out[n - j]
        out.append(acc * inv0)
    return out[order]


# -- rendering ----------------------------------------------------------------

def _fmt_rational(r: mpq) -> str:
    if r.denominator == 1:
        return str(int(r.numerator))
    return f"{int(r.numerator)}/{int(r.denominator)}"


def _fmt_mono(m: Mono) -> str:
    parts = []
    for name, e in zip(VARS, m):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _fmt_term(m: Mono, c: Coef) -> Tuple[bool, str]:
    """Render one term; returns (negative, text without sign)."""
    re, im = c
    mono = _fmt_mono(m)
    if re and im:
        inner = f"{_fmt_rational(re)} + {_fmt_rational(im)}*i" if im > 0 else \
            f"{_fmt_rational(re)} - {_fmt_rational(-im)}*i"
        body = f"({inner})"
        return False, body + ("*" + mono if mono else "")
    if im:
        neg, r, unit = im < 0, abs(im), "i"
    else:
        neg, r, unit = re < 0, abs(re), ""
    factors = [f for f in (unit, mono) if f]
    p, d = int(r.numerator), int(r.denominator)
    if not factors:
        text = _fmt_rational(r)
    else:
        head = "*".join(factors)
        text = head if p == 1 else f"{p}*{head}"
        if d != 1:
            text = f"{text}/{d}"
    return neg, text


def render_poly(p: Poly) -> str:
    if not p:
        return "0"
    keys = sorted(p, key=_order_key, reverse=True)
    out = []
    for j, m in enumerate(keys):
        neg, text = _fmt_term(m, p[m])
        if j == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)


def render_scalar(s: Scalar) -> str:
    num = render_poly(s._num)
    if s._den is None:
        return num
    return f"({num})/({render_poly(s._den)})"


def needs_parens(s: Scalar) -> bool:
    """Whether the rendering must be parenthesized when used as a factor."""
    if s._den is not None:
        return True
    if len(s._num) > 1:
        return True
    (m, c), = s._num.items() if s._num else (((0, 0), (_ONE, _ZERO)),)
    if c[0] and c[1]:
        return False  # already parenthesized by _fmt_term
    text = _fmt_term(m, c)[1]
    return "/" in text


Scalar.render = render_scalar
