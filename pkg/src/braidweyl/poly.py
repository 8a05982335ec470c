"""Commutative polynomials in named variables with :class:`Scalar` coefficients.

Used wherever the noncommutative engine is not needed: closed-form
difference operators, center elements in (t, Cas), eigenvalue coordinates,
and Poisson brackets on the associated commutative algebra.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, Scalar, series_coefficient, substitute

Mono = Tuple[Tuple[str, int], ...]


def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Mono, Scalar]] = None):
        self.terms: Dict[Mono, Scalar] = {}
        for m, c in (terms or {}).items():
            c = Scalar._lift(c)
            if c:
                m = tuple(sorted((v, e) for v, e in m if e))
                prev = self.terms.get(m)
                s = c if prev is None else prev + c
                if s:
                    self.terms[m] = s
                else:
                    self.terms.pop(m, None)

    @classmethod
    def _wrap(cls, terms):
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        return cls._wrap({((name, power),) if power else (): ONE})

    @classmethod
    def const(cls, c) -> "Poly":
        c = Scalar._lift(c)
        return cls._wrap({(): c} if c else {})

    @staticmethod
    def lift(x) -> "Poly":
        return x if isinstance(x, Poly) else Poly.const(x)

    def is_zero(self) -> bool:
        return not self.terms

    __bool__ = lambda self: bool(self.terms)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self, var: Optional[str] = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max(dict(m).get(var, 0) for m in self.terms)

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant(self) -> Scalar:
        return self.terms.get((), ZERO)

    # -- ring operations ---------------------------------------------------------
    def __add__(self, other):
        other = Poly.lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.lift(other))

    def __rsub__(self, other):
        return Poly.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Scalar._lift(other)
            if not c:
                return Poly()
            return Poly._wrap({m: v * c for m, v in self.terms.items()})
        out: Dict[Mono, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, ZERO) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._wrap(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, Poly):
            if not c.is_constant():
                raise TypeError("use exact_divide for polynomial divisors")
            c = c.constant()
        return self * Scalar._lift(c).inverse()

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.lift(other)
            except Exception:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus and substitution -----------------------------------------------
    def diff(self, var: str) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(var, 0)
            if e:
                d[var] = e - 1
                out[tuple(sorted(d.items()))] = c * e
        return Poly(out)

    def subs(self, images: Mapping[str, object]) -> "Poly":
        """Simultaneous substitution of variables by polynomials or scalars."""
        images = {k: Poly.lift(v) for k, v in images.items()}
        cache: Dict[Tuple[str, int], Poly] = {}
        out = Poly()
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, e in m:
                if v in images:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = images[v] ** e
                    term = term * cache[key]
                else:
                    term = term * Poly.var(v, e)
            out = out + term
        return out

    def map_coefficients(self, f: Callable[[Scalar], Scalar]) -> "Poly":
        return Poly({m: f(c) for m, c in self.terms.items()})

    def substitute_scalar(self, var: str, value) -> "Poly":
        """Substitute a value for q or h inside every coefficient."""
        return self.map_coefficients(lambda c: substitute(c, var, value))

    def series_coefficient(self, var: str, center, order: int) -> "Poly":
        return self.map_coefficients(lambda c: series_coefficient(c, var, center, order))

    def coefficient(self, var: str, k: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(var, 0) == k:
                d.pop(var, None)
                out[tuple(sorted(d.items()))] = c
        return Poly(out)

    def coefficients_in(self, var: str) -> List["Poly"]:
        return [self.coefficient(var, k) for k in range(self.degree(var) + 1)]

    def exact_divide(self, divisor: "Poly", var: str) -> "Poly":
        """Divide by a polynomial in ``var`` alone; a remainder raises ValueError."""
        divisor = Poly.lift(divisor)
        if divisor.variables() - {var}:
            raise ValueError("divisor must be univariate")
        dcoef = divisor.coefficients_in(var)
        n = len(dcoef) - 1
        if n < 0:
            raise ZeroDivisionError("division by zero polynomial")
        lead_inv = dcoef[n].constant().inverse()
        rem = self
        quot = Poly()
        while rem and rem.degree(var) >= n:
            k = rem.degree(var)
            top = rem.coefficient(var, k) * lead_inv
            step = top * Poly.var(var, k - n)
            quot = quot + step
            rem = rem - step * divisor
        if rem:
            raise ValueError(f"inexact division, remainder {rem}")
        return quot

    # -- rendering -------------------------------------------------------------
    def sorted_terms(self, order: Optional[Sequence[str]] = None):
        order = list(order or sorted(self.variables()))

        def key(m):
            d = dict(m)
            return (sum(d.values()), tuple(d.get(v, 0) for v in order))

        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def render(self, order: Optional[Sequence[str]] = None) -> str:
        from .parsing import render_coefficient

        if not self.terms:
            return "0"
        out = []
        for j, (m, c) in enumerate(self.sorted_terms(order)):
            word = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            neg, text = render_coefficient(c, word)
            out.append(("-" if neg else "") + text if j == 0 else (" - " if neg else " + ") + text)
        return "".join(out)

    def __repr__(self):
        return f"Poly({self.render()!r})"

    __str__ = render


def parse_poly(src: str, variables: Iterable[str]) -> Poly:
    """Parse a commutative polynomial over the given variable names."""
    from .parsing import Add, Div, Mul, Neg, Num, Pow, Sym, evaluate_scalar, parse, RESERVED, ParseError

    names = set(variables)

    def ev(a) -> Poly:
        if isinstance(a, Num):
            return Poly.const(a.value)
        if isinstance(a, Sym):
            if a.name in names:
                return Poly.var(a.name)
            return Poly.const(evaluate_scalar(a))
        if isinstance(a, Neg):
            return -ev(a.arg)
        if isinstance(a, Add):
            out = Poly()
            for t in a.terms:
                out = out + ev(t)
            return out
        if isinstance(a, Mul):
            out = Poly.const(1)
            for f in a.factors:
                out = out * ev(f)
            return out
        if isinstance(a, Div):
            den = ev(a.den)
            if not den.is_constant() or not den.constant():
                raise ParseError("can only divide by a nonzero scalar")
            return ev(a.num) / den.constant()
        if isinstance(a, Pow):
            if a.exp < 0:
                base = ev(a.base)
                if not base.is_constant():
                    raise ParseError("negative powers of variables are not polynomial")
                return Poly.const(base.constant() ** a.exp)
            return ev(a.base) ** a.exp
        raise TypeError(a)

    return ev(parse(src, names))


def exp_series(arg: Poly, order: int) -> Poly:
    """sum_{k <= order} arg^k / k!"""
    out, term = Poly.const(1), Poly.const(1)
    for k in range(1, order + 1):
        term = term * arg * Scalar(Fraction(1, k))
        out = out + term
    return out


def cos_series(arg: Poly, order: int) -> Poly:
    out, term = Poly.const(1), Poly.const(1)
    for k in range(2, order + 1, 2):
        term = -(term * arg * arg) * Scalar(Fraction(1, k * (k - 1)))
        out = out + term
    return out


def sin_series(arg: Poly, order: int) -> Poly:
    if order < 1:
        return Poly()
    out = term = arg
    for k in range(3, order + 1, 2):
        term = -(term * arg * arg) * Scalar(Fraction(1, k * (k - 1)))
        out = out + term
    return out


def truncate(p: Poly, variables: Sequence[str], degree: int) -> Poly:
    """Drop terms whose total degree in ``variables`` exceeds ``degree``."""
    vs = set(variables)
    return Poly._wrap({m: c for m, c in p.terms.items()
                       if sum(e for v, e in m if v in vs) <= degree})
