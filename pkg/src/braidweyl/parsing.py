"""Expression syntax shared by the CLI and the JSON table format.

Grammar (``^`` binds tightest, unary minus binds tighter than ``*``/``/``)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | '+' unary | power
    power := atom ('^' ['-'] INT)?
    atom  := INT | NAME | '(' expr ')'

``q``, ``h`` and ``i`` are reserved scalar symbols; every other name must be
a generator (or alias) of the alphabet in use.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

from .scalars import ONE, Scalar, _fmt_term, render_scalar

__all__ = [
    "ParseError",
    "Num",
    "Sym",
    "Add",
    "Neg",
    "Mul",
    "Div",
    "Pow",
    "parse",
    "parse_scalar",
    "to_source",
    "evaluate_scalar",
    "evaluate",
    "render_scalar_exact",
    "render_coefficient",
]

RESERVED = ("q", "h", "i")


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int = -1):
        self.pos = pos
        super().__init__(f"{msg} at position {pos}" if pos >= 0 else msg)


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Add:
    terms: Tuple


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Mul:
    factors: Tuple


@dataclass(frozen=True)
class Div:
    num: object
    den: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


AST = Union[Num, Sym, Add, Neg, Mul, Div, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(src: str):
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1):
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, names: Optional[Iterable[str]]):
        self.toks = _tokenize(src)
        self.k = 0
        self.names = None if names is None else set(names) | set(RESERVED)

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2])

    def expr(self):
        terms = [self.term()]
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            t = self.term()
            terms.append(Neg(t) if op == "-" else t)
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def term(self):
        factors = [self.unary()]
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                factors.append(rhs)
            else:
                left = factors[0] if len(factors) == 1 else Mul(tuple(factors))
                factors = [Div(left, rhs)]
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return Neg(self.unary())
        if t[0] == "op" and t[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            paren = False
            if self.peek()[1] == "(":
                self.take()
                paren = True
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "int":
                raise ParseError("exponent must be an integer", t[2])
            if paren:
                self.expect(")")
            return Pow(base, sign * int(t[1]))
        return base

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return Num(int(t[1]))
        if t[0] == "name":
            if self.names is not None and t[1] not in self.names:
                raise ParseError(f"unknown generator {t[1]!r}", t[2])
            return Sym(t[1])
        if t[1] == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {t[1] or 'end of input'!r}", t[2])


def parse(src: str, alphabet: Optional[Iterable[str]] = None) -> AST:
    """Parse ``src``; names outside ``alphabet`` (plus q, h, i) are rejected."""
    p = _Parser(src, alphabet)
    ast = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise ParseError(f"unexpected {t[1]!r}", t[2])
    return ast


# -- printing (inverse of parse) ------------------------------------------------

def _atomic(a) -> bool:
    return isinstance(a, (Num, Sym))


def to_source(a: AST) -> str:
    if isinstance(a, Num):
        return str(a.value)
    if isinstance(a, Sym):
        return a.name
    if isinstance(a, Pow):
        base = to_source(a.base) if _atomic(a.base) else f"({to_source(a.base)})"
        return f"{base}^{a.exp}"
    if isinstance(a, Neg):
        inner = a.arg
        if isinstance(inner, (Add, Mul, Div)):
            return f"-({to_source(inner)})"
        return "-" + to_source(inner)
    if isinstance(a, Mul):
        parts = []
        for j, f in enumerate(a.factors):
            if isinstance(f, (Add, Mul)) or (isinstance(f, Div) and j > 0):
                parts.append(f"({to_source(f)})")
            else:
                parts.append(to_source(f))
        return "*".join(parts)
    if isinstance(a, Div):
        left = f"({to_source(a.num)})" if isinstance(a.num, Add) else to_source(a.num)
        right = to_source(a.den) if isinstance(a.den, (Num, Sym, Pow)) else f"({to_source(a.den)})"
        return f"{left}/{right}"
    if isinstance(a, Add):
        out = []
        for j, t in enumerate(a.terms):
            if j > 0 and isinstance(t, Neg):
                body = t.arg
                text = f"({to_source(body)})" if isinstance(body, Add) else to_source(body)
                out.append(" - " + text)
            else:
                text = f"({to_source(t)})" if isinstance(t, Add) else to_source(t)
                out.append((" + " if j > 0 else "") + text)
        return "".join(out)
    raise TypeError(a)


# -- evaluation ------------------------------------------------------------------

def evaluate_scalar(a: AST) -> Scalar:
    if isinstance(a, Num):
        return Scalar(a.value)
    if isinstance(a, Sym):
        if a.name not in RESERVED:
            raise ParseError(f"{a.name!r} is not a scalar symbol")
        return Scalar.var(a.name)
    if isinstance(a, Neg):
        return -evaluate_scalar(a.arg)
    if isinstance(a, Add):
        out = Scalar(0)
        for t in a.terms:
            out = out + evaluate_scalar(t)
        return out
    if isinstance(a, Mul):
        out = ONE
        for f in a.factors:
            out = out * evaluate_scalar(f)
        return out
    if isinstance(a, Div):
        den = evaluate_scalar(a.den)
        if den.is_zero():
            raise ParseError("division by zero")
        return evaluate_scalar(a.num) / den
    if isinstance(a, Pow):
        return evaluate_scalar(a.base) ** a.exp
    raise TypeError(a)


def parse_scalar(src: str) -> Scalar:
    return evaluate_scalar(parse(src, ()))


def _is_scalar_ast(a) -> bool:
    if isinstance(a, Num):
        return True
    if isinstance(a, Sym):
        return a.name in RESERVED
    if isinstance(a, (Neg,)):
        return _is_scalar_ast(a.arg)
    if isinstance(a, Pow):
        return _is_scalar_ast(a.base)
    if isinstance(a, Add):
        return all(_is_scalar_ast(t) for t in a.terms)
    if isinstance(a, Mul):
        return all(_is_scalar_ast(t) for t in a.factors)
    if isinstance(a, Div):
        return _is_scalar_ast(a.num) and _is_scalar_ast(a.den)
    return False


def evaluate(a: AST, table=None, aliases=None):
    """Evaluate to a free-algebra :class:`~braidweyl.pbw.Element` (unreduced)."""
    from .pbw import Element

    aliases = dict(aliases or {})
    if table is not None:
        aliases = {**table.aliases, **aliases}

    def ev(x):
        if _is_scalar_ast(x):
            return Element.scalar(evaluate_scalar(x))
        if isinstance(x, Sym):
            if x.name in aliases:
                return aliases[x.name]
            if table is not None and x.name not in table.rank:
                raise ParseError(f"unknown generator {x.name!r}")
            return Element.word(x.name)
        if isinstance(x, Neg):
            return -ev(x.arg)
        if isinstance(x, Add):
            out = Element.zero()
            for t in x.terms:
                out = out + ev(t)
            return out
        if isinstance(x, Mul):
            out = Element.one()
            for f in x.factors:
                out = out * ev(f)
            return out
        if isinstance(x, Div):
            if not _is_scalar_ast(x.den):
                raise ParseError("can only divide by a scalar")
            den = evaluate_scalar(x.den)
            if den.is_zero():
                raise ParseError("division by zero")
            return ev(x.num).scale(den.inverse())
        if isinstance(x, Pow):
            if x.exp < 0:
                raise ParseError("negative powers of generators are not defined")
            return ev(x.base) ** x.exp
        raise TypeError(x)

    return ev(a)


# -- coefficient rendering --------------------------------------------------------

def render_scalar_exact(c: Scalar) -> str:
    return render_scalar(c)


def render_coefficient(c: Scalar, word: str) -> Tuple[bool, str]:
    """Render ``c * word`` as (negative?, text) for joining into a sum."""
    num = c.num_terms()
    if c.is_laurent() and len(num) == 1:
        (m, v), = num.items()
        neg, text = _fmt_term(m, v)
        if not word:
            body, _, den = text.rpartition("/")
            if body and not body.isdigit():
                # h^2/4 -> (1/4)*h^2, matching the (p/d)*word style of other terms
                num_, star, head = body.partition("*")
                if not (star and num_.isdigit()):
                    num_, head = "1", body
                return neg, f"({num_}/{den})*{head}"
            return neg, text
        if text == "1":
            return neg, word
        if "/" in text or " " in text:
            return neg, f"({text})*{word}"
        return neg, f"{text}*{word}"
    text = render_scalar(c)
    neg = False
    if c.is_laurent() and text.startswith("-"):
        neg, text = True, render_scalar(-c)
    if not word:
        # a negated multi-term constant needs its own parentheses
        return neg, (f"({text})" if neg and c.is_laurent() else text)
    return neg, f"({text})*{word}"
