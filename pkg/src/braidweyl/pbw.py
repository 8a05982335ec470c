"""Words, elements and relation-table driven normal ordering.

An algebra is presented by a :class:`RelationTable`: an ordered alphabet and
one oriented rule ``u v -> rhs`` for every pair of letters with ``u`` ranked
after ``v``.  Normal words are the words whose letters are non-decreasing in
rank, so coordinates (ranked first) end up on the left and derivatives on the
right.

Normal ordering works letter by letter from the right: ``insert(a, s)``
computes the normal form of ``a * s`` for a normal word ``s`` and is memoized
per table, which makes repeated products (powers of the Casimir, operator
grids) cheap.
"""
from __future__ import annotations

import itertools
import json
import sys
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, Scalar

__all__ = [
    "Generator",
    "Element",
    "RewriteRule",
    "RelationTable",
    "TableError",
    "RewriteBudgetExceeded",
    "OrientationError",
    "normal_form",
    "multiply",
    "check_local_confluence",
]

Word = Tuple[str, ...]

SORTS = ("coordinate", "derivative", "form")


class TableError(ValueError):
    pass


class RewriteBudgetExceeded(RuntimeError):
    def __init__(self, detail: str = ""):
        super().__init__("rewrite budget exceeded" + (f": {detail}" if detail else ""))


class OrientationError(TableError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    sort: str = "coordinate"
    rank: int = 0
    counit: Scalar = ZERO  # value on the unit; nonzero only for shifted derivatives

    def __post_init__(self):
        if self.sort not in SORTS:
            raise ValueError(f"bad sort {self.sort!r}")


class Element:
    """Finite linear combination of words with :class:`Scalar` coefficients.

    ``*`` between elements is the free (concatenation) product; use
    :func:`multiply` or :meth:`RelationTable.normal_form` to reduce.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Word, Scalar]] = None):
        self.terms: Dict[Word, Scalar] = {}
        if terms:
            for w, c in terms.items():
                c = Scalar._lift(c)
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def _wrap(cls, terms: Dict[Word, Scalar]) -> "Element":
        e = object.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def word(cls, *letters: str) -> "Element":
        return cls._wrap({tuple(letters): ONE})

    @classmethod
    def scalar(cls, c) -> "Element":
        c = Scalar._lift(c)
        return cls._wrap({(): c} if c else {})

    @classmethod
    def zero(cls) -> "Element":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "Element":
        return cls._wrap({(): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coefficient(self, word: Sequence[str]) -> Scalar:
        return self.terms.get(tuple(word), ZERO)

    def letters(self) -> set:
        return {a for w in self.terms for a in w}

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "Element":
        return Element._wrap({w: c for w, c in self.terms.items() if len(w) == d})

    def map_coefficients(self, f) -> "Element":
        out = {}
        for w, c in self.terms.items():
            c2 = f(c)
            if c2:
                out[w] = c2
        return Element._wrap(out)

    def substitute_letters(self, images: Mapping[str, "Element"]) -> "Element":
        """Free-algebra substitution of letters by elements (no reduction)."""
        out = Element.zero()
        for w, c in self.terms.items():
            prod = Element.scalar(c)
            for a in w:
                prod = prod * images.get(a, Element.word(a))
            out = out + prod
        return out

    # -- linear structure ----------------------------------------------------
    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            other = Element.scalar(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, ONE)
        return Element._wrap(out)

    __radd__ = __add__

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            other = Element.scalar(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, -ONE)
        return Element._wrap(out)

    def __rsub__(self, other):
        return Element.scalar(other) - self

    def __neg__(self):
        return Element._wrap({w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "Element":
        c = Scalar._lift(c)
        if not c:
            return Element.zero()
        return Element._wrap({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            out: Dict[Word, Scalar] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    prev = out.get(w)
                    if prev is None:
                        out[w] = c
                    else:
                        s = prev + c
                        if s:
                            out[w] = s
                        else:
                            del out[w]
            return Element._wrap(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "Element":
        out = Element.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            try:
                other = Element.scalar(other)
            except Exception:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Element({render_element(self)!r})"

    def __str__(self):
        return render_element(self)


def _accumulate(out: Dict[Word, Scalar], terms: Mapping[Word, Scalar], factor: Scalar) -> None:
    for w, c in terms.items():
        if factor is not ONE:
            c = c * factor
        prev = out.get(w)
        if prev is None:
            out[w] = c
        else:
            s = prev + c
            if s:
                out[w] = s
            else:
                del out[w]


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Element

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        if not 1 <= len(self.lhs) <= 2:
            raise TableError(f"rule lhs must have length 1 or 2, got {self.lhs}")


class RelationTable:
    """Immutable presentation of an algebra by oriented quadratic(-linear) rules.

    ``weights`` (default 1 per letter) enter the termination order as a
    weighted degree between the total degree and the lexicographic tiebreak;
    braided derivative relations need them (see :func:`termination_key`).
    """

    def __init__(
        self,
        alphabet: Sequence[Generator],
        rules: Iterable[RewriteRule],
        parameters: Iterable[str] = (),
        name: str = "",
        weights: Optional[Mapping[str, int]] = None,
        aliases: Optional[Mapping[str, Element]] = None,
        check: bool = True,
        step_budget: int = 2_000_000,
    ):
        gens = sorted(alphabet, key=lambda g: g.rank)
        ranks = [g.rank for g in gens]
        if len(set(ranks)) != len(ranks):
            raise TableError("generator ranks must be unique")
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise TableError("generator names must be unique")
        self.alphabet: Tuple[Generator, ...] = tuple(gens)
        self.rank: Dict[str, int] = {g.name: i for i, g in enumerate(gens)}
        self.by_name: Dict[str, Generator] = {g.name: g for g in gens}
        self.name = name
        self.parameters = frozenset(parameters)
        self.weights: Dict[str, int] = {g.name: 1 for g in gens}
        if weights:
            self.weights.update(weights)
        self.aliases: Dict[str, Element] = dict(aliases or {})
        self.step_budget = step_budget
        self.rules: Tuple[RewriteRule, ...] = tuple(rules)
        self._rule_map: Dict[Word, Element] = {}
        for r in self.rules:
            for a in r.lhs:
                if a not in self.rank:
                    raise TableError(f"rule {r.lhs} uses unknown generator {a!r}")
            if r.lhs in self._rule_map:
                raise TableError(f"duplicate rule for {''.join(r.lhs)}")
            self._rule_map[r.lhs] = r.rhs
        self._memo: Dict[Tuple[str, Word], Dict[Word, Scalar]] = {}
        self._in_progress: set = set()
        self._steps = 0
        if check:
            self.check_complete()

    # -- structure -------------------------------------------------------------
    @property
    def names(self) -> List[str]:
        return [g.name for g in self.alphabet]

    def gens_of_sort(self, sort: str) -> List[str]:
        return [g.name for g in self.alphabet if g.sort == sort]

    def is_normal(self, word: Sequence[str]) -> bool:
        r = self.rank
        return all(r[a] <= r[b] for a, b in zip(word, word[1:]))

    def is_inversion(self, a: str, b: str) -> bool:
        return self.rank[a] > self.rank[b]

    def rule(self, a: str, b: str) -> Optional[Element]:
        return self._rule_map.get((a, b))

    def inversion_pairs(self) -> List[Word]:
        n = self.names
        return [(a, b) for a in n for b in n if self.rank[a] > self.rank[b]]

    def check_complete(self) -> None:
        for r in self.rules:
            if len(r.lhs) == 2 and not self.is_inversion(*r.lhs):
                raise TableError(f"rule lhs {' '.join(r.lhs)} is already normal")
        missing = [p for p in self.inversion_pairs() if p not in self._rule_map]
        if missing:
            raise TableError("no rule for inversion pair(s): "
                             + ", ".join(" ".join(p) for p in missing))

    def termination_key(self, word: Sequence[str]):
        """Key of the termination order: derivative-before-coordinate inversions,
        length, weighted degree, then rank-lexicographic."""
        sort = self.by_name
        inv = 0
        seen_deriv = 0
        for a in word:
            s = sort[a].sort
            if s == "derivative":
                seen_deriv += 1
            elif s == "coordinate":
                inv += seen_deriv
        w = sum(self.weights[a] for a in word)
        return (inv, len(word), w, tuple(self.rank[a] for a in word))

    def check_orientation(self) -> None:
        """Raise :class:`OrientationError` naming the first rule that does not
        strictly decrease the termination order."""
        for r in self.rules:
            top = self.termination_key(r.lhs)
            for w in r.rhs.terms:
                if not self.termination_key(w) < top:
                    raise OrientationError(
                        f"rule {' '.join(r.lhs)} -> ... {' '.join(w) or '1'} does not decrease "
                        f"the termination order")

    # -- normal ordering ---------------------------------------------------------
    def _insert(self, a: str, s: Word) -> Dict[Word, Scalar]:
        key = (a, s)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not s or self.rank[a] <= self.rank[s[0]]:
            res = {(a,) + s: ONE}
        else:
            rhs = self._rule_map.get((a, s[0]))
            if rhs is None:
                raise TableError(f"no rule for {a} {s[0]}")
            if key in self._in_progress:
                raise RewriteBudgetExceeded(f"cycle through {a} {' '.join(s)}")
            self._steps += 1
            if self._steps > self.step_budget:
                raise RewriteBudgetExceeded(f"more than {self.step_budget} rule applications")
            self._in_progress.add(key)
            try:
                res = {}
                rest = s[1:]
                for u, c in rhs.terms.items():
                    _accumulate(res, self._nf_prefixed(u, rest), c)
            finally:
                self._in_progress.discard(key)
        self._memo[key] = res
        return res

    def _nf_prefixed(self, u: Word, rest: Word) -> Dict[Word, Scalar]:
        """Normal form of ``u * rest`` where ``rest`` is a normal word."""
        cur: Dict[Word, Scalar] = {rest: ONE}
        for a in reversed(u):
            nxt: Dict[Word, Scalar] = {}
            for w, c in cur.items():
                _accumulate(nxt, self._insert(a, w), c)
            cur = nxt
        return cur

    def normal_form(self, e: Element) -> Element:
        unknown = e.letters() - set(self.rank)
        if unknown:
            raise TableError(f"generator(s) not in alphabet: {sorted(unknown)}")
        self._steps = 0
        limit = sys.getrecursionlimit()
        if limit < 20000:
            sys.setrecursionlimit(20000)
        out: Dict[Word, Scalar] = {}
        try:
            for w, c in e.terms.items():
                if self.is_normal(w):
                    _accumulate(out, {w: c}, ONE)
                else:
                    _accumulate(out, self._nf_prefixed(w, ()), c)
        except RecursionError:
            raise RewriteBudgetExceeded("recursion limit") from None
        return Element._wrap(out)

    def multiply(self, *factors: Element) -> Element:
        out = Element.one()
        for f in factors:
            out = self.normal_form(out * f)
        return out

    def reduce_at(self, word: Word, pos: int) -> Element:
        """One rewrite step at position ``pos`` (no further reduction)."""
        rhs = self._rule_map[(word[pos], word[pos + 1])]
        return Element.word(*word[:pos]) * rhs * Element.word(*word[pos + 2:])

    # -- rendering helpers ---------------------------------------------------
    def sort_key(self, word: Sequence[str]):
        return (len(word), tuple(self.rank[a] for a in word))

    def render(self, e: Element) -> str:
        return render_element(e, self)

    # -- derived tables --------------------------------------------------------
    def map_coefficients(self, f, name: Optional[str] = None, parameters=None) -> "RelationTable":
        rules = [RewriteRule(r.lhs, r.rhs.map_coefficients(f)) for r in self.rules]
        return RelationTable(self.alphabet, rules,
                             self.parameters if parameters is None else parameters,
                             name=name or self.name, weights=self.weights,
                             aliases={k: v.map_coefficients(f) for k, v in self.aliases.items()})

    def with_rules(self, rules: Iterable[RewriteRule], name: Optional[str] = None,
                   check: bool = True) -> "RelationTable":
        return RelationTable(self.alphabet, rules, self.parameters, name=name or self.name,
                             weights=self.weights, aliases=self.aliases, check=check)

    def restricted(self, names: Iterable[str], name: Optional[str] = None) -> "RelationTable":
        """Sub-table on a subset of letters closed under the rules (no aliases)."""
        keep = set(names)
        rules = [r for r in self.rules if set(r.lhs) <= keep]
        for r in rules:
            if r.rhs.letters() - keep:
                raise TableError(f"rule {' '.join(r.lhs)} leaves the letter subset")
        return RelationTable([g for g in self.alphabet if g.name in keep], rules, self.parameters,
                             name=name or self.name, weights={k: v for k, v in self.weights.items()
                                                             if k in keep})

    def same_relations(self, other: "RelationTable") -> bool:
        if self.names != other.names:
            return False
        return self._rule_map == other._rule_map

    # -- serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        from .parsing import render_scalar_exact

        def enc(e: Element):
            return [{"word": list(w), "coeff": render_scalar_exact(c)}
                    for w, c in sorted(e.terms.items(), key=lambda t: self.sort_key(t[0]),
                                       reverse=True)]

        doc = {
            "name": self.name,
            "parameters": sorted(self.parameters),
            "alphabet": [{"name": g.name, "sort": g.sort,
                          **({"counit": render_scalar_exact(g.counit)} if g.counit else {})}
                         for g in self.alphabet],
            "weights": {k: v for k, v in self.weights.items() if v != 1},
            "rules": [{"lhs": list(r.lhs), "rhs": enc(r.rhs)} for r in self.rules],
        }
        if self.aliases:
            doc["aliases"] = {k: enc(v) for k, v in self.aliases.items()}
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, ensure_ascii=True) + "\n"

    @classmethod
    def from_json(cls, doc: dict) -> "RelationTable":
        from .parsing import parse_scalar

        def dec(items) -> Element:
            return Element({tuple(t["word"]): parse_scalar(t["coeff"]) for t in items})

        gens = []
        for k, g in enumerate(doc["alphabet"]):
            if isinstance(g, str):
                g = {"name": g}
            gens.append(Generator(g["name"], g.get("sort", "coordinate"), k,
                                  parse_scalar(g["counit"]) if "counit" in g else ZERO))
        rules = [RewriteRule(tuple(r["lhs"]), dec(r["rhs"])) for r in doc["rules"]]
        return cls(gens, rules, doc.get("parameters", ()), name=doc.get("name", ""),
                   weights=doc.get("weights"),
                   aliases={k: dec(v) for k, v in doc.get("aliases", {}).items()})

    @classmethod
    def loads(cls, text: str) -> "RelationTable":
        return cls.from_json(json.loads(text))

    def __repr__(self):
        return f"RelationTable({self.name!r}, {len(self.alphabet)} generators, {len(self.rules)} rules)"


def normal_form(e: Element, table: RelationTable) -> Element:
    return table.normal_form(e)


def multiply(e1: Element, e2: Element, table: RelationTable) -> Element:
    return table.normal_form(e1 * e2)


def check_local_confluence(table: RelationTable, max_degree: int = 3) -> List[dict]:
    """Reduce every word of length <= ``max_degree`` starting from each
    reducible position; report words whose results disagree."""
    if max_degree < 3:
        raise ValueError("max_degree must be >= 3")
    reports = []
    names = table.names
    for n in range(3, max_degree + 1):
        for word in itertools.product(names, repeat=n):
            positions = [p for p in range(n - 1) if table.is_inversion(word[p], word[p + 1])]
            if len(positions) < 2:
                continue
            results = []
            for p in positions:
                results.append((p, table.normal_form(table.reduce_at(word, p))))
            p0, ref = results[0]
            for p, res in results[1:]:
                if res != ref:
                    reports.append({"word": " ".join(word), "positions": (p0, p),
                                    "difference": table.render(ref - res)})
                    break
    return reports


# -- rendering ----------------------------------------------------------------

def render_word(word: Sequence[str]) -> str:
    if not word:
        return "1"
    parts = []
    for a, grp in itertools.groupby(word):
        k = len(list(grp))
        parts.append(a if k == 1 else f"{a}^{k}")
    return "*".join(parts)


def render_element(e: Element, table: Optional[RelationTable] = None) -> str:
    from .parsing import render_coefficient

    if not e.terms:
        return "0"
    if table is not None:
        order = sorted(e.terms, key=table.sort_key, reverse=True)
    else:
        order = sorted(e.terms, key=lambda w: (len(w), w), reverse=True)
    out = []
    for j, w in enumerate(order):
        neg, text = render_coefficient(e.terms[w], render_word(w) if w else "")
        if j == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)
