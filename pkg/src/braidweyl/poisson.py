"""Semiclassical Poisson brackets read off the quantum relation tables.

A bracket {u, v} is the first Taylor coefficient (in h at 0, or in q at 1) of
the commutative image of ``normal_form(u v - v u)``, with derivative letters
renamed to momenta.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from .calculus import element_to_poly
from .pbw import Element, RelationTable
from .poly import Poly, parse_poly
from .scalars import ONE, Scalar, series_coefficient

__all__ = [
    "PoissonTable",
    "momentum_name",
    "extract_bracket",
    "extract_table",
    "jacobi_residuals",
    "compatibility_check",
    "darboux_table",
    "bracket1_table",
    "bracket2_table",
    "bracket2_conventions",
    "bracket2_compact",
    "change_coordinates",
    "COMPACT_GENERATORS",
    "GL2_NEW_COORDS",
]

COMPACT_GENERATORS = ("t", "x", "y", "z", "p_t", "p_x", "p_y", "p_z")


def momentum_name(letter: str) -> str:
    """dtt -> p_t, dx -> p_x, da -> p_a."""
    if letter == "dtt":
        return "p_t"
    return "p_" + letter[1:]


class PoissonTable:
    """Brackets of generator pairs; {v, u} = -{u, v} is implied."""

    def __init__(self, generators: Sequence[str], brackets: Mapping[Tuple[str, str], Poly],
                 name: str = ""):
        self.generators = tuple(generators)
        self.name = name
        pos = {g: k for k, g in enumerate(self.generators)}
        self._b: Dict[Tuple[str, str], Poly] = {}
        for (u, v), p in brackets.items():
            if u == v:
                if p:
                    raise ValueError(f"{{{u},{u}}} must vanish")
                continue
            if pos[u] > pos[v]:
                u, v, p = v, u, -p
            if (u, v) in self._b and self._b[(u, v)] != p:
                raise ValueError(f"conflicting entries for {{{u},{v}}}")
            if p:
                self._b[(u, v)] = p

    def bracket(self, u: str, v: str) -> Poly:
        if u == v:
            return Poly()
        if (u, v) in self._b:
            return self._b[(u, v)]
        if (v, u) in self._b:
            return -self._b[(v, u)]
        return Poly()

    def apply(self, f: Poly, g: Poly) -> Poly:
        """{f, g} for polynomials by the Leibniz rule in both slots."""
        out = Poly()
        dfs = {u: f.diff(u) for u in self.generators}
        dgs = {v: g.diff(v) for v in self.generators}
        for (u, v), b in self._b.items():
            if dfs[u] and dgs[v]:
                out = out + dfs[u] * dgs[v] * b
            if dfs[v] and dgs[u]:
                out = out - dfs[v] * dgs[u] * b
        return out

    def entries(self) -> Dict[Tuple[str, str], Poly]:
        return dict(self._b)

    def __add__(self, other: "PoissonTable") -> "PoissonTable":
        if set(self.generators) != set(other.generators):
            raise ValueError("generator sets differ")
        out = dict(self._b)
        for (u, v), p in other._b.items():
            out[(u, v)] = out.get((u, v), Poly()) + p
        return PoissonTable(self.generators, out, name=f"{self.name}+{other.name}")

    def scale(self, c) -> "PoissonTable":
        return PoissonTable(self.generators, {k: v * c for k, v in self._b.items()}, self.name)

    def map_polys(self, f) -> "PoissonTable":
        return PoissonTable(self.generators, {k: f(v) for k, v in self._b.items()}, self.name)

    def __eq__(self, other):
        return isinstance(other, PoissonTable) and set(self.generators) == set(other.generators) \
            and all(self.bracket(u, v) == other.bracket(u, v)
                    for u, v in itertools.combinations(self.generators, 2))

    def render(self) -> str:
        lines = []
        for u, v in itertools.combinations(self.generators, 2):
            b = self.bracket(u, v)
            if b:
                lines.append(f"{{{u}, {v}}} = {b.render(self.generators)}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"name": self.name, "generators": list(self.generators),
                "brackets": [{"pair": [u, v], "value": self.bracket(u, v).render(self.generators)}
                             for u, v in itertools.combinations(self.generators, 2)
                             if self.bracket(u, v)]}


# -- extraction ---------------------------------------------------------------------

SCHEMES = {"hbar-linear": ("h", 0), "q-linear": ("q", 1)}


def _as_element(u: Union[str, Element]) -> Element:
    return Element.word(u) if isinstance(u, str) else u


def extract_bracket(table: RelationTable, scheme: str, u, v) -> Poly:
    """First-order coefficient of the commutative image of [u, v]."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    var, center = SCHEMES[scheme]
    U, V = _as_element(u), _as_element(v)
    comm = table.normal_form(U * V - V * U)
    rename = {g: momentum_name(g) for g in table.gens_of_sort("derivative")}
    image = element_to_poly(comm, rename)
    return image.map_coefficients(lambda c: series_coefficient(c, var, center, 1))


def extract_table(table: RelationTable, scheme: str, name: str = "") -> PoissonTable:
    names = table.names
    gens = [momentum_name(a) if table.by_name[a].sort == "derivative" else a for a in names]
    out = {}
    for (i, a), (j, b) in itertools.combinations(enumerate(names), 2):
        out[(gens[i], gens[j])] = extract_bracket(table, scheme, a, b)
    return PoissonTable(gens, out, name=name or f"{scheme}({table.name})")


def jacobi_residuals(pt: PoissonTable) -> List[Tuple[Tuple[str, str, str], Poly]]:
    """Nonzero cyclic sums {u,{v,w}} + {v,{w,u}} + {w,{u,v}} over generator triples."""
    out = []
    for u, v, w in itertools.combinations(pt.generators, 3):
        U, V, Wp = Poly.var(u), Poly.var(v), Poly.var(w)
        r = (pt.apply(U, pt.bracket(v, w)) + pt.apply(V, pt.bracket(w, u))
             + pt.apply(Wp, pt.bracket(u, v)))
        if r:
            out.append(((u, v, w), r))
    return out


def compatibility_check(p1: PoissonTable, p2: PoissonTable) -> bool:
    return not jacobi_residuals(p1 + p2)


def change_coordinates(pt: PoissonTable, new: Mapping[str, Poly], old_in_new: Mapping[str, Poly],
                       name: str = "") -> PoissonTable:
    """Brackets of new coordinates (given as polynomials in the old ones),
    re-expressed in the new coordinates."""
    gens = list(new)
    out = {}
    for a, b in itertools.combinations(gens, 2):
        out[(a, b)] = pt.apply(new[a], new[b]).subs(old_in_new)
    return PoissonTable(gens, out, name=name or pt.name)


# -- the three brackets of the pencil ----------------------------------------------------

def darboux_table() -> PoissonTable:
    """{p_v, v} = 1 for v in t, x, y, z."""
    return PoissonTable(COMPACT_GENERATORS,
                        {(f"p_{v}", v): Poly.const(1) for v in "txyz"}, name="bracket0")


def bracket1_table(table: RelationTable) -> PoissonTable:
    """h-linear part of the compact Weyl table with the shifted time derivative."""
    return extract_table(table, "hbar-linear", name="bracket1")


V = Poly.var
HALF = Scalar(Fraction(1, 2))

# l = a + d (L), h = a - d (H); momentum normalization p_L = (p_a + p_d)/2
GL2_NEW_COORDS = ("L", "H", "b", "c", "pL", "pH", "pb", "pc")


def _new_coords(momentum_scale: Scalar):
    """New coordinates as polynomials in the old ones, and the inverse map.

    ``momentum_scale`` = 1/2 gives p_L = (p_a + p_d)/2, the dual basis of
    L, H; 1 gives p_L = p_a + p_d.
    """
    ms = Scalar._lift(momentum_scale)
    new = {
        "L": V("a") + V("d"), "H": V("a") - V("d"), "b": V("b"), "c": V("c"),
        "pL": (V("p_a") + V("p_d")) * ms, "pH": (V("p_a") - V("p_d")) * ms,
        "pb": V("p_b"), "pc": V("p_c"),
    }
    inv = ms.inverse() * HALF
    old = {
        "a": (V("L") + V("H")) * HALF, "d": (V("L") - V("H")) * HALF,
        "p_a": (V("pL") + V("pH")) * inv, "p_d": (V("pL") - V("pH")) * inv,
        "p_b": V("pb"), "p_c": V("pc"),
    }
    return new, old


def bracket2_table(table: RelationTable, momentum_scale=HALF, scale=1) -> PoissonTable:
    """q-linear bracket of a 2x2 Weyl table in the coordinates L, H, b, c and momenta."""
    raw = extract_table(table, "q-linear")
    new, old = _new_coords(momentum_scale)
    return change_coordinates(raw, new, old, name="bracket2").scale(scale)


def bracket2_compact(table: RelationTable) -> PoissonTable:
    """q-linear bracket of a 2x2 Weyl table moved to t, x, y, z and their momenta
    by the complex change of basis (momenta transform like derivatives)."""
    from .hecke import _compact_images, _new_in_old

    rename = {d: momentum_name(d) for d in ("da", "db", "dc", "dd", "dt", "dx", "dy", "dz")}
    new = {rename.get(k, k): element_to_poly(v, rename)
           for k, v in _new_in_old(False).items()}
    old = {rename.get(k, k): element_to_poly(v, rename)
           for k, v in _compact_images(False).items()}
    pt = change_coordinates(extract_table(table, "q-linear"), new, old, name="bracket2")
    return PoissonTable(COMPACT_GENERATORS, pt.entries(), name="bracket2")


CONVENTION_SCALES = (1, -1, 2, Fraction(1, 2))


def _drop_constant(p: Poly) -> Poly:
    return p - Poly.const(p.constant())


def bracket2_conventions(tables: Mapping[str, RelationTable], printed: Mapping[Tuple[str, str], str]
                         ) -> List[Dict]:
    """Per-entry agreement of the printed mixed entries under each convention.

    A convention fixes the source table, the momentum normalization, a global
    scale, and whether constant terms are compared or dropped on both sides.
    Nothing is rescaled to force agreement; the caller reads the counts.
    """
    ref = {k: parse_poly(v, GL2_NEW_COORDS) for k, v in printed.items()}
    report = []
    for tname, table in tables.items():
        for mlabel, ms in (("p_L=(p_a+p_d)/2", HALF), ("p_L=p_a+p_d", ONE)):
            base = bracket2_table(table, ms)
            for scale in CONVENTION_SCALES:
                pt = base.scale(Scalar._lift(scale))
                for drop in (False, True):
                    rows = []
                    for (u, v), want in ref.items():
                        got = pt.bracket(u, v)
                        if drop:
                            got, want = _drop_constant(got), _drop_constant(want)
                        rows.append({"pair": [u, v], "printed": want.render(GL2_NEW_COORDS),
                                     "extracted": got.render(GL2_NEW_COORDS),
                                     "agree": got == want})
                    report.append({
                        "source": tname, "momenta": mlabel, "scale": str(scale),
                        "constants": "dropped" if drop else "compared",
                        "agree": sum(r["agree"] for r in rows), "total": len(rows),
                        "entries": rows,
                    })
    report.sort(key=lambda r: -r["agree"])
    return report
