"""Braidings, their Yang-Baxter/Hecke checks, and generation of relation tables.

Every presentation is produced the same way: the matrix relation is expanded
into n^4 free-algebra components, the components are row-reduced with the
inversion words as pivot columns, and each pivot row becomes one rewrite rule
``inversion word -> normal words + lower terms``.  A pivot landing on a
normal word means the relations cut below PBW size and is reported.
"""
from __future__ import annotations

import itertools
import json
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .linalg import Decomposer, identity, is_zero_matrix, kron, mat_add, mat_inverse, mat_mul, rref
from .pbw import Element, Generator, OrientationError, RelationTable, RewriteRule, TableError
from .scalars import H, I, ONE, Q, ZERO, PoleError, Scalar, substitute

__all__ = [
    "BraidMatrix",
    "check_qybe",
    "check_hecke",
    "generate_relations",
    "table_from_relations",
    "change_basis_compact",
    "limit_q1",
    "KINDS",
    "coordinate_names",
    "derivative_names",
]

KINDS = ("RE", "mREA", "double-LM", "double-KM", "weyl-M", "weyl-N")


class BraidMatrix:
    """An n^2 x n^2 matrix R acting on V (x) V, rows/columns indexed by i*n + j.

    ``q`` is the parameter of the Hecke condition (R - q)(R + 1/q) = 0; it is
    the formal variable for deformations and 1 for the flip.
    """

    def __init__(self, dim: int, entries: Sequence[Sequence], q: Scalar = Q, name: str = ""):
        n2 = dim * dim
        rows = [[Scalar._lift(c) for c in row] for row in entries]
        if len(rows) != n2 or any(len(r) != n2 for r in rows):
            raise ValueError(f"expected a {n2}x{n2} matrix")
        self.dim = dim
        self.entries = rows
        self.q = q
        self.name = name
        self._checks: Dict[str, bool] = {}
        self._inverse = None

    @classmethod
    def standard(cls) -> "BraidMatrix":
        return load_braid_matrix("standard_r.json")

    @classmethod
    def flip(cls, dim: int = 2) -> "BraidMatrix":
        n2 = dim * dim
        P = [[ZERO] * n2 for _ in range(n2)]
        for i in range(dim):
            for j in range(dim):
                P[i * dim + j][j * dim + i] = ONE
        return cls(dim, P, q=ONE, name="flip")

    def inverse(self):
        if self._inverse is None:
            self._inverse = mat_inverse(self.entries)
        return self._inverse

    def to_json(self) -> dict:
        from .parsing import render_scalar_exact

        return {"dim": self.dim, "q": render_scalar_exact(self.q),
                "entries": [[render_scalar_exact(c) for c in row] for row in self.entries]}

    @classmethod
    def from_json(cls, doc: dict) -> "BraidMatrix":
        from .parsing import parse_scalar

        q = parse_scalar(doc["q"]) if "q" in doc else Q
        return cls(doc["dim"], [[parse_scalar(c) for c in row] for row in doc["entries"]],
                   q=q, name=doc.get("name", ""))

    def substitute(self, var: str, value) -> "BraidMatrix":
        ent = [[substitute(c, var, value) for c in row] for row in self.entries]
        q = substitute(self.q, var, value) if var == "q" else self.q
        return BraidMatrix(self.dim, ent, q=q, name=self.name)

    def with_entry(self, row: int, col: int, value) -> "BraidMatrix":
        ent = [list(r) for r in self.entries]
        ent[row][col] = Scalar._lift(value)
        return BraidMatrix(self.dim, ent, q=self.q, name=self.name + "*")


def load_braid_matrix(resource: str) -> BraidMatrix:
    text = resources.files("braidweyl.data").joinpath(resource).read_text()
    return BraidMatrix.from_json(json.loads(text))


def check_qybe(R: BraidMatrix) -> bool:
    """(R (x) I)(I (x) R)(R (x) I) == (I (x) R)(R (x) I)(I (x) R), exactly."""
    if "qybe" not in R._checks:
        Id = identity(R.dim)
        R12 = kron(R.entries, Id)
        R23 = kron(Id, R.entries)
        left = mat_mul(mat_mul(R12, R23), R12)
        right = mat_mul(mat_mul(R23, R12), R23)
        R._checks["qybe"] = left == right
    return R._checks["qybe"]


def check_hecke(R: BraidMatrix, q: Optional[Scalar] = None) -> bool:
    """(R - q I)(R + q^{-1} I) == 0 with ``q`` defaulting to the matrix's own parameter."""
    q = R.q if q is None else Scalar._lift(q)
    key = f"hecke:{q}"
    if key not in R._checks:
        Id = identity(len(R.entries))
        a = mat_add(R.entries, Id, -q)
        b = mat_add(R.entries, Id, q.inverse())
        R._checks[key] = is_zero_matrix(mat_mul(a, b))
    return R._checks[key]


# -- generator naming ------------------------------------------------------------

_LETTERS = "abcd"


def coordinate_names(dim: int, prefix: str = "") -> List[List[str]]:
    """Names of the entries of the generating matrix; a b / c d for dim 2."""
    if dim == 2:
        return [[prefix + _LETTERS[2 * i + j] for j in range(2)] for i in range(2)]
    return [[f"{prefix or 'm'}{i + 1}{j + 1}" for j in range(dim)] for i in range(dim)]


def derivative_names(dim: int) -> List[List[str]]:
    """Matrix of derivatives: entry (i, j) differentiates coordinate (j, i)."""
    coords = coordinate_names(dim)
    return [["d" + coords[j][i] for j in range(dim)] for i in range(dim)]


def _sym_matrix(names: List[List[str]]):
    return [[Element.word(a) for a in row] for row in names]


def _scalar_matrix(M):
    return [[Element.scalar(c) for c in row] for row in M]


def _emul(*mats):
    out = mats[0]
    for B in mats[1:]:
        n = len(out)
        p = len(B[0])
        m = len(B)
        res = []
        for i in range(n):
            row = []
            for k in range(p):
                acc = Element.zero()
                for j in range(m):
                    if out[i][j] and B[j][k]:
                        acc = acc + out[i][j] * B[j][k]
                row.append(acc)
            res.append(row)
        out = res
    return out


def _esub(A, B, b: Scalar = ONE):
    return [[x - y.scale(b) for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def _first_copy(X, dim: int):
    """X (x) I for a matrix of elements."""
    n2 = dim * dim
    out = [[Element.zero() for _ in range(n2)] for _ in range(n2)]
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                out[i * dim + k][j * dim + k] = X[i][j]
    return out


def _components(M) -> List[Element]:
    return [e for row in M for e in row if e]


def _re_relations(R, X, dim):
    """R X1 R X1 - X1 R X1 R."""
    X1 = _first_copy(X, dim)
    return _components(_esub(_emul(R, X1, R, X1), _emul(X1, R, X1, R)))


def _mrea_relations(R, X, dim, hbar: Scalar):
    X1 = _first_copy(X, dim)
    lhs = _esub(_emul(R, X1, R, X1), _emul(X1, R, X1, R))
    lin = _esub(_emul(R, X1), _emul(X1, R))
    return _components(_esub(lhs, lin, hbar))


def _alphabet(coord: List[str], deriv: List[str], counits: Optional[Mapping[str, Scalar]] = None):
    counits = counits or {}
    gens = [Generator(a, "coordinate", k) for k, a in enumerate(coord)]
    gens += [Generator(a, "derivative", len(coord) + k, counits.get(a, ZERO))
             for k, a in enumerate(deriv)]
    return gens


def generate_relations(R: BraidMatrix, kind: str, inhomogeneous: bool = True,
                       check: bool = True) -> RelationTable:
    """Relation table of the algebra ``kind`` built on the braiding ``R``.

    ``inhomogeneous=False`` drops the constant ``R`` term of the Weyl
    cross relations (the graded algebras used for Poisson brackets).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if check and not (check_qybe(R) and check_hecke(R)):
        raise TableError("R must satisfy the braid relation and the Hecke condition")
    dim = R.dim
    Rm = _scalar_matrix(R.entries)
    Ri = _scalar_matrix(R.inverse())
    Rs = R.entries
    coords = coordinate_names(dim)
    flat_coords = [a for row in coords for a in row]
    Mx = _sym_matrix(coords)
    hbar = H
    rels: List[Element] = []
    params = {"q"} if R.q != ONE else set()
    if kind == "RE":
        rels = _re_relations(Rm, Mx, dim)
        alphabet = _alphabet(flat_coords, [])
    elif kind == "mREA":
        rels = _mrea_relations(Rm, Mx, dim, hbar)
        alphabet = _alphabet(flat_coords, [])
        params.add("h")
    elif kind in ("double-LM", "double-KM"):
        prefix = "l" if kind == "double-LM" else "k"
        ops = coordinate_names(dim, prefix)
        Lx = _sym_matrix(ops)
        M1 = _first_copy(Mx, dim)
        L1 = _first_copy(Lx, dim)
        rels = _re_relations(Rm, Mx, dim)
        if kind == "double-LM":
            rels += _re_relations(Rm, Lx, dim)
            rels += _components(_esub(_emul(Rm, L1, Rm, M1), _emul(M1, Rm, L1, Ri)))
        else:
            rels += _mrea_relations(Rm, Lx, dim, hbar)
            cross = _esub(_emul(Rm, L1, Rm, M1), _emul(M1, Rm, L1, Ri))
            rels += _components(_esub(cross, _emul(Rm, M1), hbar))
            params.add("h")
        alphabet = _alphabet(flat_coords, [a for row in ops for a in row])
    else:
        dn = derivative_names(dim)
        D = _sym_matrix(dn)
        D1 = _first_copy(D, dim)
        M1 = _first_copy(Mx, dim)
        const = Rm if inhomogeneous else [[Element.zero()] * (dim * dim) for _ in range(dim * dim)]
        if kind == "weyl-M":
            rels = _re_relations(Rm, Mx, dim)
            cross = _esub(_emul(D1, Rm, M1, Rm), _emul(Rm, M1, Ri, D1))
            rels += _components(_esub(cross, const))
        else:
            rels = _mrea_relations(Rm, Mx, dim, hbar)
            cross = _esub(_emul(D1, Rm, M1, Rm), _emul(Rm, M1, Ri, D1))
            cross = _esub(_esub(cross, const), _emul(D1, Rm), hbar)
            rels += _components(cross)
            params.add("h")
        rels += _re_relations(Ri, D, dim)
        dflat = sorted((a for row in dn for a in row), key=lambda a: flat_coords.index(a[1:]))
        alphabet = _alphabet(flat_coords, dflat)
    suffix = "" if inhomogeneous or not kind.startswith("weyl") else "0"
    name = f"{kind}{suffix}" + ("" if not R.name else f"[{R.name}]")
    return table_from_relations(rels, alphabet, params, name=name)


def table_from_relations(relations: Sequence[Element], alphabet: Sequence[Generator],
                         parameters=(), name: str = "", aliases=None) -> RelationTable:
    """Orient a list of relations (elements equal to zero) into a rewrite table."""
    probe = RelationTable(alphabet, [], parameters, check=False)
    inversions = [w for w in probe.inversion_pairs()]
    inversions.sort(key=probe.termination_key, reverse=True)
    words = {w for r in relations for w in r.terms}
    unknown = {a for w in words for a in w} - set(probe.rank)
    if unknown:
        raise TableError(f"relations use letters outside the alphabet: {sorted(unknown)}")
    others = sorted((w for w in words if w not in set(inversions)),
                    key=probe.termination_key, reverse=True)
    reduced = rref([dict(r.terms) for r in relations], inversions + others)
    rules = []
    for pivot, row in reduced:
        if pivot not in inversions:
            raise TableError(f"relations force a linear dependence among normal words "
                             f"(pivot {' '.join(pivot) or '1'}); not a PBW presentation")
        rhs = Element({w: -c for w, c in row.items() if w != pivot})
        rules.append(RewriteRule(pivot, rhs))
    got = {r.lhs for r in rules}
    missing = [w for w in inversions if w not in got]
    if missing:
        raise TableError("relations do not determine ordering rules for: "
                         + ", ".join(" ".join(w) for w in missing))
    order = {w: k for k, w in enumerate(probe.inversion_pairs())}
    rules.sort(key=lambda r: order[r.lhs])
    weights = _find_weights(alphabet, rules, parameters)
    return RelationTable(alphabet, rules, parameters, name=name, weights=weights, aliases=aliases)


def _find_weights(alphabet, rules, parameters, strict: bool = True) -> Optional[Dict[str, int]]:
    """Smallest letter weights (1 or 2) under which every rule decreases.

    With ``strict=False`` an unorientable rule set yields None instead of
    raising; reduction then relies on the rewrite budget alone.
    """
    names = [g.name for g in sorted(alphabet, key=lambda g: g.rank)]
    base = RelationTable(alphabet, rules, parameters, check=False)
    try:
        base.check_orientation()
        return {}
    except OrientationError as err:
        first_error = err
    # only letters occurring in an offending rule need to move; try lighter ones first
    for k in range(1, len(names) + 1):
        for light in itertools.combinations(reversed(names), k):
            weights = {a: (1 if a in light else 2) for a in names}
            t = RelationTable(alphabet, rules, parameters, weights=weights, check=False)
            try:
                t.check_orientation()
                return {a: w for a, w in weights.items() if w != 1}
            except OrientationError:
                continue
    if not strict:
        return None
    raise first_error


# -- basis changes and limits ----------------------------------------------------

COMPACT_COORDS = ("t", "x", "y", "z")


def _compact_images(shifted: bool):
    """Old generators as elements in the compact generators."""
    W = Element.word
    half = Scalar(1) / 2
    old = {
        "a": W("t") - W("z").scale(I),
        "b": -(W("x").scale(I)) - W("y"),
        "c": -(W("x").scale(I)) + W("y"),
        "d": W("t") + W("z").scale(I),
    }
    dt = W("dtt") - Element.scalar(2 / H) if shifted else W("dt")
    old.update({
        "da": (dt + W("dz").scale(I)).scale(half),
        "dd": (dt - W("dz").scale(I)).scale(half),
        "db": (W("dx").scale(I) - W("dy")).scale(half),
        "dc": (W("dx").scale(I) + W("dy")).scale(half),
    })
    return old


def _new_in_old(shifted: bool):
    W = Element.word
    half = Scalar(1) / 2
    new = {
        "t": (W("a") + W("d")).scale(half),
        "x": (W("b") + W("c")).scale(I / 2),
        "y": (W("c") - W("b")).scale(half),
        "z": (W("a") - W("d")).scale(I / 2),
        "dx": (W("db") + W("dc")).scale(-I),
        "dy": W("dc") - W("db"),
        "dz": (W("da") - W("dd")).scale(-I),
    }
    dt = W("da") + W("dd")
    if shifted:
        new["dtt"] = dt + Element.scalar(2 / H)
    else:
        new["dt"] = dt
    return new


def change_basis_compact(table: RelationTable, shifted: Optional[bool] = None) -> RelationTable:
    """Rewrite a table over a b c d (and da..dd) in the generators t x y z
    (and dtt or dt, dx, dy, dz); the shifted dtt is used whenever h is a parameter."""
    names = set(table.names)
    if names <= set(COMPACT_COORDS) | {"dtt", "dt", "dx", "dy", "dz"}:
        return table
    if not (names == set("abcd") or names == set("abcd") | {"da", "db", "dc", "dd"}):
        raise TableError("change_basis_compact needs the alphabet a b c d [da db dc dd]")
    has_d = "da" in names
    if shifted is None:
        shifted = "h" in table.parameters
    if shifted and "h" not in table.parameters:
        raise TableError("the shifted derivative needs h as a parameter")
    new_in_old = _new_in_old(shifted)
    dname = "dtt" if shifted else "dt"
    coords = list(COMPACT_COORDS)
    derivs = [dname, "dx", "dy", "dz"] if has_d else []
    counits = {"dtt": 2 / H} if shifted else {}
    alphabet = _alphabet(coords, derivs, counits)
    probe = RelationTable(alphabet, [], table.parameters, check=False)
    normal_words = [()] + [(a,) for a in probe.names] + [
        (a, b) for a in probe.names for b in probe.names if not probe.is_inversion(a, b)]

    def image(word) -> Dict:
        prod = Element.one()
        for a in word:
            prod = prod * new_in_old[a]
        return dict(table.normal_form(prod).terms)

    dec = Decomposer([image(w) for w in normal_words])
    rules = []
    for lhs in probe.inversion_pairs():
        coeffs = dec.decompose(image(lhs))
        if coeffs is None:
            raise TableError(f"{' '.join(lhs)} has no quadratic-linear expression")
        rules.append(RewriteRule(lhs, Element(dict(zip(normal_words, coeffs)))))
    aliases = {"dt": Element.word("dtt") - Element.scalar(2 / H)} if shifted and has_d else {}
    # for generic q the compact letters mix across the t < x < y < z order and
    # no letter weighting orients every rule; the table is still a valid
    # presentation (its q = 1 limit is oriented), reduction is budget-guarded
    weights = _find_weights(alphabet, rules, table.parameters, strict=False)
    return RelationTable(alphabet, rules, table.parameters, name=f"compact({table.name})",
                         weights=weights, aliases=aliases)


def limit_q1(table: RelationTable, name: Optional[str] = None) -> RelationTable:
    """Substitute q = 1 in every coefficient; a pole names the offending rule."""
    rules = []
    for r in table.rules:
        try:
            rhs = r.rhs.map_coefficients(lambda c: substitute(c, "q", ONE))
        except PoleError as err:
            raise PoleError(f"rule {' '.join(r.lhs)}: {err}") from None
        rules.append(RewriteRule(r.lhs, rhs))
    alphabet = [Generator(g.name, g.sort, g.rank, substitute(g.counit, "q", ONE))
                for g in table.alphabet]
    aliases = {k: v.map_coefficients(lambda c: substitute(c, "q", ONE))
               for k, v in table.aliases.items()}
    params = set(table.parameters) - {"q"}
    out = RelationTable(alphabet, rules, params, name=name or f"q1({table.name})",
                        aliases=aliases, check=False)
    weights = _find_weights(alphabet, rules, params)
    return RelationTable(alphabet, rules, params, name=out.name, weights=weights,
                         aliases=aliases)
