"""The verification suites behind ``nc verify`` and the acceptance tests.

Every check returns a :class:`Check`; a failing check carries the first
witness found.  Suites group checks and always report them in a fixed order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .calculus import (
    B_k, FORM_LETTERS, FormElement, PROP6_ROWS, apply_decomposable, apply_operator,
    de_rham_d, eigen_check, leibniz_apply, permute_through_power, poly_to_element,
)
from .hecke import BraidMatrix, change_basis_compact, check_hecke, check_qybe, generate_relations, \
    limit_q1, table_from_relations
from .pbw import Element, RelationTable, check_local_confluence
from .poisson import (
    GL2_NEW_COORDS, PoissonTable, bracket1_table, bracket2_compact, bracket2_conventions, bracket2_table,
    compatibility_check, darboux_table, jacobi_residuals,
)
from .poly import Poly, parse_poly
from .radial import (
    CAS, MU, center_from_mu, ch_residual, certify_pi, classical_radial_limit, delta_from_pi, delta_on_cas_power,
    det, engine_delta_on_center, engine_trace_power, matrix_function_LS, mu_coordinates,
    pi_eigenvalues, pi_matrix, pi_matrix_mu, radial_apply, trace_power,
)
from .reference import (
    BRACKET1_PRINTED, BRACKET2_COORD, BRACKET2_MIXED, BRACKET2_MOMENTA, COUNIT_Q, DERIV_Q,
    GL2_COORD, GL2_MIXED, LEIB_R, MREA_Q, RE_Q, U2_COORD, WEYL_N_MIXED, commutator_relation,
    relation_element, rule_relation,
)
from .scalars import H, ONE, Q, Scalar, substitute
from .tables import BUNDLED, generate_table, load_table

__all__ = ["Check", "SUITES", "run_suite", "CRITERIA", "run_criterion", "check_table_file"]


@dataclass
class Check:
    check: str
    passed: bool
    witness: Optional[str] = None
    details: Dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        out = {"check": self.check, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


def _first(items, fmt) -> Optional[str]:
    for it in items:
        return fmt(it)
    return None


def _relations_hold(relations, table: RelationTable) -> List[str]:
    """Printed relations whose difference does not reduce to zero."""
    bad = []
    for rel in relations:
        r = table.normal_form(relation_element(rel, table))
        if r:
            bad.append(f"{rel[0]} = {rel[1]}: residue {table.render(r)}")
    return bad


def _same_as_printed(relations, table: RelationTable) -> Optional[str]:
    """None if orienting the printed relations gives exactly ``table``'s rules."""
    try:
        printed = table_from_relations([relation_element(r, table) for r in relations],
                                       table.alphabet, table.parameters)
    except Exception as err:
        return f"printed relations do not orient: {err}"
    if printed._rule_map == table._rule_map:
        return None
    for lhs, rhs in table._rule_map.items():
        other = printed._rule_map.get(lhs)
        if other != rhs:
            return (f"rule {' '.join(lhs)}: generated {table.render(rhs)}, printed "
                    f"{'missing' if other is None else table.render(other)}")
    return "printed relations give extra rules"


# -- 1: relation generation ---------------------------------------------------------

def check_generation() -> List[Check]:
    R = BraidMatrix.standard()
    out = [Check("standard R satisfies QYBE and the Hecke condition", check_qybe(R) and check_hecke(R))]
    for kind, printed in (("RE", RE_Q), ("mREA", MREA_Q)):
        t = generate_relations(R, kind)
        w = _same_as_printed(printed, t)
        out.append(Check(f"{kind}: six q-case relations", w is None, w))
    wn = generate_relations(R, "weyl-N")
    bad = []
    for pair, rhs in WEYL_N_MIXED.items():
        bad += _relations_hold([rule_relation(pair, rhs)], wn)
    out.append(Check("weyl-N: 16 derivative-coordinate relations", not bad, _first(bad, str),
                     {"failing_rows": len(bad)}))
    bad = _relations_hold(DERIV_Q, wn)
    out.append(Check("weyl-N: derivative-derivative relations", not bad, _first(bad, str)))
    return out


# -- 2: limits and the compact basis ------------------------------------------------------

def check_limits() -> List[Check]:
    wn = generate_relations(BraidMatrix.standard(), "weyl-N")
    gl = limit_q1(wn)
    derivs = gl.gens_of_sort("derivative")
    printed = [commutator_relation(p, r) for p, r in GL2_MIXED.items()]
    printed += [commutator_relation(p, r) for p, r in GL2_COORD.items()]
    printed += [commutator_relation(p, "0") for p in itertools.combinations(derivs, 2)]
    w = _same_as_printed(printed, gl)
    out = [Check("q -> 1 limit of weyl-N equals the gl(2)_h Weyl table", w is None, w)]
    comm = [f"[{u},{v}] = {gl.render(gl.normal_form(Element.word(u, v) - Element.word(v, u)))}"
            for u, v in itertools.combinations(derivs, 2)
            if gl.normal_form(Element.word(u, v) - Element.word(v, u))]
    out.append(Check("derivatives commute at q = 1", not comm, _first(comm, str)))
    u2 = change_basis_compact(gl)
    bad = _relations_hold([commutator_relation(p, r) for p, r in U2_COORD.items()], u2)
    out.append(Check("compact basis: u(2)_h relations", not bad, _first(bad, str)))
    bad = _relations_hold([commutator_relation(p, r) for p, r in LEIB_R.items()], u2)
    out.append(Check("compact basis: derivative-coordinate table", not bad, _first(bad, str)))
    return out


# -- 3: permutation relations through powers ----------------------------------------

def check_prop6(k_max: int = 6, table: Optional[RelationTable] = None) -> List[Check]:
    table = table or load_table("u2h")
    bad = []
    for (d, v) in PROP6_ROWS:
        for k in range(k_max + 1):
            lhs = table.normal_form(Element.word(d, *([v] * k)))
            rhs = permute_through_power(d, v, k)
            if lhs != rhs:
                bad.append(f"{d}*{v}^{k}: engine {table.render(lhs)} vs closed form {table.render(rhs)}")
    return [Check(f"16 permutation rows for k <= {k_max}", not bad, _first(bad, str))]


# -- 4: derivative actions ----------------------------------------------------------------

def _monomials(vars_: Sequence[str], max_deg: int):
    for exps in itertools.product(range(max_deg + 1), repeat=len(vars_)):
        if sum(exps) <= max_deg:
            yield exps


def check_derivative_actions(k_max: int = 8, degree: int = 4) -> List[Check]:
    u2 = load_table("u2h")
    bad = []
    for k in range(k_max + 1):
        got = apply_operator(Element.word("dx"), Element.word(*(["x"] * k)), u2)
        want = poly_to_element(B_k("x", k) * (2 / H))
        if got != want:
            bad.append(f"dx(x^{k}) = {u2.render(got)}, expected {u2.render(want)}")
    out = [Check(f"dx(x^k) = (2/h) B_k(x) for k <= {k_max}", not bad, _first(bad, str))]
    wn = load_table("weyl-N")
    bad = []
    for (d, v), val in COUNIT_Q.items():
        got = apply_operator(Element.word(d), Element.word(v), wn)
        want = Element.scalar(parse_poly(val, ()).constant())
        if got != want:
            bad.append(f"{d}({v}) = {wn.render(got)}, expected {val}")
    out.append(Check("q-case values of the derivatives on the generators", not bad, _first(bad, str)))
    bad = []
    for exps in _monomials("txyz", degree):
        f = [Poly.var(v, e) for v, e in zip("txyz", exps)]
        mono = poly_to_element(f[0] * f[1] * f[2] * f[3])
        for d in ("dtt", "dt", "dx", "dy", "dz"):
            op = Element.word("dtt") - Element.scalar(2 / H) if d == "dt" else Element.word(d)
            got = apply_operator(op, mono, u2)
            want = poly_to_element(apply_decomposable(d, *f))
            if got != want:
                bad.append(f"{d}(t^{exps[0]} x^{exps[1]} y^{exps[2]} z^{exps[3]})")
    out.append(Check(f"decomposable-element formulas, total degree <= {degree}", not bad, _first(bad, str)))
    return out


# -- 5: Leibniz rule through the coproduct --------------------------------------------------

def _normal_monomials(table: RelationTable, letters: Sequence[str], max_deg: int) -> List[Element]:
    out = []
    for exps in _monomials(letters, max_deg):
        out.append(Element.word(*[v for v, e in zip(letters, exps) for _ in range(e)]))
    return out


def check_leibniz(degree: int = 4) -> List[Check]:
    gl = load_table("gl2h")
    coords = gl.gens_of_sort("coordinate")
    monos = _normal_monomials(gl, coords, degree)
    bad = []
    count = 0
    for f in monos:
        df = max(len(w) for w in f.terms)
        for g in monos:
            if df + max(len(w) for w in g.terms) > degree:
                continue
            for d in gl.gens_of_sort("derivative"):
                count += 1
                lhs = leibniz_apply(d, f, g, gl)
                rhs = apply_operator(Element.word(d), gl.normal_form(f * g), gl)
                if lhs != rhs:
                    bad.append(f"{d}(({gl.render(f)})*({gl.render(g)}))")
    return [Check(f"coproduct Leibniz rule on monomial pairs of degree <= {degree}", not bad,
                  _first(bad, str), {"cases": count})]


# -- 6: eigenfunctions --------------------------------------------------------------------

def check_eigen(degree: int = 4) -> List[Check]:
    u2 = load_table("u2h")
    bad = [d for d in ("dtt", "dx", "dy", "dz") if not eigen_check(d, u2, degree=degree)]
    return [Check(f"ordered exponentials are eigenfunctions to degree {degree}", not bad,
                  _first(bad, lambda d: f"{d} eigenvalue identity fails"))]


# -- 7: de Rham -----------------------------------------------------------------------------

def check_derham(degree: int = 4) -> List[Check]:
    u2 = load_table("u2h")
    bad = []
    for exps in _monomials("txyz", degree):
        f = Element.word(*[v for v, e in zip("txyz", exps) for _ in range(e)])
        dd = de_rham_d(de_rham_d(FormElement.function(f), u2), u2)
        if not dd.is_zero():
            bad.append(f"d^2(t^{exps[0]} x^{exps[1]} y^{exps[2]} z^{exps[3]}) = {dd}")
    # one-forms too: d^2 on Dx * monomial
    for letter in FORM_LETTERS:
        for exps in _monomials("txyz", degree - 1):
            f = Element.word(*[v for v, e in zip("txyz", exps) for _ in range(e)])
            dd = de_rham_d(de_rham_d(FormElement({(letter,): f}), u2), u2)
            if not dd.is_zero():
                bad.append(f"d^2({letter} t^{exps[0]} x^{exps[1]} y^{exps[2]} z^{exps[3]})")
    return [Check(f"d^2 = 0 on monomials of degree <= {degree}", not bad, _first(bad, str))]


# -- 8: Cayley-Hamilton ----------------------------------------------------------------------

def check_ch(k_max: int = 4) -> List[Check]:
    u2 = load_table("u2h")
    res = ch_residual(u2)
    nz = [f"entry ({i},{j}): {u2.render(res[i][j])}" for i in range(2) for j in range(2) if res[i][j]]
    out = [Check("Cayley-Hamilton residual is zero", not nz, _first(nz, str))]
    bad = []
    for k in range(k_max + 1):
        eng = engine_trace_power(k, u2)
        if mu_coordinates(eng) != trace_power(k):
            bad.append(f"Tr N^{k}: engine {eng.render(['t', 'Cas'])}")
    out.append(Check(f"Tr N^k formula for k <= {k_max}", not bad, _first(bad, str)))
    t = Poly.var("t")
    want = {1: t * 2, 2: (t * t - CAS) * 2}
    bad = [f"Tr N^{k} = {engine_trace_power(k, u2).render(['t', 'Cas'])}"
           for k, w in want.items() if engine_trace_power(k, u2) != w]
    out.append(Check("Tr N = 2t, Tr N^2 = 2(t^2 - Cas)", not bad, _first(bad, str)))
    return out


# -- 9: the Pi matrix -------------------------------------------------------------------------

def check_pi(p_max: int = 4) -> List[Check]:
    u2 = load_table("u2h")
    res = certify_pi(u2)
    nz = [f"row {i}: {u2.render(r)}" for i, r in enumerate(res) if r]
    out = [Check("Delta_i Cas = sum_j Pi_ij Delta_j in W", not nz, _first(nz, str))]
    P = pi_matrix_mu()
    lam = Poly.var("x")
    char = det([[P[i][j] - (lam if i == j else Poly()) for j in range(4)] for i in range(4)])
    bad = []
    for k, ev in enumerate(pi_eigenvalues()):
        if char.subs({"x": ev}):
            bad.append(f"eigenvalue {k} is not a root of the characteristic polynomial")
    # the fourth root is the repeated lambda_0; the polynomial must vanish to order 2 there
    l0 = pi_eigenvalues()[0]
    if char.diff("x").subs({"x": l0}):
        bad.append("lambda_0 is a simple root of the characteristic polynomial")
    out.append(Check("eigenvalues satisfy the characteristic polynomial", not bad, _first(bad, str)))
    bad = []
    Pc = pi_matrix()
    M = [[Poly.const(1) if r == c else Poly() for c in range(4)] for r in range(4)]
    for p in range(p_max + 1):
        LS = matrix_function_LS(Poly.var("x", p))
        if LS != M:
            bad.append(f"p = {p}")
        M = [[sum((M[i][k] * Pc[k][j] for k in range(4)), Poly()) for j in range(4)] for i in range(4)]
        M = [[center_from_mu(mu_coordinates(e)) for e in row] for row in M]
    out.append(Check(f"Lagrange-Sylvester f = x^p equals Pi^p for p <= {p_max}", not bad,
                     _first(bad, lambda s: f"mismatch at {s}")))
    return out


# -- 10: radial part --------------------------------------------------------------------------

def check_radial(p_max: int = 4, classical_p_max: int = 5) -> List[Check]:
    u2 = load_table("u2h")
    bad = []
    for i, kind in enumerate(("D0", "D1", "D2", "D3")):
        for p in range(p_max + 1):
            eng = engine_delta_on_center(kind, CAS ** p, u2)
            closed = delta_on_cas_power(i, p)
            if eng is None or mu_coordinates(eng) != closed:
                bad.append(f"Delta_{i}(Cas^{p})")
            elif delta_from_pi(i, p) != closed:
                bad.append(f"Delta_{i}(Cas^{p}) from Pi^p")
    out = [Check(f"closed formulas for Delta_i(Cas^p), p <= {p_max}", not bad, _first(bad, str))]
    lap = engine_delta_on_center("D1", CAS, u2)
    out.append(Check("Delta(Cas) = 6", lap == Poly.const(6),
                     None if lap == Poly.const(6) else str(lap and lap.render(["t", "Cas"]))))
    rad = radial_apply(MU).in_lam_mu()
    out.append(Check("Delta_rad(mu) = -24", rad == Poly.const(-24),
                     None if rad == Poly.const(-24) else rad.render(["lam", "mu"])))
    rep = classical_radial_limit(classical_p_max)
    bad = [r for r in rep if not (r["matches_mu_operator"] and r["matches_r_operator"])]
    out.append(Check(f"classical limit of the radial part, p <= {classical_p_max}", not bad,
                     _first(bad, lambda r: f"p = {r['p']}: limit {r['limit']}")))
    return out


# -- 11: Poisson brackets -------------------------------------------------------------------------

def _poisson_from(entries, gens) -> Dict:
    return {k: parse_poly(v, gens) for k, v in entries.items()}


def check_poisson() -> List[Check]:
    u2 = load_table("u2h")
    p1 = bracket1_table(u2)
    gens = p1.generators
    # the leib-r table at h = 1 together with the u(2) relations at h = 1
    mom = {"dtt": "p_t", "dx": "p_x", "dy": "p_y", "dz": "p_z"}
    expected = {}
    for (d, v), rhs in LEIB_R.items():
        for a, b in mom.items():
            rhs = rhs.replace(a, b)
        expected[(mom[d], v)] = rhs.replace("h", "1")
    for (u, v), rhs in U2_COORD.items():
        expected[(u, v)] = rhs.replace("h", "1")
    for (u, v), rhs in BRACKET1_PRINTED.items():
        expected[(u, v)] = rhs
    bad = []
    for (u, v), rhs in expected.items():
        want = parse_poly(rhs, gens)
        got = p1.bracket(u, v)
        if got != want:
            bad.append(f"{{{u}, {v}}}_1: extracted {got.render(gens)}, printed {rhs}")
    # every other pair must vanish
    for u, v in itertools.combinations(gens, 2):
        if (u, v) not in expected and (v, u) not in expected and p1.bracket(u, v):
            bad.append(f"{{{u}, {v}}}_1 = {p1.bracket(u, v).render(gens)} is not in the table")
    out = [Check("{,}_1 extracted from the compact table matches the printed entries", not bad,
                 _first(bad, str), {"mismatches": bad})]
    p2 = bracket2_table(load_table("weyl-M0"))
    printed = _poisson_from({**BRACKET2_COORD, **BRACKET2_MOMENTA}, GL2_NEW_COORDS)
    bad = [f"{{{u}, {v}}}_2: extracted {p2.bracket(u, v).render(GL2_NEW_COORDS)}, printed "
           f"{w.render(GL2_NEW_COORDS)}" for (u, v), w in printed.items() if p2.bracket(u, v) != w]
    coord_bad = [b for b in bad if "p" not in b.split(":")[0]]
    out.append(Check("{,}_2 coordinate sector matches", not coord_bad, _first(coord_bad, str)))
    out.append(Check("{,}_2 momentum sector matches", not bad, _first(bad, str)))
    p0 = darboux_table()
    for label, pt in (("{,}_0", p0), ("{,}_1", p1), ("{,}_2", p2)):
        res = jacobi_residuals(pt)
        out.append(Check(f"Jacobi identity for {label}", not res,
                         _first(res, lambda r: f"{r[0]}: {r[1].render(pt.generators)}")))
    out.append(Check("{,}_0 and {,}_1 are compatible", compatibility_check(p0, p1)))
    p2c = bracket2_compact(load_table("weyl-M0"))
    out.append(Check("{,}_2 is compatible with {,}_0 + {,}_1 over the complexification",
                     compatibility_check(p2c, p0 + p1)))
    report = bracket2_conventions({"weyl-M0": load_table("weyl-M0"), "weyl-M": load_table("weyl-M")},
                                  BRACKET2_MIXED)
    best = report[0]
    out.append(Check("{,}_2 mixed-sector convention report generated", bool(report), None, {
        "best": {k: best[k] for k in ("source", "momenta", "scale", "constants", "agree", "total")},
        "disagreeing_entries": [e for e in best["entries"] if not e["agree"]],
    }))
    return out


# -- 12: confluence ---------------------------------------------------------------------------

def check_confluence(tables: Optional[Dict[str, RelationTable]] = None) -> List[Check]:
    if tables is None:
        tables = {tid: load_table(tid) for tid in BUNDLED[:6]}
    out = []
    for tid, t in tables.items():
        rep = check_local_confluence(t, 3)
        out.append(Check(f"{tid}: locally confluent at degree 3", not rep,
                         _first(rep, lambda r: f"word {r['word']}: {r['difference']}")))
    return out


def check_bundled() -> List[Check]:
    """The shipped JSON files equal a fresh generation."""
    out = []
    for tid in BUNDLED:
        same = load_table(tid).same_relations(generate_table(tid))
        out.append(Check(f"{tid}: bundled file equals regeneration", same,
                         None if same else f"{tid}.json differs from its recipe"))
    return out


def check_table_file(path: str) -> List[Check]:
    """A user table: confluence, and equality with the recipe of the same name if any."""
    try:
        t = load_table(path)
    except Exception as err:
        return [Check(f"{path}: loads", False, str(err))]
    out = check_confluence({t.name or path: t})
    try:
        ref = generate_table(t.name)
    except KeyError:
        return out
    if not t.same_relations(ref):
        diff = next((" ".join(lhs) for lhs, rhs in ref._rule_map.items()
                     if t._rule_map.get(lhs) != rhs), "extra rules")
        out.append(Check(f"{t.name}: equals its recipe", False, f"rule {diff}"))
    else:
        out.append(Check(f"{t.name}: equals its recipe", True))
    return out


CRITERIA: Dict[int, Callable[[], List[Check]]] = {
    1: check_generation,
    2: check_limits,
    3: check_prop6,
    4: check_derivative_actions,
    5: check_leibniz,
    6: check_eigen,
    7: check_derham,
    8: check_ch,
    9: check_pi,
    10: check_radial,
    11: check_poisson,
    12: check_confluence,
}

SUITES: Dict[str, Sequence[Callable[[], List[Check]]]] = {
    "tables": (check_generation, check_limits, check_bundled),
    "prop6": (check_prop6, check_derivative_actions, check_leibniz),
    "eigen": (check_eigen,),
    "derham": (check_derham,),
    "ch": (check_ch,),
    "pi": (check_pi,),
    "radial": (check_radial,),
    "poisson": (check_poisson,),
    "confluence": (check_confluence,),
}
SUITES["all"] = tuple(f for name, fs in SUITES.items() for f in fs)


def run_criterion(n: int) -> List[Check]:
    return CRITERIA[n]()


def run_suite(name: str) -> List[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    out: List[Check] = []
    for f in SUITES[name]:
        out.extend(f())
    return out
