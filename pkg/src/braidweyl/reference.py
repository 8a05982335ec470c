"""Published relations and brackets, transcribed into the expression syntax.

Everything here is typed in by hand, typos included; the rest of the package
reads it only to compare against generated results.  Relations are ``(lhs, rhs)``
source pairs meaning ``lhs = rhs``.
"""
from __future__ import annotations

from typing import Dict, List, Tuple

from .parsing import evaluate, parse
from .pbw import Element, RelationTable

Relation = Tuple[str, str]

# q-case modified reflection equation algebra
MREA_Q: List[Relation] = [
    ("q*a*b - q^-1*b*a", "h*b"),
    ("q*c*a - q^-1*a*c", "h*c"),
    ("a*d - d*a", "0"),
    ("q*(b*c - c*b)", "((q - q^-1)*a - h)*(d - a)"),
    ("q*(d*b - b*d)", "((q - q^-1)*a - h)*b"),
    ("q*(c*d - d*c)", "c*((q - q^-1)*a - h)"),
]

# the non-modified algebra: the same with h = 0
RE_Q: List[Relation] = [
    ("q*a*b - q^-1*b*a", "0"),
    ("q*c*a - q^-1*a*c", "0"),
    ("a*d - d*a", "0"),
    ("q*(b*c - c*b)", "(q - q^-1)*a*(d - a)"),
    ("q*(d*b - b*d)", "(q - q^-1)*a*b"),
    ("q*(c*d - d*c)", "(q - q^-1)*c*a"),
]

# braided derivatives among themselves (the same in both Weyl algebras)
DERIV_Q: List[Relation] = [
    ("da*db - db*da", "-(q^2 - 1)*dd*db"),
    ("da*dc - dc*da", "(q^2 - 1)*dc*dd"),
    ("da*dd - dd*da", "0"),
    ("db*dc - dc*db", "(q^2 - 1)*(dd - da)*dd"),
    ("q^2*db*dd - dd*db", "0"),
    ("dc*dd - q^2*dd*dc", "0"),
]

# derivatives past coordinates in the q-deformed Weyl algebra over the mREA
WEYL_N_MIXED: Dict[Tuple[str, str], str] = {
    ("da", "a"): "q^-1 + q^-2*a*da - (1 - q^-2)*b*db + q^-1*h*da",
    ("da", "b"): "b*da - (1 - q^-2)*a*dc + (q - q^-1)^2*b*dd + q^-1*h*dc",
    ("da", "c"): "q^-2*c*da + (1 - q^-2)*(a - d)*db",
    ("da", "d"): "d*da + (1 - q^-2)*(b*db - c*dc) - (q - q^-1)^2*(a - d)*dd"
                 " + q*(1 - q^-2)^2 + q*(1 - q^-2)^2*h*da",
    ("db", "a"): "q^-2*a*db + q^-1*h*db",
    ("db", "b"): "q^-1 + q^-2*b*db - (1 - q^-2)*a*dd + q^-1*h*dd",
    ("db", "c"): "c*db",
    ("db", "d"): "d*db - (q^2 - 1)*c*dd",
    ("dc", "a"): "a*dc - (q^2 - 1)*b*dd",
    ("dc", "b"): "b*dc",
    ("dc", "c"): "q^-3 + q^-2*c*dc + (1 - q^-2)*(a - d)*dd - (q^-2 - q^-4)*a*da"
                 " + (1 - q^-2)^2*b*db + q^-3*h*da",
    ("dc", "d"): "q^-2*d*dc + (1 - q^-2)*(2 - q^2)*b*dd - (1 - q^-2)*b*da"
                 " + (1 - q^-2)^2*a*dc + q^-3*h*dc",
    ("dd", "a"): "a*dd",
    ("dd", "b"): "q^-2*b*dd",
    ("dd", "c"): "c*dd - (q^-2 - q^-4)*a*db + q^-3*h*db",
    ("dd", "d"): "q^-3 + q^-2*d*dd + (1 - q^-2)^2*a*dd - (q^-2 - q^-4)*b*db + q^-3*h*dd",
}

# values of the derivatives on the generators
COUNIT_Q: Dict[Tuple[str, str], str] = {
    ("da", "a"): "q^-1",
    ("db", "b"): "q^-1",
    ("dc", "c"): "q^-3",
    ("dd", "d"): "q^-3",
}

# q = 1: commutators [d, v] = d v - v d
GL2_MIXED: Dict[Tuple[str, str], str] = {
    ("da", "a"): "1 + h*da", ("da", "b"): "h*dc", ("da", "c"): "0", ("da", "d"): "0",
    ("db", "a"): "h*db", ("db", "b"): "1 + h*dd", ("db", "c"): "0", ("db", "d"): "0",
    ("dc", "a"): "0", ("dc", "b"): "0", ("dc", "c"): "1 + h*da", ("dc", "d"): "h*dc",
    ("dd", "a"): "0", ("dd", "b"): "0", ("dd", "c"): "h*db", ("dd", "d"): "1 + h*dd",
}

GL2_COORD: Dict[Tuple[str, str], str] = {
    ("a", "b"): "h*b", ("a", "c"): "-h*c", ("a", "d"): "0",
    ("b", "c"): "h*(a - d)", ("b", "d"): "h*b", ("c", "d"): "-h*c",
}

U2_COORD: Dict[Tuple[str, str], str] = {
    ("x", "y"): "h*z", ("y", "z"): "h*x", ("z", "x"): "h*y",
    ("t", "x"): "0", ("t", "y"): "0", ("t", "z"): "0",
}

# commutators [d, v] with the shifted time derivative dtt
LEIB_R: Dict[Tuple[str, str], str] = {
    ("dtt", "t"): "(h/2)*dtt", ("dtt", "x"): "-(h/2)*dx", ("dtt", "y"): "-(h/2)*dy", ("dtt", "z"): "-(h/2)*dz",
    ("dx", "t"): "(h/2)*dx", ("dx", "x"): "(h/2)*dtt", ("dx", "y"): "(h/2)*dz", ("dx", "z"): "-(h/2)*dy",
    ("dy", "t"): "(h/2)*dy", ("dy", "x"): "-(h/2)*dz", ("dy", "y"): "(h/2)*dtt", ("dy", "z"): "(h/2)*dx",
    ("dz", "t"): "(h/2)*dz", ("dz", "x"): "(h/2)*dy", ("dz", "y"): "-(h/2)*dx", ("dz", "z"): "(h/2)*dtt",
}

# explicit bracket values printed for the first-order bracket ({p_t, t} and {p_x, t})
BRACKET1_PRINTED: Dict[Tuple[str, str], str] = {
    ("p_t", "t"): "p_t/2",
    ("p_x", "t"): "p_t/2",
}

# the quadratic bracket in l = a + d, h = a - d (named L and H here), b, c and momenta
BRACKET2_COORD: Dict[Tuple[str, str], str] = {
    ("H", "b"): "-2*b*(H + L)", ("H", "c"): "2*c*(H + L)", ("b", "c"): "-H*(H + L)",
    ("L", "H"): "0", ("L", "b"): "0", ("L", "c"): "0",
}
BRACKET2_MOMENTA: Dict[Tuple[str, str], str] = {
    ("pH", "pb"): "2*pb*(pH - pL)", ("pH", "pc"): "-2*pc*(pH - pL)", ("pb", "pc"): "4*pH*(pH - pL)",
    ("pL", "pH"): "0", ("pL", "pb"): "0", ("pL", "pc"): "0",
}
BRACKET2_MIXED: Dict[Tuple[str, str], str] = {
    ("L", "pL"): "2 + L*pL + H*pH + b*pb + c*pc",
    ("H", "pL"): "L*pH + H*pL + b*pb - c*pc",
    ("b", "pL"): "b*(pH - pL) + pc*(H + L)/2",
    ("c", "pL"): "c*(pH + pL) + pb*(L - H)/2",
    ("L", "pH"): "L*pH + H*pL - b*pb + c*pc",
    ("H", "pH"): "2 + H*pH + L*pL + 3*b*pb - c*pc",
    ("b", "pH"): "-b*(pH - pL) + pc*(H + L)/2",
    ("c", "pH"): "c*(pH + pL) - L*pb/2 - 3*H*pb/2",
    ("L", "pb"): "pb*(H + L) - 2*c*(pH - pL)",
    ("H", "pb"): "pb*(H + L) + 2*c*(pH - pL)",
    ("b", "pb"): "2 + 2*b*pb + (H + L)*(pH - pL)",
    ("c", "pb"): "0",
    ("L", "pc"): "pc*(L - H) + 2*b*(pL + pH)",
    ("H", "pc"): "2*b*(pL - 3*pH) - pc*(L - H)",
    ("b", "pc"): "0",
    ("c", "pc"): "2 + 2*c*pc + L*(pL + pH) - H*pL + 3*H*pH",
}

# the Pi matrix and the eigenvalue-coordinate formulas live in radial.py as
# polynomials (PI_PRINTED), since they are used for computation as well.


def relation_element(rel: Relation, table: RelationTable) -> Element:
    """lhs - rhs as a free-algebra element over the table's alphabet."""
    lhs, rhs = rel
    return evaluate(parse(lhs, table.names), table) - evaluate(parse(rhs, table.names), table)


def commutator_relation(pair: Tuple[str, str], rhs: str) -> Relation:
    u, v = pair
    return (f"{u}*{v} - {v}*{u}", rhs)


def rule_relation(pair: Tuple[str, str], rhs: str) -> Relation:
    return (f"{pair[0]}*{pair[1]}", rhs)
