import pytest
from hypothesis import given, settings, strategies as st

from braidweyl.parsing import ParseError, evaluate, parse, parse_scalar, to_source
from braidweyl.pbw import Element
from braidweyl.scalars import H, Q, Scalar

ALPHA = ["a", "b", "c", "d", "x", "y", "z", "dx"]


def test_commutator_is_two_words():
    e = evaluate(parse("dx*x - x*dx", ALPHA + ["x"]))
    assert e == Element.word("dx", "x") - Element.word("x", "dx")


def test_scalar_scaled_word():
    e = evaluate(parse("(q - q^-1)*b*c", ALPHA))
    assert e == Element.word("b", "c").scale(Q - Q ** -1)


def test_power_expands_to_word():
    assert evaluate(parse("x^3*y", ALPHA)) == Element.word("x", "x", "x", "y")


def test_unknown_generator():
    with pytest.raises(ParseError):
        parse("w*x", ALPHA)


@pytest.mark.parametrize("src", ["x*", "(x", "x^", "x^-1*y )", "2/", "x $ y"])
def test_malformed(src):
    with pytest.raises(ParseError):
        evaluate(parse(src, ALPHA))


def test_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse("x + + ", ALPHA)
    assert "position" in str(err.value)


def test_scalars():
    assert parse_scalar("h/2") == H / 2
    assert parse_scalar("q^-2 - 1") == Q ** -2 - 1
    assert parse_scalar("i^2") == Scalar(-1)


GOLDEN = [
    "dx*x - x*dx",
    "(q - q^-1)*b*c",
    "x^3*y",
    "-(h/2)*dx + 3*x^2 - (1/4)*h^2",
    "q^-1 + q^-2*a*dx - (1 - q^-2)*b*c + q^-1*h*dx",
    "((q - q^-1)*a - h)*(d - a)",
]


@pytest.mark.parametrize("src", GOLDEN)
def test_print_parse_roundtrip(src):
    ast = parse(src, ALPHA)
    assert parse(to_source(ast), ALPHA) == ast


atoms = st.sampled_from(["a", "b", "x", "q", "h", "i", "2", "3"])


@st.composite
def exprs(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return draw(atoms)
    op = draw(st.sampled_from(["+", "-", "*", "^", "neg"]))
    a = draw(exprs(depth=depth - 1))
    if op == "neg":
        return f"-({a})"
    if op == "^":
        return f"({a})^{draw(st.integers(0, 3))}"
    b = draw(exprs(depth=depth - 1))
    return f"({a}) {op} ({b})"


@settings(max_examples=150, deadline=None)
@given(exprs())
def test_roundtrip_property(src):
    ast = parse(src, ALPHA)
    again = parse(to_source(ast), ALPHA)
    assert again == ast
    assert evaluate(again) == evaluate(ast)
