from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lndkit.errors import ParseError, UndeclaredIdentifier
from lndkit.parser import BinOp, Neg, Num, Pow, Scope, Sym, Var, parse_expr, parse_poly, split_identifier, to_text
from lndkit.poly import Poly
from lndkit.ring import RingId
from lndkit.session import parse_session, print_session

Q, QT, CIRCLE = RingId.Q, RingId.POLY_T, RingId.CIRCLE


def test_juxtaposition_and_macros():
    scope = Scope(("t",), ("x", "y", "z"), {"F": parse_expr("x + y")})
    e = parse_expr("tyF", scope)
    assert e == BinOp("*", BinOp("*", Sym("t"), Var("y")), BinOp("+", Var("x"), Var("y")))
    x, y, z = Poly.gens(QT, 3)
    t = Poly.symbol(QT, 3, "t")
    assert parse_poly("-2t^2 x(tz + x)", QT) == -2 * t ** 2 * x * (t * z + x)
    assert parse_poly("x^2z", Q) == Poly.var(Q, 3, 0) ** 2 * Poly.var(Q, 3, 2)


def test_split_prefers_long_names():
    known = {"w1": "symbol", "w2": "symbol", "x": "var", "xy": "macro", "y": "var"}
    assert split_identifier("w1xy", known) == ["w1", "xy"]
    assert split_identifier("w2yx", known) == ["w2", "y", "x"]
    assert split_identifier("xq", known) is None


def test_rationals_and_params():
    assert parse_poly("1/2 x - 3/4", Q) == Poly.var(Q, 3, 0) * Fraction(1, 2) - Fraction(3, 4)
    scope = Scope((), ("x", "y", "z"), None, {"d": 2})
    assert parse_expr("x^(d+1)", scope) == Pow(Var("x"), 3)
    assert parse_expr("(d+2) x", scope) == BinOp("*", BinOp("+", Num(Fraction(2)), Num(Fraction(2))), Var("x"))
    assert parse_poly("(d+2) x", Q, params={"d": 2}) == 4 * Poly.var(Q, 3, 0)
    assert parse_expr("y^d", scope) == Pow(Var("y"), 2)


@pytest.mark.parametrize("text,col", [("x + q", 5), ("2x + yq", 7), ("x^(e+1)", 4)])
def test_undeclared_positions(text, col):
    with pytest.raises(UndeclaredIdentifier) as exc:
        parse_expr(text)
    assert (exc.value.line, exc.value.column) == (1, col)


@pytest.mark.parametrize("text,col", [("x +", 4), ("(x + y", 7), ("x ^ -1", 5), ("3/0", 3), ("x $ y", 3), ("x^(1-2)", 3)])
def test_parse_error_positions(text, col):
    with pytest.raises(ParseError) as exc:
        parse_expr(text)
    assert exc.value.column == col


def test_circle_symbols_reduce():
    w1, w2 = Poly.symbol(CIRCLE, 3, "w1"), Poly.symbol(CIRCLE, 3, "w2")
    assert parse_poly("w1^2 + w2^2", CIRCLE) == Poly.one(CIRCLE, 3)
    assert parse_poly("w1 w2 x", CIRCLE) == w1 * w2 * Poly.var(CIRCLE, 3, 0)


# ---------------------------------------------------------------------------
# parse . print . parse = parse

leaves = st.one_of(
    st.fractions(min_value=0, max_value=20, max_denominator=5).map(Num),
    st.sampled_from(["x", "y", "z"]).map(Var),
    st.sampled_from(["w1", "w2"]).map(Sym),
)


def _extend(children):
    return st.one_of(
        st.tuples(st.sampled_from("+-*"), children, children).map(lambda a: BinOp(*a)),
        children.map(Neg),
        st.tuples(children, st.integers(0, 4)).map(lambda a: Pow(*a)),
    )


trees = st.recursive(leaves, _extend, max_leaves=12)
SCOPE = Scope(("w1", "w2"), ("x", "y", "z"))


@given(trees)
def test_print_parse_round_trip(tree):
    once = parse_expr(to_text(tree), SCOPE)
    assert parse_expr(to_text(once), SCOPE) == once
    # printing preserves the value as well
    assert parse_poly(to_text(tree), CIRCLE) == parse_poly(to_text(once), CIRCLE)


# ---------------------------------------------------------------------------
# sessions


def test_session_round_trip():
    text = "ring Q[t]\nvars x y z\nlet F = x(tz + x) - t^2y^2\nD x = -2 t^2 F\nD z = tyF\ndegd z --bound 10\nrank\n"
    spec = parse_session(text)
    again = parse_session(print_session(spec))
    assert print_session(again) == print_session(spec)
    assert again.build_derivation() == spec.build_derivation()
    assert spec.queries[0].args == ("degd", "z", "--bound", "10")


def test_session_errors():
    with pytest.raises(UndeclaredIdentifier) as exc:
        parse_session("vars x y\nD z = 1\n")
    assert (exc.value.line, exc.value.column) == (2, 3)
    with pytest.raises(ParseError) as exc:
        parse_session("vars x y z\nweights 1 2\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_session("ring Z\n")
    with pytest.raises(ParseError):
        parse_session("vars x y z\nD x = y\nring Q\n")
    with pytest.raises(ParseError):
        parse_session("frobnicate\n")
    with pytest.raises(UndeclaredIdentifier):
        parse_session("vars x y z\nD x = y^(d+1)\n")
    assert parse_session("vars x y z\nD x = y^(d+1)\n", {"d": 1}).build_derivation().images[0] == Poly.var(Q, 3, 1) ** 2
