from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from germlab.polyring import (
    ParseError,
    PolyRing,
    RingMismatchError,
    block,
    degrevlex,
    determinant,
    jacobian_matrix,
    lex,
    minors_ideal,
    negdegrevlex,
    parse_poly,
    weighted,
    weighted_local,
)

R = PolyRing(["x", "y", "z"], degrevlex())
X, Y, Z = sympy.symbols("x y z")


def P(s, ring=R):
    return parse_poly(s, ring)


def to_sympy(p):
    syms = sympy.symbols(p.ring.variables)
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[v**k for v, k in zip(syms, e)]) for e, c in p.as_dict().items()),
        sympy.Integer(0),
    )


def from_sympy(expr, ring=R):
    poly = sympy.Poly(sympy.expand(expr), *sympy.symbols(ring.variables))
    return ring.zero() + sum(
        (ring.monomial(e, Fraction(int(c.p), int(c.q))) for e, c in poly.as_dict().items()), ring.zero()
    )


coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=6)
terms = st.dictionaries(st.tuples(*[st.integers(0, 4)] * 3), coeffs, max_size=6)
polys = terms.map(lambda t: R.zero() + sum((R.monomial(e, c) for e, c in t.items()), R.zero()))


def canonical(p):
    d = p.as_dict()
    return all(c != 0 for c in d.values()) and list(p.terms) == sorted(p.terms, key=lambda t: R.order.key(t[1]), reverse=True)


# -- parsing ------------------------------------------------------------------


def test_parse_example_surface():
    p = P("x^3+y^3+z^4")
    assert len(p) == 3
    assert p.total_degree() == 4


def test_parse_zero_is_empty():
    p = P("0")
    assert p.is_zero() and p.terms == ()


def test_parse_expansion_matches_sympy():
    assert P("(x+y)^2-x^2-2*x*y") == P("y^2")
    assert to_sympy(P("(x-2/3*y)^3*(z+1)")) == sympy.expand((X - sympy.Rational(2, 3) * Y) ** 3 * (Z + 1))


def test_parse_unary_minus_and_rationals():
    assert P("-x + 1/2") == R.var("x").scale(-1) + Fraction(1, 2)
    assert P(" ( x ) * ( y ) ") == R.var("x") * R.var("y")


@pytest.mark.parametrize("text", ["2x", "x y", "x^", "x+", "(x+y", "x**2", "x^-1", "", "3/0"])
def test_parse_errors(text):
    with pytest.raises((ParseError, ZeroDivisionError, ValueError)):
        P(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        P("x + 2y")
    assert err.value.position == 5


def test_parse_unknown_variable():
    with pytest.raises(ValueError):
        P("x + w")


def test_parse_exponent_overflow():
    with pytest.raises(ParseError, match="overflow"):
        P("x^70000")


@settings(max_examples=60, deadline=None)
@given(polys)
def test_render_parse_round_trip(p):
    assert P(str(p)) == p


def test_canonical_rendering():
    # terms descend in the ring's order: low degree first for the local order
    local = PolyRing(["x", "y", "z"], negdegrevlex())
    assert str(P("-12*z^3-3*y^2-6*x^2", local)) == "-6*x^2-3*y^2-12*z^3"
    assert str(P("-12*z^3-3*y^2-6*x^2")) == "-12*z^3-6*x^2-3*y^2"
    assert str(P("1/2*x - 3/4")) == "1/2*x-3/4"


# -- arithmetic ---------------------------------------------------------------


def test_arithmetic_examples():
    assert P("x+y") + P("x-y") == P("2*x")
    assert (P("x+y") * R.zero()).is_zero()
    assert P("x+3*y^2") * P("x-3*y^2") == P("x^2-9*y^4")


def test_ring_mismatch():
    S = PolyRing(["x", "y"])
    with pytest.raises(RingMismatchError):
        P("x") + parse_poly("x", S)


@settings(max_examples=40, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == R.zero()
    for q in (a + b, a * b, a - c):
        assert canonical(q)


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_multiplication_matches_sympy(a, b):
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_leibniz(a, b):
    for v in "xyz":
        assert (a * b).diff(v) == a * b.diff(v) + b * a.diff(v)


@settings(max_examples=30, deadline=None)
@given(polys, polys, polys)
def test_compose_matches_sympy(g, a, b):
    S = PolyRing(["x", "y", "z"])
    G = g.compose(R, {"x": a, "y": b, "z": R.var("z")})
    expect = to_sympy(g).subs({X: to_sympy(a), Y: to_sympy(b)}, simultaneous=True)
    assert to_sympy(G) == sympy.expand(expect)
    assert S.nvars == 3


def test_derivatives():
    assert P("x^3+y^3+z^4").diff("z") == P("4*z^3")
    assert P("7").diff("x").is_zero()
    assert P("x^2*y^3").diff("y") == P("3*x^2*y^2")
    with pytest.raises(KeyError):
        P("x").diff("w")


# -- orders -------------------------------------------------------------------


def test_local_and_global_leading_terms():
    S = PolyRing(["x"], negdegrevlex())
    assert parse_poly("1+x", S).leading_monomial == (0,)
    T = PolyRing(["x"], degrevlex())
    assert parse_poly("1+x", T).leading_monomial == (1,)


def test_order_kinds():
    p_text = "x*y^2 + x^3 + z^5"
    assert P(p_text, PolyRing("xyz", lex())).leading_monomial == (3, 0, 0)
    assert P(p_text, PolyRing("xyz", degrevlex())).leading_monomial == (0, 0, 5)
    assert P(p_text, PolyRing("xyz", weighted([3, 1, 1]))).leading_monomial == (3, 0, 0)
    assert P(p_text, PolyRing("xyz", weighted_local([3, 1, 1]))).leading_monomial == (1, 2, 0)
    elim = block(degrevlex(), 1, degrevlex())
    assert P("y^5 + x", PolyRing("xyz", elim)).leading_monomial == (1, 0, 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(*[st.integers(0, 5)] * 3), min_size=3, max_size=3, unique=True))
def test_orders_multiplicative(es):
    a, b, c = es
    for order in (degrevlex(), lex(), negdegrevlex(), weighted([1, 2, 3]), weighted_local([2, 1, 1])):
        k = order.key
        if k(a) < k(b):
            ab = tuple(map(sum, zip(a, c)))
            bc = tuple(map(sum, zip(b, c)))
            assert k(ab) < k(bc)


# -- matrices -----------------------------------------------------------------


def test_jacobian_examples():
    S = PolyRing(["x", "y"])
    J = jacobian_matrix([parse_poly("x", S), parse_poly("y^3+x*y", S)], ["x", "y"])
    assert J == [[S.one(), S.zero()], [parse_poly("y", S), parse_poly("3*y^2+x", S)]]
    J = jacobian_matrix([P("x+y-z"), P("2*x-y-z"), P("x^3+y^3+z^4")], "xyz")
    assert J == [[P("1"), P("1"), P("-1")], [P("2"), P("-1"), P("-1")], [P("3*x^2"), P("3*y^2"), P("4*z^3")]]
    assert jacobian_matrix([P("4*x-y")], "xyz") == [[P("4"), P("-1"), P("0")]]


def test_minors_and_determinant():
    S = PolyRing(["x", "y"])
    one, zero = S.one(), S.zero()
    assert minors_ideal([[one, zero], [zero, one]], 2) == [one]
    M = [[one, zero], [parse_poly("y", S), parse_poly("3*y^2+x", S)], [one, parse_poly("6*y", S)]]
    assert minors_ideal(M, 2) == [parse_poly(s, S) for s in ("3*y^2+x", "6*y", "3*y^2-x")]
    J = jacobian_matrix([P("x+y-z"), P("2*x-y-z"), P("x^3+y^3+z^4")], "xyz")
    assert determinant(J) == P("-6*x^2-3*y^2-12*z^3")
    with pytest.raises(ValueError):
        minors_ideal(M, 3)


def test_determinant_matches_sympy():
    M = [[P("x+1"), P("y"), P("z^2")], [P("x*y"), P("2"), P("z")], [P("1"), P("x-y"), P("y*z")]]
    expect = sympy.Matrix([[to_sympy(e) for e in row] for row in M]).det()
    assert to_sympy(determinant(M)) == sympy.expand(expect)


def test_specialize():
    S = PolyRing(["x", "y", "z", "t"])
    p = parse_poly("x^6+y^6+z^3+t*x^4*z", S)
    assert p.specialize({"t": 0}) == parse_poly("x^6+y^6+z^3", S)
    assert p.specialize({"t": 1}) == parse_poly("x^6+y^6+z^3+x^4*z", S)
    assert parse_poly("x+t", S).specialize({"t": Fraction(-1, 2)}) == parse_poly("x-1/2", S)
    with pytest.raises(KeyError):
        p.specialize({"w": 1})


def test_ring_validation():
    with pytest.raises(ValueError):
        PolyRing(["x", "x"])
    with pytest.raises(ValueError):
        PolyRing(["1x"])
