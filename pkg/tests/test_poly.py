from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliation_linfty import Multivector, ParseError, PolyRing, VectorField, interior_product, lie_bracket, schouten_bracket
from foliation_linfty.poly import differential, format_poly, grevlex_key

R = PolyRing(["x", "y", "z"])
x, y, z = R.gens()

terms = st.dictionaries(
    st.tuples(*[st.integers(0, 2)] * 3),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=4,
)
polys = terms.map(lambda t: R.monomial((0, 0, 0), 0) + sum((R.monomial(m, c) for m, c in t.items()), R.zero))
fields = st.tuples(polys, polys, polys).map(lambda c: VectorField(R, c))


def test_parse_basic():
    assert R.parse("3*x^2 + 2x*y - 3/4 y") == x**2 * 3 + x * y * 2 - y * Fraction(3, 4)
    assert R.parse("(x+y)^2") == x * x + x * y * 2 + y * y
    assert R.parse("-x") == -x
    assert R.parse("2^3") == R.const(8)


def test_format_is_readable():
    assert format_poly(R.parse("3*x^2 + 2*x*y - 3/4*y")) == "3*x^2 + 2*x*y - 3/4*y"
    assert str(R.zero) == "0"


@pytest.mark.parametrize(
    "text,col",
    [("x^", 2), ("x + ", 5), ("x $ y", 3), ("(x", 3), ("q", 1), ("1/0", 3), ("", 1)],
)
def test_parse_errors_carry_column(text, col):
    with pytest.raises(ParseError) as err:
        R.parse(text)
    assert err.value.col == col


def test_grevlex_order():
    # x > y > z, degree first, then reverse lexicographic
    mons = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1)]
    ordered = sorted(mons, key=grevlex_key, reverse=True)
    assert ordered == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1)]


@settings(max_examples=60, deadline=None)
@given(polys)
def test_format_parse_round_trip(p):
    assert R.parse(str(p)) == p


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_leibniz_rule_for_derivatives(a, b):
    for i in range(3):
        assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)


@settings(max_examples=30, deadline=None)
@given(fields, fields, fields)
def test_lie_bracket_jacobi(X, Y, Z):
    J = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))
    assert J.is_zero()
    assert (lie_bracket(X, Y) + lie_bracket(Y, X)).is_zero()


@settings(max_examples=30, deadline=None)
@given(fields, fields, polys)
def test_lie_bracket_acts_as_commutator(X, Y, f):
    assert lie_bracket(X, Y)(f) == X(Y(f)) - Y(X(f))


def test_shift_and_eval():
    p = R.parse("x^2*y - z + 1")
    q = p.substitute_shift((1, 2, 3))
    assert q.eval((0, 0, 0)) == p.eval((1, 2, 3))
    assert q.eval((1, 1, 1)) == p.eval((2, 3, 4))


def test_schouten_on_vector_fields_and_functions():
    X = VectorField(R, [y, -x, R.zero])
    Y = VectorField(R, [z, R.zero, x * x])
    PX, PY = Multivector.from_vector_field(X), Multivector.from_vector_field(Y)
    assert schouten_bracket(PX, PY).to_vector_field() == lie_bracket(X, Y)
    f = x * y + z
    assert schouten_bracket(PX, Multivector.function(f)).to_function() == X(f)


def test_schouten_bivector_with_function_is_minus_contraction():
    P = Multivector(R, 2, {(0, 1): z, (1, 2): x})
    S = x * x + y * y + z * z
    lhs = schouten_bracket(P, Multivector.function(S))
    rhs = interior_product(differential(S), P)
    assert lhs == -rhs


@settings(max_examples=20, deadline=None)
@given(polys, polys, polys, polys)
def test_schouten_jacobi_on_bivectors(a, b, c, d):
    P = Multivector(R, 2, {(0, 1): a, (1, 2): b})
    Q = Multivector(R, 1, {(0,): c, (2,): d})
    f = Multivector.function(a * c + x)
    # graded Jacobi for degrees (2, 1, 0) in the shifted grading (1, 0, -1)
    lhs = schouten_bracket(P, schouten_bracket(Q, f))
    rhs = schouten_bracket(schouten_bracket(P, Q), f) + schouten_bracket(Q, schouten_bracket(P, f))
    assert lhs == rhs


def test_poly_eval_examples():
    from foliation_linfty import poly_eval

    assert poly_eval(R.parse("x^2*y"), (2, 3, 0)) == 12
    assert poly_eval(R.zero, (5, 1, 2)) == 0


def test_schouten_examples():
    P = Multivector(R, 2, {(0, 1): R.one})
    out = schouten_bracket(P, Multivector.function(x * x + y * y))
    # [P, S] = -i_dS P = -(2x dy - 2y dx)
    assert out.to_vector_field() == VectorField(R, [y * 2, x * -2, R.zero])
    X, Y = Multivector(R, 1, {(0,): R.one}), Multivector(R, 1, {(1,): R.one})
    XY = X.wedge(Y)
    assert schouten_bracket(XY, XY).is_zero()


def test_interior_product_squares_to_zero():
    omega = [x, y * z, R.one]
    P = Multivector(R, 3, {(0, 1, 2): x + y})
    assert interior_product(omega, interior_product(omega, P)).is_zero()
    from foliation_linfty import DimensionMismatch

    with pytest.raises(DimensionMismatch):
        interior_product(omega, Multivector.function(x))
