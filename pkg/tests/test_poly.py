import pytest
from hypothesis import given

from diffpowers.errors import NonExactDivisionError, ParseError, RingMismatchError, ZeroPolynomialError
from diffpowers.poly import (
    Ring,
    apply_endomorphism,
    change_ring,
    exact_div_int,
    format_polynomial,
    is_homogeneous,
    parse,
    reduce_mod_p,
    weighted_degree,
)

from strategies import polynomials

R = Ring(("x", "y"), None, 2)
x, y = R.gens()


def test_difference_of_squares():
    assert (x + y) * (x - y) == x**2 - y**2
    assert (x + y) * R.one() == x + y


def test_square_mod_2():
    # oracle: sympy Poly(..., modulus=2) gives x**2 + y**2
    assert reduce_mod_p((x + y) ** 2) == parse("x^2 + y^2", R.mod_p())
    assert (parse("x+y", R.mod_p())) ** 2 == parse("x^2+y^2", R.mod_p())


def test_exact_division():
    assert exact_div_int(parse("2*x^2 + 4*y", R), 2) == parse("x^2 + 2*y", R)
    assert exact_div_int((x + y) ** 2 - x**2 - y**2, 2) == x * y
    with pytest.raises(NonExactDivisionError):
        exact_div_int(x + 1, 2)


def test_weighted_degree():
    assert weighted_degree(parse("s^2*t^2", Ring(("s", "t"), None, 2))) == 4
    W = Ring(("x", "y"), (2, 1), 2)
    assert weighted_degree(parse("x + y^2", W)) == 2
    assert not is_homogeneous(parse("x + y", W))
    with pytest.raises(ZeroPolynomialError):
        weighted_degree(W.zero())


def test_endomorphism():
    R1 = Ring(("x",), None, 2)
    assert apply_endomorphism(R1.var(0) + 1, [R1.var(0) ** 2]) == parse("x^2 + 1", R1)
    assert apply_endomorphism(x * y, [x**2, y**2]) == x**2 * y**2
    assert apply_endomorphism(x + y, [x**2, y**2]) == x**2 + y**2


def test_parse_and_format():
    f = parse("x^2*y - 3*y^3", R)
    assert dict(f.terms) == {(2, 1): 1, (0, 3): -3}
    assert parse("0", R).is_zero()
    assert parse("p^2", R.with_p(3)) == R.with_p(3).const(9)
    with pytest.raises(ParseError):
        parse("x^-1", R)
    with pytest.raises(ParseError):
        parse("x + q", R)


def test_reduce_mod_p():
    assert reduce_mod_p(parse("2*x + 3*y", R)) == parse("y", R.mod_p())
    assert reduce_mod_p(2 * (x**3 + 5 * y)).is_zero()
    R3 = Ring(("x",), None, 3)
    assert reduce_mod_p(R3.const(-1)).constant_coefficient() == 2


def test_ring_mismatch():
    other = Ring(("x", "z"), None, 2)
    with pytest.raises(RingMismatchError):
        x + other.var(0)
    assert change_ring(x, other) == other.var(0)
    with pytest.raises(RingMismatchError):
        change_ring(y, other)


@given(polynomials(R), polynomials(R), polynomials(R))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == R.zero()


@given(polynomials(R, max_degree=4, coeff=30))
def test_format_roundtrip(f):
    assert parse(format_polynomial(f), R) == f


@given(polynomials(R), polynomials(R))
def test_reduction_is_a_homomorphism(f, g):
    assert reduce_mod_p(f * g) == reduce_mod_p(f) * reduce_mod_p(g)
    assert reduce_mod_p(f + g) == reduce_mod_p(f) + reduce_mod_p(g)
