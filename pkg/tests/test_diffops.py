from math import factorial

import pytest
from hypothesis import given, settings

from diffpowers.diffops import (
    DividedPartial,
    apply_divided_partial,
    differential_power_member,
    enumerate_operators,
    leibniz_terms,
    multi_indices,
)
from diffpowers.groebner import IdealHandle
from diffpowers.poly import Ring

from strategies import polynomials

R = Ring(("x", "y"), None, 2)
x, y = R.gens()


def test_divided_partials():
    R1 = Ring(("x",), None, 2)
    assert apply_divided_partial((2,), R1.var(0) ** 5) == 10 * R1.var(0) ** 3
    assert apply_divided_partial((1, 1), x * y) == R.one()
    f = x**3 + 7 * x * y
    assert apply_divided_partial((0, 0), f) == f
    assert DividedPartial((1, 0))(f) == 3 * x**2 + 7 * y
    with pytest.raises(ValueError):
        apply_divided_partial((1,), f)


def test_operator_counts():
    assert {op.alpha for op in enumerate_operators(1, R)} == {(0, 0), (1, 0), (0, 1)}
    assert len(enumerate_operators(3, Ring(("x",), None, 2))) == 4
    assert len(enumerate_operators(2, Ring(("x", "y", "z"), None, 2))) == 10
    assert all(op.order <= 2 for op in enumerate_operators(2, R))


def test_differential_power_examples():
    I = IdealHandle([x], ring=R)
    assert differential_power_member(x**2, I, 2)
    assert not differential_power_member(x, I, 2)
    assert differential_power_member(x * y, I, 1)
    assert not differential_power_member(x * y, I, 2)
    with pytest.raises(ValueError):
        differential_power_member(x, I, 0)


@given(polynomials(R), polynomials(R))
def test_leibniz_rule(f, g):
    for alpha in multi_indices(2, 3):
        rhs = R.zero()
        for beta, gamma in leibniz_terms(alpha):
            rhs = rhs + apply_divided_partial(beta, f) * apply_divided_partial(gamma, g)
        assert apply_divided_partial(alpha, f * g) == rhs


@given(polynomials(R, max_degree=5))
def test_iterated_partial_is_factorial_multiple(f):
    g = f
    for k in range(1, 4):
        g = apply_divided_partial((1, 0), g)
        assert g == apply_divided_partial((k, 0), f).scale(factorial(k))


@settings(max_examples=30)
@given(polynomials(R, max_degree=4))
def test_linear_prime_is_order_of_vanishing(f):
    # in (x)^<n> iff every term has x-degree >= n
    I = IdealHandle([x], ring=R)
    for n in range(1, 4):
        expected = all(e[0] >= n for e in f.terms)
        assert differential_power_member(f, I, n) == expected
