import random

import pytest
from hypothesis import given, settings

from diffpowers.errors import BudgetExceededError, InconclusiveError
from diffpowers.groebner import (
    IdealHandle,
    MonomialOrder,
    elimination_ideal,
    groebner_basis,
    ideal_power,
    ideal_sum,
    is_groebner,
    member,
    member_bruteforce,
    normal_form,
    saturate,
    set_budget,
)
from diffpowers.poly import Ring, parse

from strategies import homogeneous, polynomials

R = Ring(("x", "y"), None, 2)
x, y = R.gens()


def same_ideal(I, J):
    return all(J.contains(g) for g in I.generators) and all(I.contains(g) for g in J.generators)


def test_principal_mod_p():
    F = R.mod_p()
    assert groebner_basis(IdealHandle([F.var(0)], ring=F)) == [F.var(0)]


def test_strong_basis_has_bezout_combination():
    # -(2x)y + (3y)x = xy
    I = IdealHandle([2 * x, 3 * y], ring=R)
    assert x * y in I.basis()
    assert is_groebner(I)


def test_lex_basis():
    S = Ring(("z", "y", "x"), None, 2)
    z, yy, xx = S.gens()
    I = IdealHandle([xx * z - yy**2, xx], order=MonomialOrder.lex(), ring=S)
    assert sorted(map(str, I.basis())) == ["x", "y^2"]


def test_membership_over_z():
    # oracle: sympy HNF of the degree-wise column lattice
    R1 = Ring(("x",), None, 3)
    v = R1.var(0)
    assert member(v**2, IdealHandle([v], ring=R1))
    assert not member(v, IdealHandle([2 * v], ring=R1))
    assert not member(v.ring.mod_p().var(0), IdealHandle([R1.mod_p().var(0) * 3], ring=R1.mod_p()))
    assert member(2 * v, IdealHandle([2 * v], ring=R1))
    assert member(6 * x * y, IdealHandle([4 * x, 6 * y], ring=R))
    assert not member(x * y, IdealHandle([4 * x, 6 * y], ring=R))


def test_membership_with_relation():
    S = Ring(("x", "y", "z"), None, 2)
    X, Y, Z = S.gens()
    assert member(Y**2, IdealHandle([X * Z - Y**2, X], ring=S))


def test_normal_form_of_member_is_zero():
    I = IdealHandle([x**2 - y, x * y], ring=R)
    assert normal_form(x**3, I).is_zero()
    assert not normal_form(x, I).is_zero()


def test_elimination():
    S = Ring(("x", "y"), None, 2)
    assert elimination_ideal(IdealHandle([S.var(1) - S.var(0) ** 2], ring=S), ["y"]).generators == ()
    E = Ring(("s", "t", "a", "b", "c"), None, 2)
    s, t, a, b, c = E.gens()
    K = elimination_ideal(IdealHandle([a - s**2, b - s * t, c - t**2], ring=E), ["a", "b", "c"])
    assert [str(g) for g in K.generators] in (["a*c - b^2"], ["-a*c + b^2"])
    U = Ring(("x", "u", "v"), None, 2)
    xu, u, v = U.gens()
    K = elimination_ideal(IdealHandle([u - xu, v - xu], ring=U), ["u", "v"])
    assert [str(g) for g in K.generators] in (["u - v"], ["-u + v"])


def test_saturation():
    S = Ring(("x", "y", "z"), None, 2)
    X, Y, Z = S.gens()
    assert saturate(IdealHandle([X**2 * Y], ring=S), Y).generators == (X**2,)
    assert same_ideal(saturate(IdealHandle([X], ring=S), Y), IdealHandle([X], ring=S))
    sat = saturate(IdealHandle([X**2, X * Y, Y**2, X * Z - Y**2], ring=S), Z)
    assert sat.contains(X)
    assert same_ideal(sat, IdealHandle([X, Y**2], ring=S))


def test_power_and_sum():
    P = ideal_power(IdealHandle([x, y], ring=R), 2)
    assert sorted(map(str, P.generators)) == ["x*y", "x^2", "y^2"]
    assert member(x * y, ideal_sum(IdealHandle([x], ring=R), IdealHandle([y], ring=R)))


def test_bruteforce_examples():
    assert member_bruteforce(x * y, IdealHandle([2 * x, 3 * y], ring=R), 2)
    assert not member_bruteforce(x, IdealHandle([2 * x], ring=R), 1)
    assert member_bruteforce(x**2, IdealHandle([x], ring=R))
    with pytest.raises(InconclusiveError):
        member_bruteforce(x**2, IdealHandle([x], ring=R), 1)


def test_budget_is_enforced():
    S = Ring(("x", "y", "z"), None, 2)
    X, Y, Z = S.gens()
    set_budget(1)
    try:
        with pytest.raises(BudgetExceededError):
            IdealHandle([X**3 - Y * Z, Y**3 - X * Z, Z**3 - X * Y, 6 * X * Y * Z], ring=S).basis()
    finally:
        set_budget(None)


@settings(max_examples=40)
@given(polynomials(R, 2, 3), polynomials(R, 2, 3), polynomials(R, 3, 3))
def test_normal_form_properties(g1, g2, f):
    I = IdealHandle([g for g in (g1, g2) if not g.is_zero()] or [x], ring=R)
    r = normal_form(f, I)
    assert member(f - r, I)
    assert normal_form(r, I) == r
    assert member(f * g1, I) or g1.is_zero()


@settings(max_examples=40)
@given(homogeneous(R, 1, 2), homogeneous(R, 2, 3), homogeneous(R, 3, 4))
def test_member_agrees_with_bruteforce(g1, g2, f):
    gens = [g for g in (g1, g2) if not g.is_zero()]
    if not gens or f.is_zero():
        return
    I = IdealHandle(gens, ring=R)
    assert member(f, I) == member_bruteforce(f, I)


def test_member_agrees_with_bruteforce_mod_p():
    rng = random.Random(3)
    F = Ring(("x", "y", "z"), None, 3).mod_p()
    for _ in range(30):
        gens = [parse(f"{rng.randint(1, 2)}*x^2 + {rng.randint(0, 2)}*y*z", F),
                parse(f"y^2 - {rng.randint(0, 2)}*x*z", F)]
        f = parse(f"x^2*y*z - {rng.randint(0, 2)}*x^4 + {rng.randint(0, 2)}*y^4", F)
        if f.is_zero() or not all(g.terms for g in gens):
            continue
        I = IdealHandle([g for g in gens if not g.is_zero()], ring=F)
        assert member(f, I) == member_bruteforce(f, I)
