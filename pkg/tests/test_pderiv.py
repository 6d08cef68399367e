import pytest
from hypothesis import given, settings

from diffpowers.errors import PNotInIdealError
from diffpowers.groebner import IdealHandle
from diffpowers.pderiv import (
    LEMMA_ITEMS,
    MixedOperator,
    apply_mixed,
    carry_term,
    delta,
    delta_power,
    delta_power_mod,
    frobenius_lift,
    instance_size,
    lemma_propdelta_check,
    lemma_suite,
    mixed_operators,
    mixed_power_member,
)
from diffpowers.poly import Ring

from strategies import polynomials

R = Ring(("x", "y"), None, 2)
x, y = R.gens()
R3 = Ring(("x", "y"), None, 3)


def test_delta_values():
    assert delta(x).is_zero()
    assert delta(x + y) == -x * y
    assert delta(R3.const(3)).constant_coefficient() == -8
    assert delta(R.one()).is_zero()
    assert delta(2 * x) == -x**2


def test_fermat_quotients():
    # oracle: (c - c^p) / p
    for p, dp, dp2 in ((2, -1, -6), (3, -8, -240), (5, -624, -1953120)):
        S = Ring(("x",), None, p)
        assert delta(S.const(p)).constant_coefficient() == dp
        assert delta(S.const(p * p)).constant_coefficient() == dp2


def test_carry_term():
    assert carry_term(x, y) == -x * y
    assert carry_term(x, R.zero()).is_zero()


def test_mixed_operators():
    f = x**3 * y
    assert apply_mixed(MixedOperator(0, (0, 0)), f) == f
    assert apply_mixed(MixedOperator(1, (1, 0)), f) == delta(3 * x**2 * y)
    assert all(op.order <= 2 for op in mixed_operators(2, 3))
    assert len(mixed_operators(1, 2)) == 3


def test_mixed_power_examples():
    Q = IdealHandle([R.const(2), x], ring=R)
    assert not mixed_power_member(R.const(2), Q, 2)
    assert mixed_power_member(R.const(4), Q, 2)
    assert mixed_power_member(x**2, Q, 2)
    assert mixed_power_member(2 * x, Q, 2)
    assert not mixed_power_member(x, Q, 2)
    with pytest.raises(PNotInIdealError):
        mixed_power_member(x, IdealHandle([x], ring=R), 2)


def test_lemma_examples():
    assert lemma_propdelta_check("1", x**2 + 3, y * x - 5, 1)
    assert lemma_propdelta_check("3", x, R.one(), 2)
    assert lemma_propdelta_check("3b", 2 * x, x, 1)


@given(polynomials(R), polynomials(R))
def test_delta_identities(f, g):
    p = 2
    assert delta(f * g) == f**p * delta(g) + g**p * delta(f) + p * delta(f) * delta(g)
    assert delta(f + g) == delta(f) + delta(g) + carry_term(f, g)
    assert frobenius_lift(f * g) == frobenius_lift(f) * frobenius_lift(g)
    assert frobenius_lift(f) == f**p + p * delta(f)


@given(polynomials(R3, 2, 3), polynomials(R3, 2, 3))
def test_delta_identities_p3(f, g):
    assert delta(f * g) == f**3 * delta(g) + g**3 * delta(f) + 3 * delta(f) * delta(g)
    assert delta(f + g) == delta(f) + delta(g) + carry_term(f, g)


@settings(max_examples=25)
@given(polynomials(R, 2, 3), polynomials(R, 2, 3))
def test_lemma_items_small(f, g):
    for item in LEMMA_ITEMS:
        assert lemma_propdelta_check(item, f, g, 1)


@settings(max_examples=20)
@given(polynomials(R, 2, 3))
def test_truncated_chain_agrees_mod_k(g):
    K = IdealHandle([R.const(2), x], ring=R)
    for a in range(3):
        assert K.contains(delta_power_mod(g, K, a) - delta_power(g, a))


def test_instance_size_grows():
    assert instance_size(2, 1, 4, 3) < instance_size(2, 2, 4, 3) < instance_size(5, 3, 4, 3)


def test_lemma_suite_small():
    res = lemma_suite(3, pairs=20, seed=1)
    assert res.passed and res.pairs == 20
    assert not res.inconclusive
    assert sum(res.by_n.values()) == 20
