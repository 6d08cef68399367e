import pytest

from diffpowers.errors import PreconditionError, WitnessInPrimeError
from diffpowers.groebner import IdealHandle
from diffpowers.poly import Ring, parse
from diffpowers.summand import SummandSpec, presentation
from diffpowers.symbolic import (
    SATURATION_CAVEAT,
    PrimeSpec,
    symbolic_member_via_differential,
    symbolic_power,
    symbolic_power_generators,
)

# (Q^n + J : y3^oo) for Q = (y1, y2), J = (y1*y3 - y2^2); sympy lex saturation over Q,
# translated x, y, z -> y1, y2, y3
ORACLE_SHARP = {
    1: ["y1", "y2"],
    2: ["y1", "y2^2"],
    3: ["y1^2", "y1*y2", "y1*y3 - y2^2", "y2^3"],
    4: ["y1^2", "y1*y2^2", "y1*y3 - y2^2", "y2^4"],
    5: ["y1^2*y2", "y1^3", "y1*y2^3", "y1*y3 - y2^2", "y2^5"],
    6: ["y1^2*y2^2", "y1^3", "y1*y2^4", "y1*y3 - y2^2", "y2^6"],
}


def sharp(p=2):
    ring = Ring(("s", "t"), None, p)
    pres = presentation(SummandSpec.invariant(ring, "diagonal", [[-1, -1]]))
    return pres, PrimeSpec.from_variables(pres.ring, ["y1", "y2"], family="sharp")


def same(sp, texts, ring):
    other = IdealHandle([parse(g, ring) for g in texts], ring=ring)
    return all(other.contains(g) for g in sp.generators) and all(sp.contains(g) for g in other.generators)


@pytest.mark.parametrize("n", range(1, 7))
def test_saturation_matches_oracle(n):
    pres, Q = sharp()
    sp = symbolic_power_generators(pres, Q, n, use_closed_form=False)
    assert same(sp, ORACLE_SHARP[n] + ["y1*y3 - y2^2"], pres.ring)
    assert SATURATION_CAVEAT not in sp.flags


@pytest.mark.parametrize("p", [2, 3])
def test_closed_form_even_powers(p):
    pres, Q = sharp(p)
    y1 = pres.ring.var("y1")
    for k in (1, 2, 3):
        closed = symbolic_power_generators(pres, Q, 2 * k)
        assert closed.contains(y1**k)
        assert same(closed, ORACLE_SHARP[2 * k], pres.ring)


def test_first_power_is_the_prime():
    pres, Q = sharp()
    assert same(symbolic_power_generators(pres, Q, 1), ["y1", "y2", "y1*y3 - y2^2"], pres.ring)


def test_primes_with_p():
    pres, _ = sharp(3)
    Qp = PrimeSpec.from_variables(pres.ring, ["y1", "y2"], contains_p=True)
    sp = symbolic_power_generators(pres, Qp, 2)
    assert sp.contains(pres.ring.const(9))
    assert not sp.contains(pres.ring.const(3))
    assert sp.contains(pres.ring.var("y1"))


def test_user_prime_is_flagged():
    pres, _ = sharp()
    y1, y2, y3 = pres.ring.gens()
    Q = PrimeSpec.user(pres.ring, [y1, y2], y3)
    assert SATURATION_CAVEAT in symbolic_power_generators(pres, Q, 2).flags


def test_bad_witness_and_flags():
    pres, _ = sharp()
    y1, y2, y3 = pres.ring.gens()
    with pytest.raises(WitnessInPrimeError):
        symbolic_power_generators(pres, PrimeSpec.user(pres.ring, [y1, y2], y1), 2)
    bad = PrimeSpec(pres.ring, (y1, y2), True, y3)
    with pytest.raises(PreconditionError):
        symbolic_power_generators(pres, bad, 2)
    with pytest.raises(ValueError):
        symbolic_power_generators(pres, PrimeSpec.user(pres.ring, [y1, y2], y3), 0)


def test_polynomial_ring_symbolic_is_ordinary_power():
    R = Ring(("x", "y"), None, 2)
    x, y = R.gens()
    Q = PrimeSpec.from_variables(R, ["x"])
    sp = symbolic_power(Q, 3)
    assert sp.contains(x**3) and not sp.contains(x**2 * y)


def test_via_differential():
    R = Ring(("x1", "x2"), None, 2)
    x1, x2 = R.gens()
    Qp = IdealHandle([R.const(2), x1], ring=R)
    assert not symbolic_member_via_differential(R.const(2), Qp, 2)
    assert symbolic_member_via_differential(R.const(4), Qp, 2)
    Q = IdealHandle([x1], ring=R)
    assert not symbolic_member_via_differential(x1 * x2, Q, 2)
    assert symbolic_member_via_differential(x1 * x2, Q, 1)
