"""Symbolic powers ``Q^(n)``.

In a presentation ``Z[y]/J`` the symbolic power is computed as the
saturation ``(Q^n + J : w^oo)`` for a witness ``w`` outside ``Q``.  That
equals ``Q^(n) + J`` exactly when ``w`` lies in every associated prime of
``Q^n`` other than ``Q``.  This is automatic in one common situation: ``R``
is a monomial subring (``J`` binomial) and ``Q`` is generated by
presentation variables, optionally with ``p``.  Then ``R/Q^n`` is graded by
the exponent lattice, every associated prime is again of that shape, any
strictly larger one contains a further variable, and the product of the
variables outside ``Q`` is a valid witness.  ``R/Q^n`` is also torsion free
when ``p`` is not in ``Q``, so no prime containing an integer shows up.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .diffops import differential_power_member
from .errors import PreconditionError, WitnessInPrimeError
from .groebner import IdealHandle, ideal_power, saturate
from .pderiv import mixed_power_member
from .poly import Polynomial, Ring, change_ring
from .summand import PresentedAlgebra

SATURATION_CAVEAT = "SATURATION_CAVEAT"


class Provenance(enum.Enum):
    CLOSED_FORM = "closed_form"
    VARIABLES = "variables"
    USER = "user"


@dataclass(frozen=True)
class PrimeSpec:
    """A prime of a presentation ring given by generators (``J`` excluded).

    ``family`` names a closed form when one is known; only ``"sharp"`` (the
    ruling ``(y1, y2)`` of ``y1*y3 - y2^2``) is built in.
    """

    ring: Ring
    generators: tuple[Polynomial, ...]
    contains_p: bool
    witness: Polynomial
    provenance: Provenance = Provenance.USER
    family: str | None = None
    name: str = ""

    def __str__(self):
        return self.name or "(" + ", ".join(map(str, self.generators)) + ")"

    def ideal(self, kernel: Iterable[Polynomial] = ()) -> IdealHandle:
        return IdealHandle(list(self.generators) + list(kernel), ring=self.ring)

    def validate(self, kernel: Sequence[Polynomial] = ()) -> None:
        Q = self.ideal(kernel)
        if Q.contains(self.witness):
            raise WitnessInPrimeError(f"witness {self.witness} lies in {self}")
        if self.contains_p and not Q.contains(self.ring.const(self.ring.p)):
            raise PreconditionError(f"{self} is flagged as containing p but does not")

    @classmethod
    def from_variables(cls, ring: Ring, names: Sequence[str], contains_p: bool = False,
                       family: str | None = None, name: str = "") -> PrimeSpec:
        """``(names)`` or ``(p, names)``; the witness is the product of the other variables."""
        gens = [ring.var(v) for v in names]
        if contains_p:
            gens = [ring.const(ring.p)] + gens
        w = ring.one()
        for v in ring.variables:
            if v not in names:
                w = w * ring.var(v)
        return cls(ring, tuple(gens), contains_p, w, Provenance.VARIABLES, family, name)

    @classmethod
    def maximal(cls, ring: Ring, name: str = "m") -> PrimeSpec:
        return cls.from_variables(ring, ring.variables, True, name=name)

    @classmethod
    def user(cls, ring: Ring, generators: Iterable[Polynomial], witness: Polynomial,
             contains_p: bool | None = None, name: str = "") -> PrimeSpec:
        gens = tuple(generators)
        if contains_p is None:
            contains_p = IdealHandle(gens, ring=ring).contains(ring.const(ring.p))
        return cls(ring, gens, contains_p, witness, Provenance.USER, None, name)

    def with_p(self, p: int) -> PrimeSpec:
        ring = self.ring.with_p(p)
        gens = []
        for g in self.generators:
            if g.is_constant() and g.constant_coefficient() == self.ring.p:
                gens.append(ring.const(p))
            else:
                gens.append(change_ring(g, ring))
        return PrimeSpec(ring, tuple(gens), self.contains_p, change_ring(self.witness, ring),
                         self.provenance, self.family, self.name)


@dataclass
class SymbolicPower:
    """``Q^(n) + J`` as an ideal of the presentation ring."""

    ideal: IdealHandle
    n: int
    prime: PrimeSpec
    flags: tuple[str, ...] = field(default_factory=tuple)

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        return self.ideal.generators

    def contains(self, f: Polynomial) -> bool:
        return self.ideal.contains(f)


def _binomial(g: Polynomial) -> bool:
    cs = sorted(g.terms.values())
    return cs in ([-1, 1], [1], [-1])


def _sharp_closed_form(ring: Ring, J: Sequence[Polynomial], Q: PrimeSpec, n: int):
    """``Q^(2k) = (y1^k)`` for the ruling of the quadric cone."""
    if ring.nvars != 3 or n % 2:
        return None
    y1, y2, y3 = ring.gens()
    if len(J) != 1 or J[0] not in (y1 * y3 - y2 ** 2, y2 ** 2 - y1 * y3):
        return None
    if Q.contains_p or set(Q.generators) != {y1, y2}:
        return None
    return [y1 ** (n // 2)]


def symbolic_power_generators(pres: PresentedAlgebra, Q: PrimeSpec, n: int,
                              use_closed_form: bool = True) -> SymbolicPower:
    """Generators of ``Q^(n) + J`` in the presentation ring."""
    if Q.ring != pres.ring:
        raise PreconditionError("the prime lives in a different ring than the presentation")
    toric = all(len(f.terms) == 1 for f in pres.images)
    return symbolic_power(Q, n, pres.kernel.generators, toric, use_closed_form)


def symbolic_power(Q: PrimeSpec, n: int, kernel: Sequence[Polynomial] = (), toric: bool = True,
                   use_closed_form: bool = True) -> SymbolicPower:
    """``Q^(n) + J`` in ``Q.ring`` modulo ``J = (kernel)``; ``J = 0`` for a polynomial ring.

    ``toric`` says that ``J`` comes from monomial generators, which is what
    makes variable witnesses valid.  Saturation runs over the integers even
    when ``p in Q``: reducing mod ``p`` first would compute a symbolic power
    of ``Q/p`` instead.
    """
    if n < 1:
        raise ValueError("symbolic powers are indexed by n >= 1")
    ring = Q.ring
    J = list(kernel)
    Q.validate(J)
    flags: tuple[str, ...] = ()
    if use_closed_form and Q.family == "sharp":
        gens = _sharp_closed_form(ring, J, Q, n)
        if gens is not None:
            return SymbolicPower(IdealHandle(gens + J, ring=ring), n, Q)
    if Q.provenance is Provenance.USER:
        flags = (SATURATION_CAVEAT,)
    elif not (toric and all(_binomial(j) for j in J)):
        flags = (SATURATION_CAVEAT,)
    if n == 1:
        return SymbolicPower(Q.ideal(J), 1, Q, flags)
    I = IdealHandle(list(ideal_power(Q.ideal(), n).generators) + J, ring=ring)
    if Q.witness.is_constant():
        return SymbolicPower(IdealHandle(I.basis(), ring=ring), n, Q, flags)
    return SymbolicPower(saturate(I, Q.witness), n, Q, flags)


def symbolic_member(f: Polynomial, pres: PresentedAlgebra, Q: PrimeSpec, n: int) -> bool:
    return symbolic_power_generators(pres, Q, n).contains(f)


def symbolic_member_via_differential(f: Polynomial, Q: IdealHandle, n: int) -> bool:
    """``f in Q^(n)`` for a prime ``Q`` of a polynomial ring over Z.

    Uses the mixed power when ``p in Q`` and the differential power
    otherwise; both agree with the symbolic power there.
    """
    if Q.contains(Q.ring.const(Q.ring.p)):
        return mixed_power_member(f, Q, n, check_p=False)
    return differential_power_member(f, Q, n)

