"""Graded direct summands ``R = Z[f_1, ..., f_t] ⊆ S`` and the power ``D(n)``.

Four families are supported, all with unit weights on ``S``:

* ``veronese(ring, D)``: all monomials of degree ``D``;
* ``segre(ring, left, right)``: products ``y_i z_j`` of two variable blocks;
* ``monomial(ring, monomials)``: a normal monomial subring whose exponent
  semigroup is ``L ∩ N^m`` for the lattice ``L`` it spans, with ``L`` of
  finite index;
* ``invariant(ring, kind, elements)``: invariants of a diagonal sign group or
  of a permutation group.

Elements of ``R`` are always handled in image form, i.e. as polynomials of
``S``.  The splitting ``beta`` keeps the monomials of degree class zero for
the first three families and for sign groups; for permutation groups it is
the Reynolds operator, which needs ``|G|`` prime to ``p``.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from itertools import product
from math import comb, gcd
from typing import Iterable, Sequence

from .diffops import apply_divided_partial, multi_indices
from .errors import (
    GeneratorBoundExceededError,
    MixedPowerUnavailableError,
    NotInSummandError,
    PNotInIdealError,
    PreconditionError,
    ReynoldsNotDefinedError,
)
from .groebner import (
    IdealHandle,
    MonomialOrder,
    _Lattice,
    elimination_ideal,
    monomials_of_degree,
)
from .pderiv import delta, frobenius_lift, mixed_power_member, truncated_delta_chain
from .poly import Domain, Polynomial, Ring, change_ring, is_homogeneous, lift, reduce_mod_p

DEFAULT_GENERATOR_CAP_FACTOR = 4


class Family(enum.Enum):
    VERONESE = "veronese"
    SEGRE = "segre"
    MONOMIAL = "monomial"
    INVARIANT = "invariant"


class Mode(enum.Enum):
    INTEGRAL = "integral"
    MOD_P = "mod_p"


@dataclass(frozen=True)
class SummandSpec:
    """A summand family instance.

    ``params`` holds the family data: ``(D,)`` for Veronese, the two blocks of
    variable indices for Segre, the lattice basis for monomial subrings and
    ``(kind, group elements)`` for invariants.
    """

    family: Family
    ring: Ring
    generators: tuple[Polynomial, ...]
    params: tuple = ()
    differentially_extensible: bool = False
    name: str = ""

    @property
    def D(self) -> int:
        return max(g.total_degree() for g in self.generators)

    @property
    def group_order(self) -> int:
        if self.family is not Family.INVARIANT:
            return 1
        return len(self.params[1])

    @property
    def _needs_reynolds(self) -> bool:
        return self.family is Family.INVARIANT and self.params[0] == "permutation"

    def __str__(self):
        return self.name or f"{self.family.value}({', '.join(map(str, self.generators))})"

    # -- constructors --------------------------------------------------------

    @classmethod
    def veronese(cls, ring: Ring, D: int, differentially_extensible: bool | None = None):
        _unit_weights(ring)
        if D < 1:
            raise ValueError("Veronese degree must be >= 1")
        gens = _sorted_desc([ring.monomial(e) for e in monomials_of_degree(ring, D)])
        if differentially_extensible is None:
            differentially_extensible = ring.nvars >= 2
        return cls(Family.VERONESE, ring, tuple(gens), (D,), differentially_extensible,
                   f"veronese(D={D}, {','.join(ring.variables)})")

    @classmethod
    def segre(cls, ring: Ring, left: Sequence[str], right: Sequence[str],
              differentially_extensible: bool = False):
        _unit_weights(ring)
        li = tuple(ring.index(v) for v in left)
        ri = tuple(ring.index(v) for v in right)
        if set(li) & set(ri) or set(li) | set(ri) != set(range(ring.nvars)):
            raise ValueError("Segre blocks must partition the variables")
        gens = _sorted_desc([ring.var(a) * ring.var(b) for a in li for b in ri])
        return cls(Family.SEGRE, ring, tuple(gens), (li, ri), differentially_extensible,
                   f"segre({','.join(left)} | {','.join(right)})")

    @classmethod
    def monomial(cls, ring: Ring, monomials: Iterable[Polynomial],
                 differentially_extensible: bool = False):
        _unit_weights(ring)
        gens = []
        for m in monomials:
            if len(m.terms) != 1 or next(iter(m.terms.values())) != 1:
                raise ValueError(f"{m} is not a monic monomial")
            gens.append(m)
        gens = _sorted_desc(gens)
        basis = tuple(next(iter(g.terms)) for g in gens)
        spec = cls(Family.MONOMIAL, ring, tuple(gens), (basis,), differentially_extensible,
                   f"monomial({', '.join(map(str, gens))})")
        _lattice_steps(spec)
        return spec

    @classmethod
    def invariant(cls, ring: Ring, kind: str, elements: Iterable[Sequence[int]],
                  differentially_extensible: bool = False):
        """``kind`` is ``"diagonal"`` (sign vectors) or ``"permutation"``
        (images of variable indices); ``elements`` generate the group."""
        _unit_weights(ring)
        m = ring.nvars
        gens_in = [tuple(e) for e in elements]
        if kind == "diagonal":
            for e in gens_in:
                if len(e) != m or any(s not in (1, -1) for s in e):
                    raise ValueError(f"{e} is not a sign vector of length {m}")
            group = _closure(gens_in, lambda a, b: tuple(x * y for x, y in zip(a, b)), (1,) * m)
        elif kind == "permutation":
            for e in gens_in:
                if sorted(e) != list(range(m)):
                    raise ValueError(f"{e} is not a permutation of {m} indices")
            group = _closure(gens_in, lambda a, b: tuple(a[b[i]] for i in range(m)), tuple(range(m)))
        else:
            raise ValueError(f"unknown group kind {kind!r}")
        group = tuple(sorted(group))
        if kind == "permutation" and gcd(len(group), ring.p) != 1:
            raise PreconditionError(f"group order {len(group)} is not coprime to p = {ring.p}")
        spec = cls(Family.INVARIANT, ring, (), (kind, group), differentially_extensible)
        gens = _invariant_generators(spec)
        return cls(Family.INVARIANT, ring, tuple(gens), (kind, group), differentially_extensible,
                   f"invariant({kind}, |G|={len(group)}, {','.join(ring.variables)})")

    def with_p(self, p: int) -> SummandSpec:
        ring = self.ring.with_p(p)
        if self._needs_reynolds and gcd(self.group_order, p) != 1:
            raise PreconditionError(f"group order {self.group_order} is not coprime to p = {p}")
        gens = tuple(change_ring(g, ring) for g in self.generators)
        return SummandSpec(self.family, ring, gens, self.params, self.differentially_extensible, self.name)


def _unit_weights(ring: Ring):
    if any(w != 1 for w in ring.weights):
        raise PreconditionError("summand families are implemented for unit weights only")
    if ring.is_modular:
        raise PreconditionError("summands are built over the integers")


def _sorted_desc(polys):
    return sorted(polys, key=lambda f: max(f.terms), reverse=True)


def _closure(gens, mul, identity):
    group = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = mul(a, g)
                if c not in group:
                    group.add(c)
                    nxt.append(c)
        frontier = nxt
    return group


# ---------------------------------------------------------------------------
# degree classes and the splitting

def _act(spec: SummandSpec, elem, e, c):
    """Image of the term ``c*x^e`` under a group element."""
    kind = spec.params[0]
    if kind == "diagonal":
        sign = 1
        for s, k in zip(elem, e):
            if s < 0 and k % 2:
                sign = -sign
        return e, sign * c
    # x_i -> x_{elem[i]}
    ne = [0] * len(e)
    for i, k in enumerate(e):
        ne[elem[i]] += k
    return tuple(ne), c


def _lattice_steps(spec: SummandSpec) -> tuple[int, ...]:
    """Smallest ``k_i > 0`` with ``k_i e_i`` in the exponent lattice."""
    basis = spec.params[0]
    lat = _Lattice()
    for b in basis:
        lat.insert({i: v for i, v in enumerate(b) if v})
    m = spec.ring.nvars
    steps = []
    for i in range(m):
        for k in range(1, 4 * spec.D * max(1, m) + 1):
            if lat.contains({i: k}):
                steps.append(k)
                break
        else:
            raise PreconditionError(
                f"variable {spec.ring.variables[i]} has no pure power in the exponent lattice; "
                "monomial subrings must span a finite-index lattice")
    return tuple(steps)


_LATTICES: dict = {}


def _in_lattice(spec: SummandSpec, e) -> bool:
    lat = _LATTICES.get(spec)
    if lat is None:
        lat = _Lattice()
        for b in spec.params[0]:
            lat.insert({i: v for i, v in enumerate(b) if v})
        _LATTICES[spec] = lat
    return lat.contains({i: v for i, v in enumerate(e) if v})


def degree_class(spec: SummandSpec, e):
    """The grading class of the monomial ``x^e``; ``beta`` keeps class zero."""
    fam = spec.family
    if fam is Family.VERONESE:
        return sum(e) % spec.params[0]
    if fam is Family.SEGRE:
        li, ri = spec.params
        return sum(e[i] for i in li) - sum(e[i] for i in ri)
    if fam is Family.MONOMIAL:
        # reduced exponents refine the coset of the lattice
        if _in_lattice(spec, e):
            return 0
        return tuple(k % s for k, s in zip(e, _lattice_steps(spec)))
    return None


def beta_apply(spec: SummandSpec, g: Polynomial, mode: Mode | None = None) -> Polynomial:
    """The graded splitting ``S -> R`` (``S̄ -> R̄`` on mod-p input)."""
    if mode is None:
        mode = Mode.MOD_P if g.ring.is_modular else Mode.INTEGRAL
    if mode is Mode.MOD_P and not g.ring.is_modular:
        g = reduce_mod_p(g)
    fam = spec.family
    if fam is Family.VERONESE:
        D = spec.params[0]
        return Polynomial._raw(g.ring, {e: c for e, c in g.terms.items() if sum(e) % D == 0})
    if fam is Family.SEGRE:
        li, ri = spec.params
        return Polynomial._raw(g.ring, {
            e: c for e, c in g.terms.items()
            if sum(e[i] for i in li) == sum(e[i] for i in ri)})
    if fam is Family.MONOMIAL:
        return Polynomial._raw(g.ring, {e: c for e, c in g.terms.items() if _in_lattice(spec, e)})
    if not spec._needs_reynolds:
        # sign groups: invariants are spanned by invariant monomials, so
        # keeping those is a splitting for every p (Reynolds when |G| is a unit)
        return Polynomial._raw(g.ring, {e: c for e, c in g.terms.items() if _sign_invariant(spec, e)})
    return _reynolds(spec, g, mode)


def _sign_invariant(spec: SummandSpec, e) -> bool:
    return all(_act(spec, elem, e, 1)[1] == 1 for elem in spec.params[1])


def _reynolds(spec: SummandSpec, g: Polynomial, mode: Mode) -> Polynomial:
    group = spec.params[1]
    order = len(group)
    acc: dict = {}
    for elem in group:
        for e, c in g.terms.items():
            ne, nc = _act(spec, elem, e, c)
            acc[ne] = acc.get(ne, 0) + nc
    if mode is Mode.MOD_P:
        p = g.ring.p
        inv = pow(order, -1, p)
        return Polynomial(g.ring, {e: c * inv for e, c in acc.items()})
    out = {}
    for e, c in acc.items():
        if c % order:
            raise ReynoldsNotDefinedError(
                f"averaging over a group of order {order} is not integral on {g}")
        out[e] = c // order
    return Polynomial(g.ring, out)


@dataclass(frozen=True)
class Splitting:
    """``beta`` for a spec in a fixed mode; callable."""

    spec: SummandSpec
    mode: Mode = Mode.INTEGRAL

    def __call__(self, g: Polynomial) -> Polynomial:
        return beta_apply(self.spec, g, self.mode)


# ---------------------------------------------------------------------------
# invariant generators and module generators

def _invariant_generators(spec: SummandSpec) -> list[Polynomial]:
    ring = spec.ring
    kind, group = spec.params
    m = ring.nvars
    if kind == "diagonal":
        # minimal invariant monomials; their degree is at most |G|
        found: list[tuple[int, ...]] = []
        for d in range(1, len(group) + 1):
            for e in monomials_of_degree(ring, d):
                if not _sign_invariant(spec, e):
                    continue
                if any(all(a <= b for a, b in zip(f, e)) for f in found):
                    continue
                found.append(e)
        return _sorted_desc([ring.monomial(e) for e in found])
    # orbit sums up to the bound max(m, C(m, 2)) generate over Z; prune
    bound = max(m, comb(m, 2), 1)
    gens: list[Polynomial] = []
    seen = set()
    for d in range(1, bound + 1):
        for e in monomials_of_degree(ring, d):
            orbit = frozenset(_act(spec, g, e, 1)[0] for g in group)
            if orbit in seen:
                continue
            seen.add(orbit)
            o = Polynomial(ring, {x: 1 for x in orbit})
            if gens and _subalgebra_rep(ring, tuple(gens), o) is not None:
                continue
            gens.append(o)
    return _sorted_desc(gens)


def generator_cap(spec: SummandSpec) -> int:
    return DEFAULT_GENERATOR_CAP_FACTOR * spec.D


_MODULE_GENS: dict = {}
_MODULE_LOCK = threading.Lock()


def invariant_module_generators(spec: SummandSpec, cap: int | None = None) -> list[Polynomial]:
    """Monomials generating ``S̄`` as an ``R̄``-module, found degree by degree.

    For sign groups squarefree monomials suffice (degree <= m); for
    permutation groups the descending monomials ``x^e`` with ``e_i <= i``
    do (degree <= C(m, 2)).  The search runs to that degree and keeps only
    the monomials not already in the span of lower generators times ``R̄``.
    """
    cap = generator_cap(spec) if cap is None else cap
    kind, group = spec.params
    m = spec.ring.nvars
    top = m if kind == "diagonal" else comb(m, 2)
    if top > cap:
        raise GeneratorBoundExceededError(
            f"module generators may reach degree {top}, above the cap {cap}")
    ck = (spec, cap)
    with _MODULE_LOCK:
        if ck in _MODULE_GENS:
            return _MODULE_GENS[ck]
    ring = spec.ring.mod_p()
    p = ring.p
    inv_cache: dict[int, list[dict]] = {}

    def invariants(d):
        if d not in inv_cache:
            basis = []
            seen = set()
            for e in monomials_of_degree(ring, d):
                r = beta_apply(spec, ring.monomial(e), Mode.MOD_P)
                if r.is_zero():
                    continue
                key = tuple(sorted(r.terms.items()))
                if key not in seen:
                    seen.add(key)
                    basis.append(dict(r.terms))
            inv_cache[d] = basis
        return inv_cache[d]

    gens: list[tuple[int, ...]] = []
    for k in range(top + 1):
        mons = sorted(monomials_of_degree(ring, k), reverse=True)
        index = {e: i for i, e in enumerate(mons)}
        lat = _Lattice(p)
        for gexp in gens:
            for r in invariants(k - sum(gexp)):
                lat.insert({index[tuple(a + b for a, b in zip(e, gexp))]: c for e, c in r.items()})
        for e in mons:
            v = {index[e]: 1}
            if not lat.contains(v):
                gens.append(e)
                lat.insert(v)
    out = [spec.ring.monomial(e) for e in gens]
    with _MODULE_LOCK:
        _MODULE_GENS[ck] = out
    return out


def _minimal_coset_elements(spec: SummandSpec, e) -> list[tuple[int, ...]]:
    """Componentwise-minimal ``u`` in ``N^m`` with ``e + u`` in the lattice."""
    steps = _lattice_steps(spec)
    ranges = [range(s) for s in steps]
    found = []
    for u in product(*ranges):
        if _in_lattice(spec, tuple(a + b for a, b in zip(e, u))):
            found.append(u)
    return [u for u in found if not any(v != u and all(a <= b for a, b in zip(v, u)) for v in found)]


def test_multipliers(spec: SummandSpec, g: Polynomial) -> list[Polynomial]:
    """Monomials ``T(g)`` with ``beta(g*S) ⊆ a  <=>  beta(g*m) in a`` for ``m in T(g)``."""
    ring = g.ring
    if g.is_zero():
        return []
    fam = spec.family
    out: dict = {}
    if fam is Family.INVARIANT:
        return [change_ring(m, ring) for m in invariant_module_generators(spec)]
    classes = {}
    for e in g.terms:
        if fam is Family.MONOMIAL:
            key = tuple(k % s for k, s in zip(e, _lattice_steps(spec)))
        else:
            key = degree_class(spec, e)
        classes.setdefault(key, e)
    for key, e in classes.items():
        if fam is Family.VERONESE:
            D = spec.params[0]
            r = (-sum(e)) % D
            mons = monomials_of_degree(ring, r)
        elif fam is Family.SEGRE:
            li, ri = spec.params
            block = ri if key > 0 else li
            mons = []
            for u in monomials_of_degree(Ring(tuple(f"v{i}" for i in block)), abs(key)):
                full = [0] * ring.nvars
                for i, k in zip(block, u):
                    full[i] = k
                mons.append(tuple(full))
        else:
            mons = _minimal_coset_elements(spec, e)
        for u in mons:
            out[u] = ring.monomial(u)
    return [out[u] for u in sorted(out, reverse=True)]


# ---------------------------------------------------------------------------
# subalgebra membership and presentations

def _elimination_setup(ring: Ring, gens: tuple[Polynomial, ...], prefix: str):
    names = tuple(f"{prefix}{i + 1}" for i in range(len(gens)))
    weights = tuple(g.total_degree() for g in gens)
    big = Ring(ring.variables + names, ring.weights + weights, ring.p, ring.domain)
    rels = [big.var(n) - change_ring(g, big) for n, g in zip(names, gens)]
    order = MonomialOrder.elimination(ring.nvars, big.weights)
    return big, names, IdealHandle(rels, order, big)


_ELIM: dict = {}
_ELIM_LOCK = threading.Lock()


def _elim(ring: Ring, gens: tuple[Polynomial, ...], prefix: str = "y"):
    while any(v.startswith(prefix) for v in ring.variables):
        prefix = {"y": "w", "w": "u", "u": "v"}.get(prefix, prefix + "_")
    key = (ring, gens, prefix)
    with _ELIM_LOCK:
        hit = _ELIM.get(key)
    if hit is None:
        hit = _elimination_setup(ring, gens, prefix)
        with _ELIM_LOCK:
            _ELIM[key] = hit
    return hit


def _subalgebra_rep(ring: Ring, gens: tuple[Polynomial, ...], g: Polynomial, prefix: str = "y"):
    big, names, I = _elim(ring, gens, prefix)
    nf = I.normal_form(change_ring(g, big))
    k = ring.nvars
    if any(any(e[:k]) for e in nf.terms):
        return None
    yring = Ring(names, big.weights[k:], ring.p, ring.domain)
    return Polynomial(yring, {e[k:]: c for e, c in nf.terms.items()})


def subalgebra_member(spec: SummandSpec, g: Polynomial) -> tuple[bool, Polynomial | None]:
    """Decide ``g in R``; on success also return ``P`` with ``g = P(f_1, ..., f_t)``."""
    ring = spec.ring
    if g.ring != ring:
        g = change_ring(g, ring)
    rep = _subalgebra_rep(ring, spec.generators, g, _prefix(spec))
    return rep is not None, rep


def _prefix(spec: SummandSpec) -> str:
    return "w" if spec.family is Family.SEGRE else "y"


@dataclass(frozen=True)
class PresentedAlgebra:
    """``R ≅ Z[y_1..y_t]/J`` with structure map ``y_i -> f_i``."""

    ring: Ring
    kernel: IdealHandle = field(compare=False)
    images: tuple[Polynomial, ...]
    spec: SummandSpec = field(compare=False)

    def to_image(self, f: Polynomial) -> Polynomial:
        from .poly import apply_endomorphism

        return apply_endomorphism(f, list(self.images), self.spec.ring)

    def from_image(self, g: Polynomial) -> Polynomial:
        ok, rep = subalgebra_member(self.spec, g)
        if not ok:
            raise NotInSummandError(f"{g} is not in {self.spec}")
        return change_ring(rep, self.ring)

    def ideal(self, generators: Iterable[Polynomial]) -> IdealHandle:
        """``(generators) + J`` in the presentation ring."""
        return IdealHandle(list(generators) + list(self.kernel.generators), ring=self.ring)

    def maximal_ideal(self, with_p: bool = True) -> IdealHandle:
        gens = self.ring.gens()
        if with_p:
            gens = [self.ring.const(self.ring.p)] + gens
        return IdealHandle(gens, ring=self.ring)


_PRESENTATIONS: dict = {}


def presentation(spec: SummandSpec) -> PresentedAlgebra:
    with _ELIM_LOCK:
        hit = _PRESENTATIONS.get(spec)
    if hit is not None:
        return hit
    big, names, I = _elim(spec.ring, spec.generators, _prefix(spec))
    E = elimination_ideal(I, names)
    gens = []
    for g in E.generators:
        lead = max(g.terms)
        gens.append(-g if g.terms[lead] < 0 else g)
    gens.sort(key=lambda f: (f.total_degree(), sorted(f.terms, reverse=True)), reverse=False)
    ring = E.ring
    kernel = IdealHandle(gens, ring=ring)
    pres = PresentedAlgebra(ring, kernel, tuple(change_ring(f, spec.ring) for f in spec.generators), spec)
    for j in gens:
        if not pres.to_image(j).is_zero():
            raise AssertionError(f"kernel element {j} does not vanish on the generators")
    with _ELIM_LOCK:
        _PRESENTATIONS[spec] = pres
    return pres


def phi_closed(spec: SummandSpec) -> bool:
    """True when the fixed Frobenius lift maps every generator back into ``R``."""
    return all(subalgebra_member(spec, frobenius_lift(f))[0] for f in spec.generators)


# ---------------------------------------------------------------------------
# the power D(n)

def _ideal_in_S(spec: SummandSpec, a_ideal) -> IdealHandle:
    if isinstance(a_ideal, IdealHandle):
        gens = a_ideal.generators
    else:
        gens = list(a_ideal)
    return IdealHandle([change_ring(g, spec.ring) for g in gens], ring=spec.ring)


def dq_power_member(spec: SummandSpec, x: Polynomial, a_ideal, n: int, *, check_summand=True) -> bool:
    """``x in a^{D(n)}``.

    ``a_ideal`` is given by generators in image form.  Only the class of
    ``delta^a(d^[alpha] x)`` modulo ``aS`` matters (beta is R-linear), so
    it is computed with the truncated delta iteration.  Membership in ``ā``
    is tested in ``S̄``, which is equivalent for a direct summand.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if x.ring != spec.ring:
        x = change_ring(x, spec.ring)
    if check_summand and not subalgebra_member(spec, x)[0]:
        raise NotInSummandError(f"{x} is not in {spec}")
    K = _ideal_in_S(spec, a_ideal)
    if not K.contains(spec.ring.const(spec.ring.p)):
        raise PNotInIdealError(f"p = {spec.ring.p} is not in the ideal {K}")
    if n == 0 or x.is_zero():
        return True
    Kbar = K.mod_p()
    for alpha in multi_indices(spec.ring.nvars, n - 1):
        g = apply_divided_partial(alpha, x)
        if g.is_zero():
            continue
        for h in truncated_delta_chain(g, K, n - 1 - sum(alpha)):
            hb = reduce_mod_p(h)
            if hb.is_zero():
                continue
            for m in test_multipliers(spec, hb):
                if not Kbar.contains(beta_apply(spec, hb * change_ring(m, hb.ring), Mode.MOD_P)):
                    return False
    return True


def dq_power_witness(spec: SummandSpec, x: Polynomial, a_ideal, n: int):
    """First failing ``(a, alpha, m)`` for ``x not in a^{D(n)}``, else None."""
    K = _ideal_in_S(spec, a_ideal)
    Kbar = K.mod_p()
    for alpha in multi_indices(spec.ring.nvars, n - 1):
        g = apply_divided_partial(alpha, x)
        if g.is_zero():
            continue
        for a, h in enumerate(truncated_delta_chain(g, K, n - 1 - sum(alpha))):
            hb = reduce_mod_p(h)
            for m in test_multipliers(spec, hb):
                if not Kbar.contains(beta_apply(spec, hb * change_ring(m, hb.ring), Mode.MOD_P)):
                    return a, alpha, m
    return None


# ---------------------------------------------------------------------------
# mixed powers on R itself

def r_mixed_route(spec: SummandSpec) -> str:
    """How (if at all) mixed powers of ideals of ``R`` can be evaluated.

    ``"presentation"``: ``J = 0`` and monomial generators, so the lift on
    ``S`` restricts to ``y_i -> y_i^p`` on the polynomial ring ``Z[y]``.
    ``"extension"``: the lift restricts to ``R`` and the inclusion is
    declared differentially extensible, so operators on ``R`` are exactly
    the ``beta o d`` restricted from ``S``.
    """
    monomial_gens = all(len(f.terms) == 1 for f in spec.generators)
    if not phi_closed(spec):
        raise MixedPowerUnavailableError(f"the Frobenius lift does not restrict to {spec}")
    pres = presentation(spec)
    if not pres.kernel.generators and monomial_gens:
        return "presentation"
    if spec.differentially_extensible:
        if spec.family is Family.INVARIANT:
            # the extension route needs an integral splitting
            try:
                for f in spec.generators:
                    beta_apply(spec, f, Mode.INTEGRAL)
            except ReynoldsNotDefinedError as exc:
                raise MixedPowerUnavailableError(str(exc)) from exc
        return "extension"
    raise MixedPowerUnavailableError(
        f"{spec} is not declared differentially extensible and has relations")


def r_mixed_power_member(spec: SummandSpec, x: Polynomial, Q, n: int) -> bool:
    """``x in Q^<n>_mix`` computed on ``R`` itself (not on ``S``)."""
    route = r_mixed_route(spec)
    if x.ring != spec.ring:
        x = change_ring(x, spec.ring)
    ok, rep = subalgebra_member(spec, x)
    if not ok:
        raise NotInSummandError(f"{x} is not in {spec}")
    K = _ideal_in_S(spec, Q)
    if not K.contains(spec.ring.const(spec.ring.p)):
        raise PNotInIdealError(f"p = {spec.ring.p} is not in {K}")
    if route == "presentation":
        pres = presentation(spec)
        QR = IdealHandle([pres.from_image(g) for g in K.generators], ring=pres.ring)
        return mixed_power_member(change_ring(rep, pres.ring), QR, n)
    if n < 1:
        raise ValueError("mixed powers are indexed by n >= 1")
    for alpha in multi_indices(spec.ring.nvars, n - 1):
        g = apply_divided_partial(alpha, x)
        if g.is_zero():
            continue
        for m in test_multipliers(spec, g):
            r = beta_apply(spec, g * m, Mode.INTEGRAL)
            if r.is_zero():
                continue
            for h in truncated_delta_chain(r, K, n - 1 - sum(alpha)):
                if not K.contains(h):
                    return False
    return True


def random_element(spec: SummandSpec, rng, max_factors: int = 2, terms: int = 3,
                   coeff: int = 9) -> Polynomial:
    """A random element of ``R``: an integer combination of generator products."""
    ring = spec.ring
    out = ring.zero()
    for _ in range(terms):
        t = ring.const(rng.randint(-coeff, coeff))
        for _ in range(rng.randint(0, max_factors)):
            t = t * rng.choice(spec.generators)
        out = out + t
    return out
