"""Ideal membership over Z and F_p.

Over F_p this is textbook Buchberger with the product and chain criteria and
a final interreduction, so bases are reduced and unique for a fixed order.
Over Z it is the Euclidean-domain variant: every critical pair contributes
an S-polynomial (cancel the lead terms through the lcm of the lead
coefficients) and a G-polynomial (Bezout combination reaching their gcd),
which yields a *strong* basis.  Reduction is Euclidean: a term ``c*M`` is
reduced by ``g`` when ``LM(g) | M`` and ``c // LC(g) != 0``.  With a strong
basis the remainder is zero exactly for ideal members.

Internally polynomials are plain ``{exponent: coeff}`` dicts; the public
surface uses :class:`~diffpowers.poly.Polynomial`.
"""

from __future__ import annotations

import enum
import heapq
import logging
import threading
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import gcd
from typing import Iterable, Sequence

from .errors import BudgetExceededError, InconclusiveError, RingMismatchError
from .poly import Domain, Polynomial, Ring, is_homogeneous, reduce_mod_p

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 200_000
_budget = DEFAULT_BUDGET


def set_budget(pairs: int | None) -> None:
    """Cap on critical pairs processed per basis computation."""
    global _budget
    _budget = DEFAULT_BUDGET if pairs is None else int(pairs)


def get_budget() -> int:
    return _budget


# ---------------------------------------------------------------------------
# monomial orders

class OrderKind(enum.Enum):
    LEX = "lex"
    GREVLEX = "grevlex"
    WEIGHTED_GREVLEX = "wgrevlex"
    ELIMINATION_BLOCK = "block"


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative total order, encoded as a sort key on exponents.

    ``priority`` lists variable indices from most to least significant (the
    tie-break order); by default it is the ring order.  For
    ``ELIMINATION_BLOCK`` the first ``block`` entries of ``priority`` form the
    eliminated block, compared first by weighted grevlex.
    """

    kind: OrderKind
    weights: tuple[int, ...] | None = None
    block: int = 0
    priority: tuple[int, ...] | None = None

    @classmethod
    def lex(cls, priority=None):
        return cls(OrderKind.LEX, priority=_tup(priority))

    @classmethod
    def grevlex(cls, priority=None):
        return cls(OrderKind.GREVLEX, priority=_tup(priority))

    @classmethod
    def weighted_grevlex(cls, weights, priority=None):
        return cls(OrderKind.WEIGHTED_GREVLEX, tuple(weights), priority=_tup(priority))

    @classmethod
    def elimination(cls, block: int, weights=None, priority=None):
        return cls(OrderKind.ELIMINATION_BLOCK, _tup(weights), block, _tup(priority))

    @classmethod
    def default_for(cls, ring: Ring):
        return cls.weighted_grevlex(ring.weights)

    def graded_by(self, ring: Ring) -> bool:
        """True when the order refines the ring's weighted degree."""
        if self.kind is OrderKind.GREVLEX:
            return all(w == 1 for w in ring.weights)
        return self.kind is OrderKind.WEIGHTED_GREVLEX and self.weights == ring.weights

    def keyfunc(self, nvars: int):
        pri = self.priority or tuple(range(nvars))
        if len(pri) != nvars or sorted(pri) != list(range(nvars)):
            raise ValueError(f"priority {pri} is not a permutation of {nvars} variables")
        rev = pri[::-1]
        if self.kind is OrderKind.LEX:
            return lambda e: tuple([e[i] for i in pri])
        if self.kind is OrderKind.GREVLEX:
            return lambda e: (sum(e),) + tuple([-e[i] for i in rev])
        w = self.weights or (1,) * nvars
        if self.kind is OrderKind.WEIGHTED_GREVLEX:
            return lambda e: (sum([e[i] * w[i] for i in pri]),) + tuple([-e[i] for i in rev])
        top, bottom = pri[: self.block], pri[self.block:]
        rtop, rbot = top[::-1], bottom[::-1]

        def key(e):
            return (
                (sum([e[i] * w[i] for i in top]),)
                + tuple([-e[i] for i in rtop])
                + (sum([e[i] * w[i] for i in bottom]),)
                + tuple([-e[i] for i in rbot])
            )

        return key


def _tup(x):
    return None if x is None else tuple(x)


# ---------------------------------------------------------------------------
# raw-dict kernels

class _Elem:
    """Basis element with cached lead data."""

    __slots__ = ("terms", "lm", "lc", "items", "lm_deg")

    def __init__(self, terms: dict, key, degree):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]
        self.items = list(terms.items())
        self.lm_deg = degree(self.lm)


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _sub_exp(a, b):
    return tuple([x - y for x, y in zip(a, b)])


def _xgcd(a: int, b: int):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _normalize(terms: dict, modulus, key) -> dict:
    """Monic over F_p, positive lead coefficient over Z."""
    lm = max(terms, key=key)
    lc = terms[lm]
    if modulus is not None:
        if lc != 1:
            inv = pow(lc, -1, modulus)
            return {e: c * inv % modulus for e, c in terms.items()}
        return terms
    if lc < 0:
        return {e: -c for e, c in terms.items()}
    return terms


def _reduce(h: dict, basis: Sequence[_Elem], key, modulus, full=True) -> dict:
    """Euclidean normal form of ``h`` against ``basis``."""
    if not h or not basis:
        return dict(h)
    h = dict(h)
    nkey = {}

    def hk(e):
        k = nkey.get(e)
        if k is None:
            k = tuple([-x for x in key(e)])
            nkey[e] = k
        return k

    heap = [(hk(e), e) for e in h]
    heapq.heapify(heap)
    rem: dict = {}
    get = h.get
    while heap:
        _, e = heapq.heappop(heap)
        c = get(e)
        if c is None:
            continue
        red = None
        q = 0
        if modulus is not None:
            for b in basis:
                if _divides(b.lm, e):
                    red, q = b, c
                    break
        else:
            fallback = None
            for b in basis:
                if _divides(b.lm, e):
                    if c % b.lc == 0:
                        red, q = b, c // b.lc
                        break
                    if fallback is None and c // b.lc != 0:
                        fallback = b
            if red is None and fallback is not None:
                red, q = fallback, c // fallback.lc
        if red is None:
            rem[e] = c
            del h[e]
            if not full:
                rem.update(h)
                return rem
            continue
        shift = _sub_exp(e, red.lm)
        for te, tc in red.items:
            ne = tuple([x + y for x, y in zip(te, shift)])
            old = get(ne)
            v = (0 if old is None else old) - q * tc
            if modulus is not None:
                v %= modulus
            if v:
                h[ne] = v
                if old is None and ne != e:
                    heapq.heappush(heap, (hk(ne), ne))
            elif old is not None:
                del h[ne]
        if e in h:
            heapq.heappush(heap, (hk(e), e))
    return rem


def _shift_scale(items, shift, c, out, modulus):
    for e, v in items:
        ne = tuple([x + y for x, y in zip(e, shift)])
        out[ne] = out.get(ne, 0) + c * v
    if modulus is not None:
        for e in list(out):
            out[e] %= modulus
    return out


def _clean(d: dict) -> dict:
    return {e: c for e, c in d.items() if c}


def _spoly(f: _Elem, g: _Elem, modulus):
    L = _lcm(f.lm, g.lm)
    if modulus is not None:
        out = _shift_scale(f.items, _sub_exp(L, f.lm), 1, {}, None)
        _shift_scale(g.items, _sub_exp(L, g.lm), -1, out, modulus)
        return _clean(out)
    a, b = f.lc, g.lc
    l = a * b // gcd(a, b)
    out = _shift_scale(f.items, _sub_exp(L, f.lm), l // a, {}, None)
    _shift_scale(g.items, _sub_exp(L, g.lm), -(l // b), out, None)
    return _clean(out)


def _gpoly(f: _Elem, g: _Elem):
    a, b = f.lc, g.lc
    d, s, t = _xgcd(a, b)
    if d == a or d == b:
        return None
    L = _lcm(f.lm, g.lm)
    out = _shift_scale(f.items, _sub_exp(L, f.lm), s, {}, None)
    _shift_scale(g.items, _sub_exp(L, g.lm), t, out, None)
    return _clean(out)


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _strongly_divides(f: _Elem, g: _Elem, modulus) -> bool:
    if not _divides(f.lm, g.lm):
        return False
    return modulus is not None or g.lc % f.lc == 0


def _pair_polys(f: _Elem, g: _Elem, modulus) -> list[dict]:
    if modulus is not None:
        return [_spoly(f, g, modulus)]
    out = []
    if not (_coprime(f.lm, g.lm) and gcd(f.lc, g.lc) == 1):
        out.append(_spoly(f, g, None))
    gp = _gpoly(f, g)
    if gp is not None:
        out.append(gp)
    return out


def _buchberger(gens: list[dict], key, degree, modulus, degree_bound=None, budget=None):
    """Return a (strong) basis as a list of elements, not yet interreduced.

    Pairs are chosen by sugar degree.  An element whose lead term becomes
    strongly divisible by a newer lead term is retired: it stops spawning
    pairs and stops acting as a reducer, while its pending pairs are still
    processed.  Over Z the result is re-verified pair by pair and completed
    further if needed, so correctness never rests on the pruning.
    """
    budget = _budget if budget is None else budget
    processed = 0
    while True:
        G, processed = _complete(gens, key, degree, modulus, degree_bound, budget, processed)
        if modulus is not None:
            return G
        G = _interreduce(G, key, degree, modulus)
        extra = []
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                if degree_bound is not None and degree(_lcm(G[i].lm, G[j].lm)) > degree_bound:
                    continue
                for h in _pair_polys(G[i], G[j], modulus):
                    r = _reduce(h, G, key, modulus) if h else None
                    if r:
                        extra.append(r)
        if not extra:
            return G
        log.debug("verification pass added %d elements", len(extra))
        gens = [el.terms for el in G] + extra


def _complete(gens, key, degree, modulus, degree_bound, budget, processed):
    G: list[_Elem] = []
    sugar: list[int] = []
    active: list[bool] = []
    reducers: list[_Elem] = []
    pairs: list = []
    treated: set = set()
    counter = 0

    def add(r: dict, sug: int):
        nonlocal counter, reducers
        r = _normalize(r, modulus, key)
        el = _Elem(r, key, degree)
        sug = max(sug, el.lm_deg)
        j = len(G)
        for i in range(j):
            if not active[i]:
                continue
            other = G[i]
            L = _lcm(other.lm, el.lm)
            dL = degree(L)
            if degree_bound is not None and dL > degree_bound:
                continue
            if modulus is not None and _coprime(other.lm, el.lm):
                treated.add((i, j))
                continue
            s = max(sugar[i] + dL - other.lm_deg, sug + dL - el.lm_deg)
            counter += 1
            heapq.heappush(pairs, (s, key(L), counter, i, j))
        changed = False
        for i in range(j):
            if active[i] and _strongly_divides(el, G[i], modulus):
                active[i] = False
                changed = True
        G.append(el)
        sugar.append(sug)
        active.append(True)
        if changed:
            reducers = [g for g, a in zip(G, active) if a]
        else:
            reducers.append(el)

    def top_degree(t):
        return max(degree(e) for e in t)

    for f in sorted(gens, key=lambda t: (top_degree(t), key(max(t, key=key)))):
        if degree_bound is not None and degree(max(f, key=key)) > degree_bound:
            continue
        r = _reduce(f, reducers, key, modulus)
        if r:
            add(r, top_degree(f))

    while pairs:
        s, _, _, i, j = heapq.heappop(pairs)
        treated.add((i, j))
        processed += 1
        if processed > budget:
            raise BudgetExceededError(f"more than {budget} critical pairs")
        f, g = G[i], G[j]
        if modulus is not None and _chain_skip(G, i, j, _lcm(f.lm, g.lm), treated):
            continue
        for h in _pair_polys(f, g, modulus):
            if not h:
                continue
            r = _reduce(h, reducers, key, modulus)
            if r:
                if log.isEnabledFor(logging.DEBUG):
                    log.debug("pair (%d,%d) sugar %d -> element #%d", i, j, s, len(G))
                add(r, s)
    return [g for g, a in zip(G, active) if a], processed


def _chain_skip(G, i, j, L, treated) -> bool:
    """Buchberger's chain criterion: some ``k`` with ``LM(k) | L`` whose pairs
    with ``i`` and ``j`` were already treated."""
    for k, el in enumerate(G):
        if k == i or k == j or not _divides(el.lm, L):
            continue
        if (min(i, k), max(i, k)) in treated and (min(j, k), max(j, k)) in treated:
            return True
    return False


def _interreduce(G: list[_Elem], key, degree, modulus) -> list[_Elem]:
    keep: list[_Elem] = []
    for idx, el in enumerate(G):
        redundant = False
        for jdx, other in enumerate(G):
            if jdx == idx or not _divides(other.lm, el.lm):
                continue
            if modulus is None and el.lc % other.lc:
                continue
            if other.lm == el.lm and (modulus is not None or other.lc == el.lc):
                if jdx < idx:
                    redundant = True
                    break
                continue
            redundant = True
            break
        if not redundant:
            keep.append(el)
    out = []
    for idx, el in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        tail = dict(el.terms)
        lead = tail.pop(el.lm)
        r = _reduce(tail, others, key, modulus) if others else tail
        r[el.lm] = lead
        out.append(_Elem(r, key, degree))
    out.sort(key=lambda el: key(el.lm))
    return out


# ---------------------------------------------------------------------------
# public surface

_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def _canonical(gens: Iterable[Polynomial]):
    return tuple(sorted(tuple(sorted(g._terms.items())) for g in gens))


class IdealHandle:
    """Generators plus a lazily computed (strong) Groebner basis.

    The basis cache is global and keyed by the canonical generator set, the
    order and the truncation degree, so equal ideals share work.
    """

    def __init__(self, generators: Iterable[Polynomial], order: MonomialOrder | None = None,
                 ring: Ring | None = None):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise ValueError("an empty generator list needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} is not in {ring}")
        uniq: list[Polynomial] = []
        seen = set()
        for g in gens:
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            uniq.append(g)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(uniq)
        self.order = order or MonomialOrder.default_for(ring)
        self._key = self.order.keyfunc(ring.nvars)
        self._homogeneous = all(is_homogeneous(g) for g in self.generators)
        self._mod_p_handle: IdealHandle | None = None

    @property
    def flag(self) -> str:
        return "FIELD_GB" if self.ring.is_modular else "STRONG_Z_GB"

    @property
    def is_homogeneous(self) -> bool:
        return self._homogeneous

    @property
    def contains_p(self) -> bool:
        """True when some generator is a constant dividing p."""
        if self.ring.is_modular:
            return False
        for g in self.generators:
            if g.is_constant() and self.ring.p % g.constant_coefficient() == 0:
                return True
        return False

    def __repr__(self):
        return f"IdealHandle({[str(g) for g in self.generators]}, {self.ring})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def _elems(self, degree_bound: int | None = None) -> list[_Elem]:
        # truncation is sound for any order once the generators are homogeneous
        if degree_bound is not None and not self._homogeneous:
            degree_bound = None
        ck = (self.ring, self.order, _canonical(self.generators))
        with _CACHE_LOCK:
            slot = _CACHE.setdefault(ck, {})
            if None in slot:
                return slot[None]
            if degree_bound is not None:
                for b, el in slot.items():
                    if b >= degree_bound:
                        return el
        raw = [dict(g._terms) for g in self.generators]
        G = _buchberger(raw, self._key, self.ring.degree_of, self.ring.modulus, degree_bound)
        G = _interreduce(G, self._key, self.ring.degree_of, self.ring.modulus)
        with _CACHE_LOCK:
            slot[degree_bound] = G
        return G

    def basis(self, degree_bound: int | None = None) -> list[Polynomial]:
        return [Polynomial._raw(self.ring, dict(el.terms)) for el in self._elems(degree_bound)]

    def normal_form(self, f: Polynomial) -> Polynomial:
        self._check(f)
        bound = _bound_for(f) if self._homogeneous else None
        G = self._elems(bound)
        return Polynomial._raw(self.ring, _reduce(f._terms, G, self._key, self.ring.modulus))

    def contains(self, f: Polynomial) -> bool:
        self._check(f)
        if f.is_zero():
            return True
        if self.contains_p:
            return self.mod_p().contains(reduce_mod_p(f))
        if self._homogeneous:
            # homogeneous ideal: test each graded piece against a truncated basis
            for part in f.homogeneous_components().values():
                G = self._elems(self.ring.degree_of(next(iter(part._terms))))
                if _reduce(part._terms, G, self._key, self.ring.modulus, full=False):
                    return False
            return True
        G = self._elems()
        return not _reduce(f._terms, G, self._key, self.ring.modulus, full=False)

    __contains__ = contains

    def contains_all(self, fs: Iterable[Polynomial]) -> bool:
        return all(self.contains(f) for f in fs)

    def mod_p(self) -> IdealHandle:
        if self.ring.is_modular:
            return self
        if self._mod_p_handle is None:
            ring = self.ring.mod_p()
            gens = [reduce_mod_p(g) for g in self.generators]
            self._mod_p_handle = IdealHandle(gens, self.order, ring)
        return self._mod_p_handle

    def _check(self, f: Polynomial):
        if f.ring != self.ring:
            raise RingMismatchError(f"{f} lives in {f.ring}, ideal in {self.ring}")


def _bound_for(f: Polynomial):
    if f.is_zero():
        return 0
    return max(f.ring.degree_of(e) for e in f._terms)


def groebner_basis(I: IdealHandle) -> list[Polynomial]:
    return I.basis()


def normal_form(f: Polynomial, I: IdealHandle) -> Polynomial:
    return I.normal_form(f)


def member(f: Polynomial, I: IdealHandle) -> bool:
    return I.contains(f)


def ideal_sum(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    return IdealHandle(I.generators + J.generators, I.order, I.ring)


def ideal_power(I: IdealHandle, n: int) -> IdealHandle:
    if n < 1:
        raise ValueError("ideal powers need n >= 1")
    if n == 1:
        return I
    gens = I.generators
    out = []
    for combo in combinations_with_replacement(range(len(gens)), n):
        g = gens[combo[0]]
        for k in combo[1:]:
            g = g * gens[k]
        out.append(g)
    return IdealHandle(out, I.order, I.ring)


def ideal_product(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    return IdealHandle([a * b for a in I.generators for b in J.generators], I.order, I.ring)


def is_groebner(I: IdealHandle) -> bool:
    """Re-check the pair conditions on the cached basis (test helper)."""
    G = I._elems()
    key, modulus = I._key, I.ring.modulus
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            cands = [_spoly(G[i], G[j], modulus)]
            if modulus is None:
                gp = _gpoly(G[i], G[j])
                if gp is not None:
                    cands.append(gp)
            for h in cands:
                if h and _reduce(h, G, key, modulus, full=False):
                    return False
    return True


# ---------------------------------------------------------------------------
# elimination and saturation

def _subring(ring: Ring, keep: Sequence[str]) -> Ring:
    idx = [ring.index(v) for v in keep]
    return Ring(tuple(keep), tuple(ring.weights[i] for i in idx), ring.p, ring.domain)


def elimination_ideal(I: IdealHandle, keep: Sequence[str]) -> IdealHandle:
    """Generators of ``I`` intersected with the subring on ``keep``."""
    ring = I.ring
    keep = [v for v in ring.variables if v in set(keep)]
    elim = [v for v in ring.variables if v not in set(keep)]
    pri = tuple(ring.index(v) for v in elim + keep)
    order = MonomialOrder.elimination(len(elim), ring.weights, pri)
    G = IdealHandle(I.generators, order, ring).basis()
    sub = _subring(ring, keep)
    kidx = [ring.index(v) for v in keep]
    eidx = [ring.index(v) for v in elim]
    out = []
    for g in G:
        if all(e[i] == 0 for e in g._terms for i in eidx):
            out.append(Polynomial(sub, {tuple(e[i] for i in kidx): c for e, c in g._terms.items()}))
    return IdealHandle(out, MonomialOrder.default_for(sub), sub)


def _fresh_name(ring: Ring, base="t") -> str:
    name = base
    k = 0
    while name in ring.variables:
        k += 1
        name = f"{base}{k}"
    return name


def saturate(I: IdealHandle, w: Polynomial, method: str = "auto") -> IdealHandle:
    """``(I : w^oo)``.

    ``method="elimination"`` eliminates a fresh ``t`` from ``I + (1 - t*w)``.
    ``method="variables"`` requires homogeneous ``I`` and a monomial ``w``;
    it saturates one variable at a time through a reverse-lex basis with that
    variable last, where dividing out the variable from every basis element
    gives a basis of the saturation.  ``auto`` picks the latter when valid.
    """
    if w.is_zero():
        raise ValueError("cannot saturate by zero")
    if w.ring != I.ring:
        raise RingMismatchError("w must live in the ideal's ring")
    monomial_w = len(w._terms) == 1 and abs(next(iter(w._terms.values()))) == 1
    if method == "auto":
        method = "variables" if (monomial_w and I.is_homogeneous) else "elimination"
    if method == "variables":
        if not (monomial_w and I.is_homogeneous):
            raise ValueError("variable-wise saturation needs homogeneous I and a monomial w")
        (exp,) = w._terms
        J = I
        for i, k in enumerate(exp):
            if k:
                J = _saturate_variable(J, i)
        return IdealHandle(J.basis(), I.order, I.ring)
    if method != "elimination":
        raise ValueError(f"unknown saturation method {method!r}")
    ring = I.ring
    t = _fresh_name(ring)
    big = Ring((t,) + ring.variables, (1,) + ring.weights, ring.p, ring.domain)
    from .poly import change_ring

    gens = [change_ring(g, big) for g in I.generators]
    gens.append(big.one() - big.var(t) * change_ring(w, big))
    E = elimination_ideal(IdealHandle(gens, ring=big), ring.variables)
    J = IdealHandle([change_ring(g, ring) for g in E.generators], I.order, ring)
    return IdealHandle(J.basis(), I.order, ring)


def _saturate_variable(I: IdealHandle, i: int) -> IdealHandle:
    ring = I.ring
    pri = tuple(k for k in range(ring.nvars) if k != i) + (i,)
    order = MonomialOrder.weighted_grevlex(ring.weights, pri)
    G = IdealHandle(I.generators, order, ring).basis()
    out = []
    for g in G:
        k = min(e[i] for e in g._terms)
        if k:
            g = Polynomial._raw(ring, {e[:i] + (e[i] - k,) + e[i + 1:]: c for e, c in g._terms.items()})
        out.append(g)
    return IdealHandle(out, I.order, ring)


# ---------------------------------------------------------------------------
# independent oracle: integer linear algebra in one degree

def monomials_of_degree(ring: Ring, d: int) -> list[tuple[int, ...]]:
    """All exponents of weighted degree exactly ``d``."""
    w = ring.weights
    out: list[tuple[int, ...]] = []

    def rec(i, left, acc):
        if i == len(w) - 1:
            if left % w[i] == 0:
                out.append(tuple(acc + [left // w[i]]))
            return
        for k in range(left // w[i] + 1):
            rec(i + 1, left - k * w[i], acc + [k])

    if d < 0:
        return []
    if not w:
        return [()] if d == 0 else []
    rec(0, d, [])
    return out


class _Lattice:
    """Row echelon form of an integer (or F_p) lattice, built incrementally."""

    def __init__(self, modulus=None):
        self.rows: dict[int, dict[int, int]] = {}
        self.modulus = modulus

    def _combine(self, a: dict, b: dict, ca: int, cb: int) -> dict:
        out = {k: ca * v for k, v in a.items()}
        for k, v in b.items():
            out[k] = out.get(k, 0) + cb * v
        if self.modulus is not None:
            return {k: v % self.modulus for k, v in out.items() if v % self.modulus}
        return {k: v for k, v in out.items() if v}

    def insert(self, v: dict):
        m = self.modulus
        while v:
            c = min(v)
            if c not in self.rows:
                if m is not None:
                    inv = pow(v[c], -1, m)
                    v = {k: x * inv % m for k, x in v.items()}
                elif v[c] < 0:
                    v = {k: -x for k, x in v.items()}
                self.rows[c] = v
                return
            r = self.rows[c]
            a, b = r[c], v[c]
            if m is not None:
                v = self._combine(v, r, 1, -b * pow(a, -1, m))
            elif b % a == 0:
                v = self._combine(v, r, 1, -(b // a))
            else:
                g, s, t = _xgcd(a, b)
                new = self._combine(r, v, s, t)
                v = self._combine(v, r, a // g, -(b // g))
                self.rows[c] = new

    def contains(self, v: dict) -> bool:
        m = self.modulus
        v = dict(v)
        while v:
            c = min(v)
            r = self.rows.get(c)
            if r is None:
                return False
            a, b = r[c], v[c]
            if m is not None:
                q = b * pow(a, -1, m)
            else:
                if b % a:
                    return False
                q = b // a
            v = self._combine(v, r, 1, -q)
        return True


def member_bruteforce(f: Polynomial, I: IdealHandle, bound: int | None = None) -> bool:
    """Decide ``f in I`` by solving a linear system in the degree of ``f``.

    Needs homogeneous data.  The columns are all products ``m * g`` of a
    monomial with a generator landing in ``deg f``; integer solvability is
    decided on a Hermite-style echelon form.  ``bound`` must reach ``deg f``.
    """
    if f.ring != I.ring:
        raise RingMismatchError("f and I live in different rings")
    ring = f.ring
    if f.is_zero():
        return True
    if not is_homogeneous(f) or not I.is_homogeneous:
        raise ValueError("member_bruteforce needs homogeneous input")
    d = ring.degree_of(next(iter(f._terms)))
    if bound is None:
        bound = d
    if bound < d:
        raise InconclusiveError(f"degree bound {bound} is below deg f = {d}")
    mons = monomials_of_degree(ring, d)
    index = {e: k for k, e in enumerate(sorted(mons, reverse=True))}
    lat = _Lattice(ring.modulus)
    for g in I.generators:
        e0 = ring.degree_of(next(iter(g._terms)))
        if e0 > d:
            continue
        for m in monomials_of_degree(ring, d - e0):
            col = {}
            for e, c in g._terms.items():
                ne = tuple(x + y for x, y in zip(e, m))
                col[index[ne]] = c
            lat.insert(col)
    target = {index[e]: c for e, c in f._terms.items()}
    return lat.contains(target)
