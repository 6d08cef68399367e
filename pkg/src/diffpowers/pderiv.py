"""p-derivations on Z[x_1, ..., x_m].

The Frobenius lift is fixed to ``x_i -> x_i^p`` (identity on integers), so
``delta(f) = (phi(f) - f^p) / p`` and ``delta(x_i) = 0``.  On constants this
is the Fermat quotient.

Mixed powers only need ``delta^a(g)`` modulo ``Q``, and for any ideal ``K``
containing ``p`` one has ``delta(K^m) ⊆ K^(m-1)`` and
``delta(g + k) ≡ delta(g) (mod K^(m-1))`` for ``k in K^m``.  So ``delta^a(g)``
mod ``K`` can be computed by reducing ``g`` mod ``K^(a+1)``, applying
``delta``, reducing mod ``K^a``, and so on.  That keeps coefficients below
``p^(a+1)`` instead of letting them grow doubly exponentially.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .diffops import apply_divided_partial, multi_indices
from .errors import BudgetExceededError, PNotInIdealError, PreconditionError
from .groebner import IdealHandle, ideal_power
from .poly import Polynomial, exact_div_int

DEFAULT_MAX_DEPTH = 4
_max_depth = DEFAULT_MAX_DEPTH


def set_max_depth(depth: int | None) -> None:
    """Cap on untruncated delta iterations (coefficients grow doubly exponentially)."""
    global _max_depth
    _max_depth = DEFAULT_MAX_DEPTH if depth is None else int(depth)


def _require_integral(f: Polynomial):
    if f.ring.is_modular:
        raise PreconditionError("delta needs integer coefficients, got a mod-p ring")


def frobenius_lift(f: Polynomial) -> Polynomial:
    """``phi(f)``: substitute ``x_i -> x_i^p``, integers fixed."""
    ring = f.ring
    p = ring.p
    return Polynomial(ring, {tuple(k * p for k in e): c for e, c in f._terms.items()})


@lru_cache(maxsize=8192)
def delta(f: Polynomial) -> Polynomial:
    _require_integral(f)
    p = f.ring.p
    return exact_div_int(frobenius_lift(f) - f ** p, p)


def carry_term(x: Polynomial, y: Polynomial) -> Polynomial:
    """``C_p(x, y) = (x^p + y^p - (x + y)^p) / p``."""
    _require_integral(x)
    p = x.ring.p
    return exact_div_int(x ** p + y ** p - (x + y) ** p, p)


def delta_power(f: Polynomial, a: int) -> Polynomial:
    if a > _max_depth:
        raise BudgetExceededError(f"delta iterated {a} times exceeds the depth cap {_max_depth}")
    for _ in range(a):
        f = delta(f)
    return f


def delta_chain(f: Polynomial, a: int) -> list[Polynomial]:
    """``[f, delta(f), ..., delta^a(f)]``."""
    out = [f]
    if a > _max_depth:
        raise BudgetExceededError(f"delta iterated {a} times exceeds the depth cap {_max_depth}")
    for _ in range(a):
        out.append(delta(out[-1]))
    return out


@dataclass(frozen=True)
class MixedOperator:
    """``delta^a`` applied after the divided partial ``d^[alpha]``."""

    a: int
    alpha: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.a + sum(self.alpha)

    def __str__(self):
        return f"delta^{self.a} o d[{','.join(map(str, self.alpha))}]"


def apply_mixed(op: MixedOperator, f: Polynomial) -> Polynomial:
    _require_integral(f)
    return delta_power(apply_divided_partial(op.alpha, f), op.a)


def mixed_operators(nvars: int, n: int) -> list[MixedOperator]:
    """All ``delta^a o d^[alpha]`` with ``a + |alpha| <= n - 1``."""
    return [
        MixedOperator(a, alpha)
        for alpha in multi_indices(nvars, n - 1)
        for a in range(n - sum(alpha))
    ]


# -- truncated iteration ------------------------------------------------------

def _contains_p(K: IdealHandle) -> bool:
    return K.contains(K.ring.const(K.ring.p))


def truncated_delta_chain(g: Polynomial, K: IdealHandle, a: int) -> list[Polynomial]:
    """Representatives ``r_j ≡ delta^j(g) (mod K^(a+1-j))`` for ``j = 0..a``.

    ``K`` must contain ``p``; every ``r_j`` is then congruent to
    ``delta^j(g)`` modulo ``K`` itself.
    """
    _require_integral(g)
    out = []
    r = ideal_power(K, a + 1).normal_form(g) if a >= 0 else g
    out.append(r)
    for j in range(1, a + 1):
        r = ideal_power(K, a + 1 - j).normal_form(delta(r))
        out.append(r)
    return out


def delta_power_mod(g: Polynomial, K: IdealHandle, a: int) -> Polynomial:
    """A representative of ``delta^a(g)`` modulo ``K`` (which must contain p)."""
    return truncated_delta_chain(g, K, a)[-1]


def mixed_power_member(f: Polynomial, Q: IdealHandle, n: int, *, check_p: bool = True) -> bool:
    """``f in Q^<n>_mix``: ``delta^a(d^[alpha] f) in Q`` whenever ``a + |alpha| <= n - 1``."""
    if n < 1:
        raise ValueError("mixed powers are indexed by n >= 1")
    _require_integral(f)
    if check_p and not _contains_p(Q):
        raise PNotInIdealError(f"p = {f.ring.p} is not in {Q}")
    if f.is_zero():
        return True
    for alpha in multi_indices(f.ring.nvars, n - 1):
        g = apply_divided_partial(alpha, f)
        if g.is_zero():
            continue
        top = n - 1 - sum(alpha)
        for r in truncated_delta_chain(g, Q, top):
            if not Q.contains(r):
                return False
    return True


# -- identities from the delta lemma -----------------------------------------

LEMMA_ITEMS = ("1", "2", "3", "3a", "3b")


def lemma_instance(item: str, x: Polynomial, y: Polynomial, n: int):
    """The element and the ideal generators an item of the lemma relates."""
    if n < 1:
        raise ValueError("the lemma is stated for n >= 1")
    p = x.ring.p
    if item == "1":
        return delta_power(x + y, n) - delta_power(x, n), delta_chain(y, n)
    if item == "2":
        dx = delta_chain(x, n + 1)
        return delta_power(frobenius_lift(x), n), dx[:-1] + [dx[-1] * p]
    if item in ("3", "3b"):
        dy = delta_chain(y, n)
        gens = dy[:-1] + [dy[-1] * p]
        if item == "3":
            return delta_power(x * y, n) - x ** (p ** n) * dy[-1], gens
        return delta_power(y * p, n), gens
    if item == "3a":
        return delta_power(x * y, n), delta_chain(y, n)
    raise ValueError(f"unknown lemma item {item!r}")


def lemma_propdelta_check(item: str, x: Polynomial, y: Polynomial, n: int) -> bool:
    _require_integral(x)
    element, gens = lemma_instance(item, x, y, n)
    if element.is_zero():
        return True
    return IdealHandle(gens, ring=x.ring).contains(element)



# -- randomized suite ---------------------------------------------------------

@dataclass
class LemmaSuiteResult:
    p: int
    pairs: int = 0
    checks: int = 0
    failures: list = None
    inconclusive: list = None
    by_n: dict = None

    def __post_init__(self):
        self.failures = [] if self.failures is None else self.failures
        self.inconclusive = [] if self.inconclusive is None else self.inconclusive
        self.by_n = {} if self.by_n is None else self.by_n

    @property
    def passed(self) -> bool:
        return not self.failures and not self.inconclusive


def random_polynomial(ring, rng, max_degree: int, max_terms: int = 4, coeff: int = 9) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(ring.nvars)] += 1
        terms[tuple(e)] = rng.randint(-coeff, coeff)
    return Polynomial(ring, terms)


def instance_size(p: int, n: int, degree: int, nvars: int) -> int:
    """Monomial count bound for the largest polynomial a check builds (``delta^(n+1) x``)."""
    from math import comb

    return comb(degree * p ** (n + 1) + nvars, nvars)


def lemma_suite(p: int, pairs: int = 200, seed: int = 0, max_vars: int = 3, max_degree: int = 4,
                max_n: int = 3, size_cap: int = 400) -> LemmaSuiteResult:
    """Defining identities of delta and the lemma items on random pairs.

    Each pair draws its variable count, degree and ``n`` uniformly; ``n`` is
    then lowered until :func:`instance_size` is within ``size_cap`` (pairs
    that stay above it at ``n = 1`` are redrawn).  A Groebner computation
    that exceeds the pair budget is recorded as inconclusive, not passed.
    """
    import random

    from .poly import Ring

    rng = random.Random(f"{seed}:{p}")
    res = LemmaSuiteResult(p)
    while res.pairs < pairs:
        nv = rng.randint(1, max_vars)
        deg = rng.randint(0, max_degree)
        n = rng.randint(1, max_n)
        while n > 1 and instance_size(p, n, deg, nv) > size_cap:
            n -= 1
        if instance_size(p, n, deg, nv) > size_cap:
            continue
        ring = Ring(tuple("abc"[:nv]), p=p)
        x = random_polynomial(ring, rng, deg)
        y = random_polynomial(ring, rng, deg)
        res.pairs += 1
        res.by_n[n] = res.by_n.get(n, 0) + 1
        identities = (
            ("delta(1)", delta(ring.one()).is_zero()),
            ("delta(xy)", delta(x * y) == x ** p * delta(y) + delta(x) * y ** p + p * delta(x) * delta(y)),
            ("delta(x+y)", delta(x + y) == delta(x) + delta(y) + carry_term(x, y)),
        )
        for name, ok in identities:
            res.checks += 1
            if not ok:
                res.failures.append((name, str(x), str(y), n))
        for item in LEMMA_ITEMS:
            res.checks += 1
            try:
                ok = lemma_propdelta_check(item, x, y, n)
            except BudgetExceededError:
                res.inconclusive.append((item, str(x), str(y), n))
                continue
            if not ok:
                res.failures.append((item, str(x), str(y), n))
    return res
