"""Divided-power partial derivatives and the differential power test.

For a polynomial ring over Z the operators of order <= b are generated, as
a module over the ring, by the divided partials ``d^[alpha]`` with
``|alpha| <= b``, so quantifying over those finitely many operators is
enough.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Iterator

from .groebner import IdealHandle
from .poly import Polynomial, Ring


@dataclass(frozen=True, order=True)
class DividedPartial:
    """``d^[alpha]``: sends ``x^beta`` to ``prod C(beta_i, alpha_i) x^(beta - alpha)``."""

    alpha: tuple[int, ...]

    @property
    def order(self) -> int:
        return sum(self.alpha)

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply_divided_partial(self.alpha, f)

    def __str__(self):
        return "d[" + ",".join(map(str, self.alpha)) + "]"


def apply_divided_partial(alpha, f: Polynomial) -> Polynomial:
    alpha = tuple(alpha)
    if len(alpha) != f.ring.nvars:
        raise ValueError(f"alpha has {len(alpha)} entries, ring has {f.ring.nvars} variables")
    if not any(alpha):
        return f
    out: dict = {}
    for e, c in f._terms.items():
        coeff = c
        for b, a in zip(e, alpha):
            if b < a:
                coeff = 0
                break
            if a:
                coeff *= comb(b, a)
        if coeff:
            ne = tuple(b - a for b, a in zip(e, alpha))
            out[ne] = out.get(ne, 0) + coeff
    return Polynomial(f.ring, out)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for k in range(total, -1, -1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def multi_indices(nvars: int, max_order: int) -> Iterator[tuple[int, ...]]:
    """All ``alpha`` with ``|alpha| <= max_order``, by increasing order."""
    for b in range(max_order + 1):
        yield from _compositions(b, nvars)


def enumerate_operators(max_order: int, ring: Ring) -> list[DividedPartial]:
    if max_order < 0:
        raise ValueError("operator order must be >= 0")
    ops = [DividedPartial(a) for a in multi_indices(ring.nvars, max_order)]
    assert len(ops) == comb(ring.nvars + max_order, max_order)
    return ops


def differential_power_member(f: Polynomial, I: IdealHandle, n: int) -> bool:
    """``f in I^<n>``: every divided partial of order ``< n`` sends ``f`` into ``I``."""
    if n < 1:
        raise ValueError("differential powers are indexed by n >= 1")
    if f.is_zero():
        return True
    top = min(n - 1, f.total_degree())
    for alpha in multi_indices(f.ring.nvars, top):
        g = apply_divided_partial(alpha, f)
        if not g.is_zero() and not I.contains(g):
            return False
    return True


def leibniz_terms(alpha) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs ``(beta, gamma)`` with ``beta + gamma = alpha``."""
    for beta in product(*(range(a + 1) for a in alpha)):
        yield beta, tuple(a - b for a, b in zip(alpha, beta))
