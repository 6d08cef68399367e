"""Exact sparse multivariate polynomials over Z and F_p.

A polynomial is a map from exponent tuples to nonzero integer coefficients,
attached to a :class:`Ring` that fixes the variable names, their (positive)
weights, the designated prime ``p`` and whether coefficients live in Z or in
F_p.  Example, over ``Ring(("x", "y"))``::

    x^2*y - 3*y^3   <->   {(2, 1): 1, (0, 3): -3}

Values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import gcd
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    NonExactDivisionError,
    ParseError,
    RingMismatchError,
    ZeroPolynomialError,
)

Exponent = tuple[int, ...]


class Domain(enum.Enum):
    INTEGERS = "ZZ"
    INTEGERS_MOD_P = "GF(p)"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Ring:
    """Graded polynomial ring ``A[x_1..x_m]`` with A = Z or F_p.

    ``p`` is always present: in Z mode it is the prime used by the
    p-derivation and by reductions mod p.
    """

    variables: tuple[str, ...]
    weights: tuple[int, ...] | None = None
    p: int = 2
    domain: Domain = Domain.INTEGERS

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.weights is None:
            object.__setattr__(self, "weights", (1,) * len(self.variables))
        else:
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.weights) != len(self.variables):
            raise ValueError("one weight per variable is required")
        if any(w < 1 for w in self.weights):
            raise ValueError(f"variable weights must be positive, got {self.weights}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if not is_prime(self.p):
            raise ValueError(f"p must be a prime, got {self.p}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_modular(self) -> bool:
        return self.domain is Domain.INTEGERS_MOD_P

    @property
    def modulus(self) -> int | None:
        return self.p if self.domain is Domain.INTEGERS_MOD_P else None

    def mod_p(self) -> Ring:
        return Ring(self.variables, self.weights, self.p, Domain.INTEGERS_MOD_P)

    def integral(self) -> Ring:
        return Ring(self.variables, self.weights, self.p, Domain.INTEGERS)

    def with_p(self, p: int) -> Ring:
        return Ring(self.variables, self.weights, p, self.domain)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str | int) -> Polynomial:
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1}, trusted=True)

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp: Sequence[int], coeff: int = 1) -> Polynomial:
        if len(exp) != self.nvars:
            raise ValueError("exponent length does not match the variable count")
        if any(e < 0 for e in exp):
            raise ValueError("negative exponent")
        return Polynomial(self, {tuple(exp): coeff})

    def degree_of(self, exp: Exponent) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))

    def __call__(self, text: str) -> Polynomial:
        return parse(text, self)

    def __str__(self) -> str:
        base = "ZZ" if self.domain is Domain.INTEGERS else f"GF({self.p})"
        gens = ", ".join(self.variables)
        if any(w != 1 for w in self.weights):
            return f"{base}[{gens}] weights {list(self.weights)}"
        return f"{base}[{gens}]"


class _NonHomogeneous:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NONHOMOGENEOUS"

    def __bool__(self):
        return False


NONHOMOGENEOUS = _NonHomogeneous()


class Polynomial:
    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, int] | None = None, *, trusted=False):
        self.ring = ring
        self._hash = None
        if terms is None:
            self._terms: dict[Exponent, int] = {}
        elif trusted:
            self._terms = dict(terms)
        else:
            m = ring.modulus
            clean = {}
            for e, c in terms.items():
                if m is not None:
                    c %= m
                if c:
                    clean[tuple(e)] = c
            self._terms = clean

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> Polynomial:
        """Wrap an already-normalised dict without copying."""
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    # -- basic access -----------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(sorted(self._terms.items(), reverse=True))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(e == zero for e in self._terms)

    def constant_coefficient(self) -> int:
        return self._terms.get((0,) * self.ring.nvars, 0)

    def coefficient(self, exp: Sequence[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def monomials(self) -> list[Exponent]:
        return sorted(self._terms, reverse=True)

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    def total_degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("degree of the zero polynomial is undefined")
        return max(sum(e) for e in self._terms)

    def min_total_degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("degree of the zero polynomial is undefined")
        return min(sum(e) for e in self._terms)

    def homogeneous_components(self) -> dict[int, Polynomial]:
        parts: dict[int, dict] = {}
        deg = self.ring.degree_of
        for e, c in self._terms.items():
            parts.setdefault(deg(e), {})[e] = c
        return {d: Polynomial._raw(self.ring, t) for d, t in sorted(parts.items())}

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        m = self.ring.modulus
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if m is not None:
                v %= m
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        m = self.ring.modulus
        if m is None:
            return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})
        return Polynomial._raw(self.ring, {e: (-c) % m for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, _mul_terms(self._terms, other._terms, self.ring.modulus))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> Polynomial:
        return Polynomial(self.ring, {e: c * v for e, v in self._terms.items()})

    def shift(self, exp: Exponent, c: int = 1) -> Polynomial:
        """Multiply by the term ``c * x^exp``."""
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): c * v for e, v in self._terms.items()},
        )

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _mul_terms(a: dict, b: dict, modulus: int | None) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = get(e, 0) + ca * cb
    if modulus is None:
        return {e: c for e, c in out.items() if c}
    return {e: c % modulus for e, c in out.items() if c % modulus}


# -- spec-level operations ------------------------------------------------

def exact_div_int(f: Polynomial, c: int) -> Polynomial:
    """Divide every coefficient by the integer ``c``; all must be divisible."""
    if c == 0:
        raise ZeroDivisionError("division by zero")
    if f.ring.is_modular:
        raise NonExactDivisionError("integer division is only defined over Z")
    out = {}
    for e, v in f._terms.items():
        q, r = divmod(v, c)
        if r:
            raise NonExactDivisionError(f"coefficient {v} of {f} is not divisible by {c}")
        out[e] = q
    return Polynomial._raw(f.ring, out)


def weighted_degree(f: Polynomial):
    """Weighted degree of ``f``, or ``NONHOMOGENEOUS`` for mixed degrees."""
    if f.is_zero():
        raise ZeroPolynomialError("degree of the zero polynomial is undefined")
    degs = {f.ring.degree_of(e) for e in f._terms}
    if len(degs) == 1:
        return degs.pop()
    return NONHOMOGENEOUS


def is_homogeneous(f: Polynomial) -> bool:
    return weighted_degree(f) is not NONHOMOGENEOUS


def max_weighted_degree(f: Polynomial) -> int:
    if f.is_zero():
        raise ZeroPolynomialError("degree of the zero polynomial is undefined")
    return max(f.ring.degree_of(e) for e in f._terms)


def apply_endomorphism(f: Polynomial, images: Sequence[Polynomial], target: Ring | None = None) -> Polynomial:
    """Substitute ``x_i -> images[i]``; coefficients are left untouched.

    ``target`` defaults to the ring of the images (which may differ from the
    ring of ``f``, e.g. for structure maps of presentations).
    """
    if len(images) != f.ring.nvars:
        raise ValueError(f"expected {f.ring.nvars} images, got {len(images)}")
    if target is None:
        target = images[0].ring if images else f.ring
    for g in images:
        if g.ring != target:
            raise RingMismatchError("all images must live in one ring")
    powers: list[dict[int, Polynomial]] = [{0: target.one(), 1: g} for g in images]

    def power(i: int, k: int) -> Polynomial:
        cache = powers[i]
        if k not in cache:
            half = power(i, k // 2)
            sq = half * half
            cache[k] = sq * images[i] if k % 2 else sq
        return cache[k]

    acc: dict = {}
    m = target.modulus
    for e, c in f._terms.items():
        term = target.const(c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        for te, tc in term._terms.items():
            acc[te] = acc.get(te, 0) + tc
    return Polynomial(target, acc) if m is not None else Polynomial._raw(
        target, {e: c for e, c in acc.items() if c}
    )


def reduce_mod_p(f: Polynomial) -> Polynomial:
    """Coefficientwise reduction Z -> F_p."""
    if f.ring.is_modular:
        return f
    return Polynomial(f.ring.mod_p(), f._terms)


def lift(f: Polynomial) -> Polynomial:
    """Integer lift of an F_p polynomial with coefficients in [0, p)."""
    if not f.ring.is_modular:
        return f
    return Polynomial._raw(f.ring.integral(), dict(f._terms))


def change_ring(f: Polynomial, ring: Ring) -> Polynomial:
    """Re-embed ``f`` in a ring whose variables include those ``f`` uses."""
    used = {i for e in f._terms for i, k in enumerate(e) if k}
    missing = [f.ring.variables[i] for i in sorted(used) if f.ring.variables[i] not in ring.variables]
    if missing:
        raise RingMismatchError(f"{', '.join(missing)} not in the target ring")
    idx = [ring.variables.index(v) if v in ring.variables else -1 for v in f.ring.variables]
    out = {}
    for e, c in f._terms.items():
        ne = [0] * ring.nvars
        for i, k in zip(idx, e):
            ne[i] = k
        out[tuple(ne)] = c
    return Polynomial(ring, out)


# -- text format ------------------------------------------------------------

def _format_monomial(ring: Ring, e: Exponent) -> str:
    parts = []
    for name, k in zip(ring.variables, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Terms in descending lex order, explicit ``*`` and ``^``."""
    if f.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(sorted(f._terms.items(), reverse=True)):
        mono = _format_monomial(f.ring, e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("VAR", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("OP", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("END", "", n))
    return tokens


class _Parser:
    """Recursive descent over::

        expr   := term (('+'|'-') term)*
        term   := factor ('*' factor)*
        factor := INT | VAR ('^' UINT)? | '(' expr ')' ('^' UINT)? | '-' factor
    """

    def __init__(self, text: str, ring: Ring, p_symbol: bool):
        self.text = text
        self.ring = ring
        self.p_symbol = p_symbol
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "END":
            self.fail("empty expression")
        f = self.expr()
        if self.peek()[0] != "END":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self):
        f = self.term()
        while self.peek()[0] == "OP" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.factor()
        while self.peek()[:2] == ("OP", "*"):
            self.take()
            f = f * self.factor()
        return f

    def exponent(self):
        self.take()
        tok = self.peek()
        if tok[0] != "INT":
            self.fail("expected a non-negative integer exponent")
        self.take()
        return int(tok[1])

    def factor(self):
        tok = self.peek()
        kind, val, _ = tok
        if kind == "INT":
            self.take()
            return self.ring.const(int(val))
        if kind == "VAR":
            self.take()
            if val in self.ring.variables:
                base = self.ring.var(val)
            elif self.p_symbol and val == "p":
                base = self.ring.const(self.ring.p)
            else:
                self.fail(f"undeclared variable {val!r}", tok)
            if self.peek()[:2] == ("OP", "^"):
                return base ** self.exponent()
            return base
        if (kind, val) == ("OP", "("):
            self.take()
            f = self.expr()
            if self.peek()[:2] != ("OP", ")"):
                self.fail("expected ')'")
            self.take()
            if self.peek()[:2] == ("OP", "^"):
                return f ** self.exponent()
            return f
        if (kind, val) == ("OP", "-"):
            self.take()
            return -self.factor()
        if kind == "END":
            self.fail("unexpected end of input")
        self.fail(f"unexpected token {val!r}")


def parse(text: str, ring: Ring, *, p_symbol: bool = True) -> Polynomial:
    """Parse a polynomial expression in ``ring``.

    With ``p_symbol`` the identifier ``p`` (when not a ring variable) stands
    for the ring's designated prime, so configs can be reused across primes.
    """
    return _Parser(text, ring, p_symbol).parse()


def identifiers(text: str) -> list[str]:
    """Identifiers appearing in ``text`` in order of first occurrence."""
    seen: list[str] = []
    for kind, val, _ in _tokenize(text):
        if kind == "VAR" and val not in seen:
            seen.append(val)
    return seen


def polys(ring: Ring, texts: Iterable[str]) -> list[Polynomial]:
    return [parse(t, ring) for t in texts]
