"""Instance checks of the uniform Chevalley containments and report objects.

Every check is a finite instantiation: the listed primes and ``n`` up to a
bound.  A report holds one evidence entry per membership decided, and its
verdict is the conjunction of those entries.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .errors import AlgebraError, MixedPowerUnavailableError, PreconditionError
from .groebner import IdealHandle, ideal_power
from .poly import Polynomial, change_ring
from .summand import (
    PresentedAlgebra,
    SummandSpec,
    dq_power_member,
    presentation,
    r_mixed_power_member,
    random_element,
    subalgebra_member,
)
from .symbolic import PrimeSpec, symbolic_power_generators


@dataclass
class Evidence:
    element: str
    target: str
    verdict: bool
    oracle: str

    @classmethod
    def from_dict(cls, d: dict) -> Evidence:
        return cls(str(d["element"]), str(d["target"]), bool(d["verdict"]), str(d["oracle"]))


@dataclass
class VerificationReport:
    """``{check, inputs, evidence[], verdict, millis}``; append-only."""

    check: str
    inputs: dict
    evidence: list[Evidence] = field(default_factory=list)
    millis: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(e.verdict for e in self.evidence)

    def add(self, element, target, verdict: bool, oracle: str) -> bool:
        self.evidence.append(Evidence(str(element), str(target), bool(verdict), oracle))
        return bool(verdict)

    def extend(self, other: VerificationReport) -> None:
        self.evidence.extend(other.evidence)
        self.notes.extend(other.notes)

    def failures(self) -> list[Evidence]:
        return [e for e in self.evidence if not e.verdict]

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "inputs": self.inputs,
            "evidence": [asdict(e) for e in self.evidence],
            "verdict": "PASS" if self.verdict else "FAIL",
            "millis": round(self.millis, 3),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        """Rebuild a report; the stored verdict must match its evidence."""
        rep = cls(d["check"], dict(d["inputs"]), [Evidence.from_dict(e) for e in d["evidence"]],
                  float(d.get("millis", 0.0)), list(d.get("notes", [])))
        stored = d["verdict"]
        if stored not in ("PASS", "FAIL"):
            raise ValueError(f"unknown verdict {stored!r}")
        if (stored == "PASS") != rep.verdict:
            raise ValueError(f"report {rep.check}: verdict {stored} contradicts its evidence")
        return rep


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.millis += (time.perf_counter() - self.t0) * 1000.0
        return False


# ---------------------------------------------------------------------------
# ideals of the presentation

def _q_power(pres: PresentedAlgebra, n: int, with_p: bool) -> IdealHandle:
    """``m^n + J`` (``with_p``) or ``q^n + J`` in the presentation ring."""
    base = pres.maximal_ideal(with_p)
    return IdealHandle(list(ideal_power(base, n).generators) + list(pres.kernel.generators),
                       ring=pres.ring)


def _representation_order(pres: PresentedAlgebra, g: Polynomial):
    ok, rep = subalgebra_member(pres.spec, g)
    if not ok:
        from .errors import NotInSummandError

        raise NotInSummandError(f"{g} is not in {pres.spec}")
    return min((sum(e) for e in rep.terms), default=None), change_ring(rep, pres.ring)


def _in_eta_power(g: Polynomial, k: int) -> bool:
    return all(sum(e) >= k for e in g.terms)


def _p_valuation(c: int, p: int) -> int:
    c = abs(c)
    v = 0
    while c and c % p == 0:
        c //= p
        v += 1
    return v


def _in_n_power(g: Polynomial, k: int) -> bool:
    """``g in (p, x_1..x_m)^k`` in ``S``: termwise ``v_p(c) + |e| >= k``."""
    p = g.ring.p
    return all(_p_valuation(c, p) + sum(e) >= k for e, c in g.terms.items())


def check_eta_cap(spec: SummandSpec, g: Polynomial, n: int, report: VerificationReport | None = None,
                  D: int | None = None) -> bool:
    """``R ∩ eta^{nD} ⊆ q^n`` on one element: ``g = P(f)`` uses only monomials of y-degree ``>= n``."""
    D = spec.D if D is None else D
    if not _in_eta_power(g, n * D):
        raise PreconditionError(f"{g} is not in eta^{n * D}")
    pres = presentation(spec)
    if g.is_zero():
        return True
    alpha, rep = _representation_order(pres, g)
    derived = alpha >= n
    direct = _q_power(pres, n, with_p=False).contains(rep)
    if report is not None:
        report.add(g, f"q^{n} via y-degree {alpha} >= {n}", derived, "eta_cap")
        report.add(rep, f"q^{n} + J", direct, "member")
    return derived and direct


def check_n_cap(spec: SummandSpec, g: Polynomial, n: int, report: VerificationReport | None = None,
                D: int | None = None) -> bool:
    """``R ∩ n^{nD} ⊆ m^n`` on one element, via ``g = p^{nD-d} g~`` and the y-degree of ``g~``."""
    D = spec.D if D is None else D
    p = spec.ring.p
    if not _in_n_power(g, n * D):
        raise PreconditionError(f"{g} is not in n^{n * D}")
    pres = presentation(spec)
    if g.is_zero():
        return True
    e = min(_p_valuation(c, p) for c in g.terms.values())
    rep_full = _representation_order(pres, g)[1]
    if e >= n * D:
        derived, note = True, f"p^{n * D} divides g"
    else:
        d = n * D - e
        gt = Polynomial(g.ring, {k: c // p ** e for k, c in g.terms.items()})
        alpha, _ = _representation_order(pres, gt)
        derived = n * D - d + alpha >= n
        note = f"nD-d+alpha = {n * D - d}+{alpha} >= {n}"
    direct = _q_power(pres, n, with_p=True).contains(rep_full)
    if report is not None:
        report.add(g, f"m^{n} via {note}", derived, "n_cap")
        report.add(rep_full, f"m^{n} + J", direct, "member")
    return derived and direct


def _inputs(spec: SummandSpec, prime: PrimeSpec | None, n_max: int, **extra) -> dict:
    d = {"summand": str(spec), "p": spec.ring.p, "D": spec.D, "n_max": n_max}
    if prime is not None:
        d["prime"] = str(prime)
    d.update(extra)
    return d


def _images(pres: PresentedAlgebra, gens: Iterable[Polynomial]) -> list[Polynomial]:
    return [pres.to_image(g) for g in gens]


def check_thm_no_p(spec: SummandSpec, Q: PrimeSpec, n_max: int, D: int | None = None) -> VerificationReport:
    """``Q^{(nD)} ⊆ q^n`` for ``n <= n_max`` (``p not in Q``).

    ``D`` defaults to the largest generator degree; passing a smaller value
    is only useful as a negative control.
    """
    report = VerificationReport("thm_no_p", _inputs(spec, Q, n_max))
    report.notes.append("finite instance: listed prime, n <= n_max")
    if Q.contains_p:
        raise PreconditionError(f"{Q} contains p; use check_thm_p")
    with _Timer(report):
        pres = presentation(spec)
        D = spec.D if D is None else D
        report.inputs["D"] = D
        for n in range(1, n_max + 1):
            sp = symbolic_power_generators(pres, Q, n * D)
            if sp.flags:
                report.notes.append(f"n={n}: " + ",".join(sp.flags))
            target = _q_power(pres, n, with_p=False)
            for g in sp.generators:
                report.add(g, f"q^{n} + J", target.contains(g), "member")
                img = pres.to_image(g)
                if img.is_zero():
                    continue
                inside = _in_eta_power(img, n * D)
                report.add(img, f"eta^{n * D}", inside, "degree")
                if inside:
                    check_eta_cap(spec, img, n, report, D)
    return report


def check_thm_p(spec: SummandSpec, Q: PrimeSpec, n_max: int, D: int | None = None) -> VerificationReport:
    """``Q^{(nD)} ⊆ m^n`` for ``n <= n_max`` (``p in Q``); ``D`` as in :func:`check_thm_no_p`."""
    report = VerificationReport("thm_p", _inputs(spec, Q, n_max))
    report.notes.append("finite instance: listed prime, n <= n_max")
    if not Q.contains_p:
        raise PreconditionError(f"{Q} does not contain p; use check_thm_no_p")
    with _Timer(report):
        pres = presentation(spec)
        D = spec.D if D is None else D
        report.inputs["D"] = D
        for n in range(1, n_max + 1):
            sp = symbolic_power_generators(pres, Q, n * D)
            if sp.flags:
                report.notes.append(f"n={n}: " + ",".join(sp.flags))
            target = _q_power(pres, n, with_p=True)
            for g in sp.generators:
                report.add(g, f"m^{n} + J", target.contains(g), "member")
                img = pres.to_image(g)
                if img.is_zero():
                    continue
                inside = _in_n_power(img, n * D)
                report.add(img, f"n^{n * D}", inside, "degree")
                if inside:
                    check_n_cap(spec, img, n, report, D)
    return report


def check_corollary(spec: SummandSpec, primes: Sequence[PrimeSpec], n_max: int) -> VerificationReport:
    report = VerificationReport("corollary", _inputs(spec, None, n_max, primes=[str(q) for q in primes]))
    with _Timer(report):
        for Q in primes:
            sub = check_thm_p(spec, Q, n_max) if Q.contains_p else check_thm_no_p(spec, Q, n_max)
            report.extend(sub)
    return report


@dataclass
class PowerRow:
    probe: str
    n: int
    symbolic: bool | None
    dq: bool
    mixed: bool | None


def compare_powers(spec: SummandSpec, Q: Sequence[Polynomial], n_max: int, probes: Sequence[Polynomial],
                   prime: PrimeSpec | None = None) -> tuple[list[PowerRow], VerificationReport]:
    """Membership table for ``Q^(n)``, ``Q^{D(n)}`` and ``Q^{<n>mix}`` on probes.

    ``Q`` is given by generators in image form.  Only the containment
    ``Q^{D(n)} ⊆ Q^{<n>mix}`` is asserted, and only when the summand is
    declared differentially extensible; everything else is recorded.
    """
    report = VerificationReport("compare_powers", _inputs(spec, prime, n_max, Q=[str(q) for q in Q]))
    rows: list[PowerRow] = []
    with _Timer(report):
        pres = presentation(spec) if prime is not None else None
        try:
            from .summand import r_mixed_route

            r_mixed_route(spec)
            mixed_ok = True
        except MixedPowerUnavailableError as exc:
            report.notes.append(f"mixed powers on R unavailable: {exc}")
            mixed_ok = False
        for f in probes:
            for n in range(1, n_max + 1):
                sym = None
                if pres is not None:
                    sym = symbolic_power_generators(pres, prime, n).contains(pres.from_image(f))
                dq = dq_power_member(spec, f, Q, n)
                mixed = r_mixed_power_member(spec, f, Q, n) if mixed_ok else None
                rows.append(PowerRow(str(f), n, sym, dq, mixed))
                if spec.differentially_extensible and mixed is not None:
                    report.add(f, f"D({n}) ⊆ mix({n})", (not dq) or mixed, "containment")
                else:
                    report.notes.append(f"{f}, n={n}: dq={dq} mixed={mixed} symbolic={sym}")
    return rows, report


def format_rows(rows: Sequence[PowerRow]) -> str:
    def v(x):
        return "-" if x is None else ("yes" if x else "no")

    width = max([len(r.probe) for r in rows] + [5])
    lines = [f"{'probe':<{width}}  n  symbolic  D(n)  mixed"]
    for r in rows:
        lines.append(f"{r.probe:<{width}}  {r.n}  {v(r.symbolic):<8}  {v(r.dq):<4}  {v(r.mixed)}")
    return "\n".join(lines)


def safe_check(fn, *args, **kwargs) -> VerificationReport:
    """Run a check; an engine error becomes a failing report instead of escaping."""
    try:
        return fn(*args, **kwargs)
    except AlgebraError as exc:
        rep = VerificationReport(getattr(fn, "__name__", "check"), {"error": exc.code})
        rep.add("-", "-", False, f"error:{exc.code}")
        rep.notes.append(str(exc))
        return rep


def check_dq_properties(spec: SummandSpec, Q: Sequence[Polynomial], n_max: int, samples: int = 50,
                        seed: int = 0) -> VerificationReport:
    """``Q^n ⊆ Q^{D(n)}``, monotonicity in ``n`` and the primary property on samples.

    ``Q`` is given by generators in image form and must contain ``p``.
    """
    import random

    rng = random.Random(seed)
    report = VerificationReport("dq_properties", _inputs(spec, None, n_max, Q=[str(q) for q in Q],
                                                          samples=samples, seed=seed))
    with _Timer(report):
        Qh = IdealHandle(list(Q), ring=spec.ring)
        for n in range(1, n_max + 1):
            for g in ideal_power(Qh, n).generators:
                report.add(g, f"Q^D({n}) from Q^{n}", dq_power_member(spec, g, Q, n), "dq")
        # monotonicity: membership at n + 1 forces membership at n
        pool = [random_element(spec, rng) for _ in range(samples)]
        for f in pool:
            prev = None
            for n in range(n_max + 1, 0, -1):
                cur = dq_power_member(spec, f, Q, n)
                if prev is not None:
                    report.add(f, f"D({n + 1}) ⊆ D({n})", (not prev) or cur, "monotone")
                prev = cur
        # primary: x not in Q and x*y in Q^{D(n)} force y in Q^{D(n)}
        live = 0
        for k in range(samples):
            n = 1 + k % n_max
            x = random_element(spec, rng)
            while Qh.contains(x):
                x = random_element(spec, rng)
            if k % 2:
                y = random_element(spec, rng)
            else:
                # bias towards the interesting case y in Q^{n-1}
                y = random_element(spec, rng, max_factors=1)
                for _ in range(n - 1):
                    y = y * rng.choice(list(Q))
            if dq_power_member(spec, x * y, Q, n):
                live += 1
                report.add(f"x={x}; y={y}", f"Q^D({n}) primary", dq_power_member(spec, y, Q, n), "primary")
        report.notes.append(f"primary: {live} of {samples} sampled pairs have x*y in the power")
    return report
