"""Job configuration files (JSON).

A config names a ring, optionally a summand and primes of its
presentation, and a list of checks.  Checks run once per value in
``p_values``; elements are written with the symbol ``p`` for the current
prime, so one file serves several primes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import AlgebraError, ConfigError, ParseError
from .poly import Polynomial, Ring, is_prime, parse
from .summand import PresentedAlgebra, SummandSpec, presentation
from .symbolic import PrimeSpec

CHECK_OPS = (
    "corollary", "thm_no_p", "thm_p", "closed_form", "sharpness", "presentation",
    "dq_table", "compare_powers", "dq_properties", "eta_cap", "n_cap", "lemma_suite",
)
DEFAULT_SEED = 20240601


@dataclass
class JobConfig:
    name: str
    ring: dict
    p_values: list[int]
    summand: dict | None
    primes: list[dict]
    checks: list[dict]
    seed: int = DEFAULT_SEED
    budget: int | None = None
    output: dict = field(default_factory=dict)
    text: str = field(default="", repr=False, compare=False)

    def line_of(self, key: str) -> int | None:
        return line_of(self.text, key)

    def check_id(self, i: int) -> str:
        c = self.checks[i]
        return c.get("id") or f"{c['op']}#{i}"

    def to_dict(self) -> dict:
        d = {"name": self.name, "ring": self.ring, "p_values": self.p_values, "summand": self.summand,
             "primes": self.primes, "checks": self.checks, "seed": self.seed, "budget": self.budget,
             "output": self.output}
        return d


def line_of(text: str, key: str) -> int | None:
    m = re.search(r'"' + re.escape(key) + r'"\s*:', text)
    if m is None:
        return None
    return text.count("\n", 0, m.start()) + 1


def bundled_configs() -> list[str]:
    root = resources.files("diffpowers") / "configs"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def resolve(path_or_name: str) -> tuple[str, str]:
    """Return ``(text, label)`` for a file path or the name of a bundled config."""
    p = Path(path_or_name)
    if p.exists():
        return p.read_text(), str(p)
    name = path_or_name[:-5] if path_or_name.endswith(".json") else path_or_name
    res = resources.files("diffpowers") / "configs" / f"{name}.json"
    if res.is_file():
        return res.read_text(), f"bundled:{name}"
    raise ConfigError(f"no config file or bundled config named {path_or_name!r}")


def load(path_or_name: str) -> JobConfig:
    text, label = resolve(path_or_name)
    return loads(text, default_name=Path(label).stem)


def _require(d: dict, key: str, text: str, kind=None, parent: str | None = None):
    if key not in d:
        where = line_of(text, parent) if parent else 1
        raise ConfigError(f"missing required key {key!r}", key, where)
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise ConfigError(f"{key!r} must be a {getattr(kind, '__name__', kind)}", key, line_of(text, key))
    return v


def loads(text: str, default_name: str = "config") -> JobConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", None, exc.lineno) from None
    if not isinstance(raw, dict):
        raise ConfigError("the top level must be an object", None, 1)
    ring = _require(raw, "ring", text, dict)
    variables = _require(ring, "variables", text, list, parent="ring")
    p_default = ring.get("p", 2)
    p_values = raw.get("p_values", [p_default])
    if not isinstance(p_values, list) or not p_values:
        raise ConfigError("'p_values' must be a non-empty list", "p_values", line_of(text, "p_values"))
    for p in p_values + [p_default]:
        if not isinstance(p, int) or not is_prime(p):
            raise ConfigError(f"p must be prime, got {p!r}", "p", line_of(text, "p_values") or line_of(text, "p"))
    weights = ring.get("weights")
    if weights is not None:
        if not isinstance(weights, list) or len(weights) != len(variables):
            raise ConfigError("one weight per variable is required", "weights", line_of(text, "weights"))
        if any(not isinstance(w, int) or w < 1 for w in weights):
            raise ConfigError("weights must be positive integers", "weights", line_of(text, "weights"))
    try:
        Ring(tuple(variables), tuple(weights) if weights else None, p_values[0])
    except ValueError as exc:
        raise ConfigError(str(exc), "ring", line_of(text, "ring")) from None
    checks = _require(raw, "checks", text, list)
    for i, c in enumerate(checks):
        if not isinstance(c, dict) or c.get("op") not in CHECK_OPS:
            raise ConfigError(f"check {i} has unknown op {c.get('op') if isinstance(c, dict) else c!r}",
                              "op", line_of(text, "op"))
        for key in ("n_max", "n"):
            if key in c and (not isinstance(c[key], int) or c[key] < 1):
                raise ConfigError(f"check {i}: {key} must be an integer >= 1", key, line_of(text, key))
    cfg = JobConfig(
        name=str(raw.get("name", default_name)),
        ring=ring,
        p_values=list(p_values),
        summand=raw.get("summand"),
        primes=list(raw.get("primes", [])),
        checks=checks,
        seed=int(raw.get("seed", DEFAULT_SEED)),
        budget=raw.get("budget"),
        output=dict(raw.get("output", {})),
        text=text,
    )
    # resolve references eagerly so errors surface before any computation
    for p in cfg.p_values:
        ctx = build_context(cfg, p)
        for i, c in enumerate(cfg.checks):
            _validate_check(cfg, ctx, c, i)
    return cfg


@dataclass
class Context:
    """Everything a check needs for one prime ``p``."""

    p: int
    ring: Ring
    spec: SummandSpec | None = None
    pres: PresentedAlgebra | None = None
    primes: dict[str, PrimeSpec] = field(default_factory=dict)

    def parse_s(self, text: str) -> Polynomial:
        return parse(str(text), self.ring)

    def parse_r(self, text: str) -> Polynomial:
        return parse(str(text), self.pres.ring)


def _summand(cfg: JobConfig, ring: Ring) -> SummandSpec:
    s = cfg.summand
    fam = s.get("family")
    ext = s.get("differentially_extensible")
    try:
        if fam == "veronese":
            return SummandSpec.veronese(ring, int(s.get("D", 2)), ext)
        if fam == "segre":
            return SummandSpec.segre(ring, s["left"], s["right"], bool(ext))
        if fam == "monomial":
            return SummandSpec.monomial(ring, [parse(m, ring) for m in s["monomials"]], bool(ext))
        if fam == "invariant":
            return SummandSpec.invariant(ring, s.get("kind", "diagonal"), s["elements"], bool(ext))
    except KeyError as exc:
        key = exc.args[0]
        raise ConfigError(f"summand family {fam!r} needs {key!r}", key, line_of(cfg.text, "summand")) from None
    except (AlgebraError, ValueError) as exc:
        raise ConfigError(f"summand: {exc}", "summand", line_of(cfg.text, "summand")) from None
    raise ConfigError(f"unknown summand family {fam!r}", "family", line_of(cfg.text, "family"))


def _prime(cfg: JobConfig, pres: PresentedAlgebra, d: dict, i: int) -> PrimeSpec:
    R = pres.ring
    name = d.get("name", f"Q{i}")
    try:
        if d.get("maximal"):
            return PrimeSpec.maximal(R, name=name)
        if "variables" in d:
            for v in d["variables"]:
                if v not in R.variables:
                    raise ConfigError(f"prime {name}: {v!r} is not a presentation variable "
                                      f"({', '.join(R.variables)})", "variables", line_of(cfg.text, "primes"))
            return PrimeSpec.from_variables(R, d["variables"], bool(d.get("contains_p", False)),
                                            d.get("family"), name)
        gens = [parse(g, R) for g in d["generators"]]
        return PrimeSpec.user(R, gens, parse(d["witness"], R), d.get("contains_p"), name)
    except KeyError as exc:
        raise ConfigError(f"prime {name} needs {exc.args[0]!r}", exc.args[0], line_of(cfg.text, "primes")) from None
    except ParseError as exc:
        raise ConfigError(f"prime {name}: {exc}", "primes", line_of(cfg.text, "primes")) from None


def build_context(cfg: JobConfig, p: int) -> Context:
    weights = cfg.ring.get("weights")
    ring = Ring(tuple(cfg.ring["variables"]), tuple(weights) if weights else None, p)
    ctx = Context(p, ring)
    if cfg.summand is not None:
        ctx.spec = _summand(cfg, ring)
        ctx.pres = presentation(ctx.spec)
        for i, d in enumerate(cfg.primes):
            q = _prime(cfg, ctx.pres, d, i)
            if q.name in ctx.primes:
                raise ConfigError(f"duplicate prime name {q.name!r}", "name", line_of(cfg.text, "primes"))
            ctx.primes[q.name] = q
    elif cfg.primes:
        raise ConfigError("primes need a summand block", "primes", line_of(cfg.text, "primes"))
    return ctx


_S_KEYS = ("ideal", "probes", "element")
_R_KEYS = ("base", "expect_kernel")


def _validate_check(cfg: JobConfig, ctx: Context, c: dict, i: int) -> None:
    op = c["op"]
    if op != "lemma_suite" and ctx.spec is None:
        raise ConfigError(f"check {i} ({op}) needs a summand block", "summand", None)
    for key in ("prime",):
        if key in c and c[key] not in ctx.primes:
            raise ConfigError(f"check {i}: unknown prime {c[key]!r}", key, line_of(cfg.text, key))
    if op in ("thm_no_p", "thm_p", "closed_form") and "prime" not in c:
        raise ConfigError(f"check {i} ({op}) needs 'prime'", "prime", line_of(cfg.text, "op"))
    if "primes" in c:
        for name in c["primes"]:
            if name not in ctx.primes:
                raise ConfigError(f"check {i}: unknown prime {name!r}", "primes", line_of(cfg.text, "primes"))
    try:
        for key in _S_KEYS:
            if key in c:
                vals = c[key] if isinstance(c[key], list) else [c[key]]
                for v in vals:
                    ctx.parse_s(v)
        if "base" in c:
            ctx.parse_r(c["base"])
        for v in c.get("expect_kernel", []):
            ctx.parse_r(v)
    except ParseError as exc:
        raise ConfigError(f"check {i}: {exc}", key, line_of(cfg.text, key)) from None
    if op == "dq_table" and "expect" in c and len(c["expect"]) != len(c.get("probes", [])):
        raise ConfigError(f"check {i}: one expectation per probe", "expect", line_of(cfg.text, "expect"))


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
