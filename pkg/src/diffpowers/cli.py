"""Command line front end.

``verify`` runs the checks of a config (a file or the name of a bundled
config); ``member``, ``delta``, ``gb`` and ``presentation`` answer single
queries.  Exit status of ``verify``: 0 when every check passes, 2 when one
fails, 1 on a configuration or engine error.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import config as cfgmod
from . import groebner
from .chevalley import (
    VerificationReport,
    check_corollary,
    check_dq_properties,
    check_eta_cap,
    check_n_cap,
    check_thm_no_p,
    check_thm_p,
    compare_powers,
    format_rows,
)
from .errors import AlgebraError, ConfigError
from .groebner import IdealHandle, MonomialOrder, ideal_power
from .pderiv import delta_power, lemma_suite
from .poly import Ring, identifiers, parse
from .summand import SummandSpec, dq_power_member, presentation, r_mixed_power_member
from .symbolic import symbolic_power_generators

EXIT_PASS, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


# ---------------------------------------------------------------------------
# checks

def _n_max(c: dict) -> int:
    return int(c.get("n_max", 3))


def _same_up_to_sign(a, b) -> bool:
    return a == b or a == -b


def run_check(cfg: cfgmod.JobConfig, p: int, i: int) -> VerificationReport:
    ctx = cfgmod.build_context(cfg, p)
    c = cfg.checks[i]
    op = c["op"]
    spec, pres = ctx.spec, ctx.pres
    if op == "corollary":
        names = c.get("primes", list(ctx.primes))
        rep = check_corollary(spec, [ctx.primes[k] for k in names], _n_max(c))
    elif op == "thm_no_p":
        rep = check_thm_no_p(spec, ctx.primes[c["prime"]], _n_max(c))
    elif op == "thm_p":
        rep = check_thm_p(spec, ctx.primes[c["prime"]], _n_max(c))
    elif op == "closed_form":
        rep = _check_closed_form(ctx, c)
    elif op == "sharpness":
        rep = _check_sharpness(ctx, c)
    elif op == "presentation":
        rep = VerificationReport("presentation", {"summand": str(spec), "p": p})
        got = list(pres.kernel.generators)
        want = [ctx.parse_r(s) for s in c.get("expect_kernel", [])]
        rep.add(", ".join(map(str, got)), "expected kernel", len(got) == len(want) and all(
            any(_same_up_to_sign(g, w) for g in got) for w in want), "elimination")
        for j in got:
            rep.add(j, "0 under y_i -> f_i", pres.to_image(j).is_zero(), "substitution")
    elif op == "dq_table":
        rep = _check_dq_table(ctx, c)
    elif op == "compare_powers":
        Q = [ctx.parse_s(s) for s in c["ideal"]]
        probes = [ctx.parse_s(s) for s in c["probes"]]
        prime = ctx.primes.get(c["prime"]) if "prime" in c else None
        rows, rep = compare_powers(spec, Q, _n_max(c), probes, prime)
        rep.notes.append(format_rows(rows))
    elif op == "dq_properties":
        Q = [ctx.parse_s(s) for s in c["ideal"]]
        rep = check_dq_properties(spec, Q, _n_max(c), int(c.get("samples", 50)), cfg.seed)
    elif op in ("eta_cap", "n_cap"):
        rep = VerificationReport(op, {"summand": str(spec), "p": p, "element": c["element"], "n": c["n"]})
        fn = check_eta_cap if op == "eta_cap" else check_n_cap
        fn(spec, ctx.parse_s(c["element"]), int(c["n"]), rep)
    elif op == "lemma_suite":
        rep = VerificationReport("lemma_suite", {"p": p, "pairs": c.get("pairs", 200), "seed": cfg.seed})
        res = lemma_suite(p, int(c.get("pairs", 200)), cfg.seed, size_cap=int(c.get("size_cap", 400)))
        rep.add(f"{res.checks} checks on {res.pairs} pairs", "identities and lemma items",
                not res.failures, "lemma")
        rep.add(f"{len(res.inconclusive)} inconclusive", "budget", not res.inconclusive, "budget")
        rep.notes.append(f"pairs by n: {dict(sorted(res.by_n.items()))}")
        rep.notes.extend(f"failure: {f}" for f in res.failures[:20])
        rep.notes.extend(f"inconclusive: {f}" for f in res.inconclusive[:20])
    else:  # pragma: no cover - rejected at load time
        raise ConfigError(f"unknown op {op!r}")
    rep.inputs.setdefault("p", p)
    return rep


def _check_closed_form(ctx, c) -> VerificationReport:
    Q = ctx.primes[c["prime"]]
    rep = VerificationReport("closed_form", {"summand": str(ctx.spec), "p": ctx.p, "prime": str(Q),
                                             "n_max": _n_max(c)})
    for n in range(1, _n_max(c) + 1):
        closed = symbolic_power_generators(ctx.pres, Q, 2 * n)
        sat = symbolic_power_generators(ctx.pres, Q, 2 * n, use_closed_form=False)
        for g in closed.generators:
            rep.add(g, f"saturation Q^({2 * n})", sat.contains(g), "member")
        for g in sat.generators:
            rep.add(g, f"closed form Q^({2 * n})", closed.contains(g), "member")
    return rep


def _check_sharpness(ctx, c) -> VerificationReport:
    """``b^n in m^n`` and ``b^n not in m^(n+1)`` for the base element ``b``."""
    base = ctx.parse_r(c["base"])
    pres = ctx.pres
    rep = VerificationReport("sharpness", {"summand": str(ctx.spec), "p": ctx.p, "base": str(base),
                                           "n_max": _n_max(c)})
    m = pres.maximal_ideal(with_p=True)
    J = list(pres.kernel.generators)
    for n in range(1, _n_max(c) + 1):
        f = base ** n
        inside = IdealHandle(list(ideal_power(m, n).generators) + J, ring=pres.ring)
        above = IdealHandle(list(ideal_power(m, n + 1).generators) + J, ring=pres.ring)
        rep.add(f, f"m^{n} + J", inside.contains(f), "member")
        rep.add(f, f"not in m^{n + 1} + J", not above.contains(f), "member")
    return rep


def _check_dq_table(ctx, c) -> VerificationReport:
    spec = ctx.spec
    Q = [ctx.parse_s(s) for s in c["ideal"]]
    n = int(c.get("n", 2))
    probes = [ctx.parse_s(s) for s in c["probes"]]
    expect = c.get("expect")
    rep = VerificationReport("dq_table", {"summand": str(spec), "p": ctx.p, "ideal": c["ideal"], "n": n,
                                          "probes": c["probes"]})
    for k, f in enumerate(probes):
        v = dq_power_member(spec, f, Q, n)
        if expect is not None:
            rep.add(f, f"D({n}) expected {expect[k]}", v == bool(expect[k]), "dq")
        else:
            rep.notes.append(f"{f}: D({n}) {v}")
        if c.get("mixed") or "expect_mixed" in c:
            w = r_mixed_power_member(spec, f, Q, n)
            if "expect_mixed" in c:
                rep.add(f, f"mix({n}) expected {c['expect_mixed'][k]}", w == bool(c["expect_mixed"][k]), "mixed")
            else:
                rep.add(f, f"mix({n}) agrees with D({n})", w == v, "mixed")
    return rep


# ---------------------------------------------------------------------------
# verify

def _job(args):
    text, p, i, budget = args
    groebner.set_budget(budget)
    cfg = cfgmod.loads(text)
    t0 = time.perf_counter()
    try:
        rep = run_check(cfg, p, i)
        rep.millis = (time.perf_counter() - t0) * 1000.0
        return rep.to_dict()
    except AlgebraError as exc:
        rep = VerificationReport(cfg.checks[i]["op"], {"p": p, "error": exc.code})
        rep.add("-", "-", False, f"error:{exc.code}")
        rep.notes.append(str(exc))
        return rep.to_dict()


def verify(cfg: cfgmod.JobConfig, workers: int = 1, budget: int | None = None,
           only_p: int | None = None) -> list[dict]:
    ps = [only_p] if only_p is not None else cfg.p_values
    jobs = [(cfg.text, p, i, budget) for i in range(len(cfg.checks)) for p in ps]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(_job, jobs))
    else:
        out = [_job(j) for j in jobs]
    for (_, p, i, _), rep in zip(jobs, out):
        rep["id"] = f"{cfg.name}/{cfg.check_id(i)}/p={p}"
    return out


def _text_report(name: str, reports: Sequence[dict]) -> str:
    lines = []
    for r in reports:
        n = len(r["evidence"])
        lines.append(f"{r['verdict']:<4}  {r['id']}  ({n} evidence, {r['millis']:.0f} ms)")
        for e in r["evidence"]:
            if not e["verdict"]:
                lines.append(f"      failed: {e['element']}  in  {e['target']}  [{e['oracle']}]")
        for note in r.get("notes", []):
            if "\n" in note:
                lines.extend("      " + ln for ln in note.splitlines())
    failed = sum(r["verdict"] != "PASS" for r in reports)
    lines.append(f"{name}: {len(reports)} checks, {failed} failed")
    return "\n".join(lines)


def _write(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args) -> int:
    status = EXIT_PASS
    machine = []
    for target in args.config:
        cfg = cfgmod.load(target)
        if args.seed is not None:
            cfg.seed = args.seed
            cfg.text = _with_seed(cfg.text, args.seed)
        fmt = args.format or cfg.output.get("format", "text")
        budget = args.budget if args.budget is not None else cfg.budget
        reports = verify(cfg, args.workers, budget, args.p)
        for r in reports:
            VerificationReport.from_dict(r)  # structural re-check
        if any(r["verdict"] != "PASS" for r in reports):
            status = max(status, EXIT_FAIL)
        if fmt == "machine":
            machine.append({"config": cfg.name, "seed": cfg.seed, "reports": reports})
        else:
            _write(_text_report(cfg.name, reports), args.output or cfg.output.get("path"))
    if machine:
        _write(cfgmod.dumps(machine if len(machine) > 1 else machine[0]), args.output)
    return status


def _with_seed(text: str, seed: int) -> str:
    import json

    raw = json.loads(text)
    raw["seed"] = seed
    return json.dumps(raw)


# ---------------------------------------------------------------------------
# single queries

def _ring_for(texts: Sequence[str], vars_arg: str | None, p: int) -> Ring:
    if vars_arg:
        names = [v.strip() for v in vars_arg.split(",") if v.strip()]
    else:
        names = []
        for t in texts:
            for v in identifiers(t):
                if v != "p" and v not in names:
                    names.append(v)
        names.sort()
    return Ring(tuple(names), None, p)


def _split(s: str) -> list[str]:
    return [t for t in (x.strip() for x in s.split(",")) if t]


def cmd_member(args) -> int:
    gens = _split(args.ideal)
    ring = _ring_for(gens + [args.element], args.vars, args.p)
    I = IdealHandle([parse(g, ring) for g in gens], ring=ring)
    print("true" if I.contains(parse(args.element, ring)) else "false")
    return EXIT_PASS


def cmd_delta(args) -> int:
    ring = _ring_for([args.poly], args.vars, args.p)
    print(delta_power(parse(args.poly, ring), args.n))
    return EXIT_PASS


def cmd_gb(args) -> int:
    gens = _split(args.ideal)
    ring = _ring_for(gens, args.vars, args.p)
    order = {"grevlex": MonomialOrder.grevlex(), "lex": MonomialOrder.lex()}[args.order]
    for g in IdealHandle([parse(g, ring) for g in gens], order, ring).basis():
        print(g)
    return EXIT_PASS


def cmd_presentation(args) -> int:
    names = _split(args.vars)
    ring = Ring(tuple(names), None, args.p)
    if args.family == "veronese":
        spec = SummandSpec.veronese(ring, args.d)
    elif args.family == "segre":
        spec = SummandSpec.segre(ring, _split(args.left), _split(args.right))
    elif args.family == "monomial":
        spec = SummandSpec.monomial(ring, [parse(m, ring) for m in _split(args.monomials)])
    else:
        elements = [[int(x) for x in _split(e)] for e in args.element]
        spec = SummandSpec.invariant(ring, args.kind, elements)
    pres = presentation(spec)
    if args.show_map:
        for v, f in zip(pres.ring.variables, pres.images):
            print(f"{v} -> {f}")
    for j in pres.kernel.generators:
        print(j)
    return EXIT_PASS


def cmd_configs(args) -> int:
    for name in cfgmod.bundled_configs():
        print(name)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diffpowers", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the checks of one or more configs")
    v.add_argument("config", nargs="+", help="config file or bundled config name")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--budget", type=int, default=None, help="pair budget per Groebner computation")
    v.add_argument("--format", choices=("text", "machine"), default=None)
    v.add_argument("--output", default=None)
    v.add_argument("--p", type=int, default=None, help="run only this prime")
    v.set_defaults(func=cmd_verify)

    def common(sp):
        sp.add_argument("--p", type=int, default=2)
        sp.add_argument("--vars", default=None, help="comma separated variables (default: inferred)")

    m = sub.add_parser("member", help="decide f in I over Z")
    common(m)
    m.add_argument("--ideal", required=True, help="comma separated generators")
    m.add_argument("element")
    m.set_defaults(func=cmd_member)

    d = sub.add_parser("delta", help="apply the p-derivation")
    common(d)
    d.add_argument("--n", type=int, default=1)
    d.add_argument("poly")
    d.set_defaults(func=cmd_delta)

    g = sub.add_parser("gb", help="strong Groebner basis over Z")
    common(g)
    g.add_argument("--ideal", required=True)
    g.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    g.set_defaults(func=cmd_gb)

    pr = sub.add_parser("presentation", help="kernel of y_i -> f_i for a summand family")
    pr.add_argument("--family", choices=("veronese", "segre", "monomial", "invariant"), required=True)
    pr.add_argument("--vars", required=True)
    pr.add_argument("--p", type=int, default=2)
    pr.add_argument("--d", type=int, default=2)
    pr.add_argument("--left", default="")
    pr.add_argument("--right", default="")
    pr.add_argument("--monomials", default="")
    pr.add_argument("--kind", choices=("diagonal", "permutation"), default="diagonal")
    pr.add_argument("--element", action="append", default=[], help="group element, e.g. -1,-1")
    pr.add_argument("--show-map", action="store_true")
    pr.set_defaults(func=cmd_presentation)

    c = sub.add_parser("configs", help="list bundled configs")
    c.set_defaults(func=cmd_configs)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "budget", None) is not None:
        groebner.set_budget(args.budget)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (AlgebraError, ValueError, KeyError) as exc:
        code = getattr(exc, "code", "ENGINE_ERROR")
        print(f"error [{code}]: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
