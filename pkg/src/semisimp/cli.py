"""Command line entry point: ``semisimp run <task> [options]``.

Exit codes: 0 all checks passed, 1 malformed input, 2 a mathematical check
failed, 3 the engine hit a budget or could not decide.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import basedring as br
from .errors import (
    BudgetExceeded,
    ClusteringAmbiguous,
    DimCapExceeded,
    IndecomposabilityUnresolved,
    IsoUndecided,
    SearchTimeout,
    SemisimpError,
    Truncated,
)

EXIT_OK, EXIT_INPUT, EXIT_FAILED, EXIT_BUDGET = 0, 1, 2, 3

TASKS = (
    "ssimp-group", "verify-equiv", "verify-descent", "vertex-sweep", "sp-check", "ring-validate", "ring-iso",
    "ring-characters", "qcase-generic", "qcase-root", "char2", "lucas-sweep",
)

# TaskSpec keys accepted in --spec files, mapped to argparse destinations
SPEC_KEYS = {
    "group", "prime", "degree", "generator", "max_simples", "max_tensor_dim", "max_word_length", "seed", "n",
    "level", "variant", "out", "report", "jobs", "a", "b", "ring", "subgroup", "p", "max", "primes", "timeout",
}


class InputError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("SSIMP_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"SSIMP_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="semisimp", description="Semisimplification engine")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a named task")
    run.add_argument("task", choices=TASKS)
    run.add_argument("--spec", help="JSON file with task parameters (keys as the long options)")
    run.add_argument("--group", help="catalog name (e.g. symmetric:5, S5, cyclic:5) or JSON literal")
    run.add_argument("--prime", type=int)
    run.add_argument("--degree", type=int, help="field degree r for GF(p^r)")
    run.add_argument("--generator", action="append", help="module constructor, repeatable (perm_quotient, jordan:2, ...)")
    run.add_argument("--max-simples", type=int)
    run.add_argument("--max-tensor-dim", type=int)
    run.add_argument("--max-word-length", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--n", type=int)
    run.add_argument("--level", type=int)
    run.add_argument("--variant", choices=["GL", "SL", "PGL"])
    run.add_argument("--out", help="path for the JSON artifact")
    run.add_argument("--report", help="path for a markdown report")
    run.add_argument("--jobs", type=int, help="worker cap (computations run in one process)")
    run.add_argument("--a", help="ring: JSON path or catalog:<name>")
    run.add_argument("--b", help="ring: JSON path or catalog:<name>")
    run.add_argument("--ring", help="ring: JSON path or catalog:<name>")
    run.add_argument("--subgroup", choices=["normalizer", "sylow", "whole"], help="subgroup for verify tasks")
    run.add_argument("--p", type=int, help="prime for sp-check")
    run.add_argument("--max", type=int, help="sweep bound")
    run.add_argument("--primes", help="comma separated primes for lucas-sweep")
    run.add_argument("--timeout", type=float, help="iso search timeout in seconds")
    return ap


def _merge_spec(args) -> None:
    if not args.spec:
        return
    try:
        obj = json.loads(Path(args.spec).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read spec file: {exc}") from None
    if not isinstance(obj, dict):
        raise InputError("spec file must hold a JSON object")
    unknown = set(obj) - SPEC_KEYS - {"task"}
    if unknown:
        raise InputError(f"unknown spec fields: {sorted(unknown)}")
    if "task" in obj and obj["task"] != args.task:
        raise InputError(f"spec is for task {obj['task']!r}, not {args.task!r}")
    for k, v in obj.items():
        if k == "task":
            continue
        if getattr(args, k, None) is None:
            if k == "generator" and isinstance(v, str):
                v = [v]
            setattr(args, k, v)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"task {args.task} needs --{', --'.join(m.replace('_', '-') for m in missing)}")


def _group(args):
    from .groups import catalog, group_from_literal

    text = args.group
    if text.lstrip().startswith("{"):
        try:
            return group_from_literal(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"bad group literal: {exc}") from None
    return catalog(text)


def _field(args):
    from .exact_linalg.fields import GF

    return GF(args.prime, args.degree or 1)


def _budget(args):
    from .ssimp import Budget

    b = Budget()
    if args.max_simples is not None:
        b.max_simples = args.max_simples
    if args.max_tensor_dim is not None:
        b.max_tensor_dim = args.max_tensor_dim
    if args.max_word_length is not None:
        b.max_word_length = args.max_word_length
    return b


def _generators(args, G, F):
    from .modrep import module_from_spec
    from .ssimp import default_generators

    if not args.generator:
        return default_generators(G, F)
    mods = []
    for spec in args.generator:
        m = module_from_spec(G, F, spec)
        m.name = m.name or spec
        mods.append(m)
    return mods


def _ring(source: str) -> br.BasedRing:
    if source.startswith("catalog:"):
        return br.catalog(source[len("catalog:"):])
    try:
        return br.ring_from_json(Path(source).read_text())
    except OSError as exc:
        raise InputError(f"cannot read ring file: {exc}") from None


class Output:
    """Collects the deterministic JSON artifact, markdown lines and timings."""

    def __init__(self, args):
        self.args = args
        self.artifact: dict | None = None
        self.lines: list[str] = []
        self.timings: dict[str, float] = {}

    def say(self, line: str = "") -> None:
        self.lines.append(line)
        print(line)

    def flush(self, title: str) -> None:
        if self.args.out and self.artifact is not None:
            Path(self.args.out).parent.mkdir(parents=True, exist_ok=True)
            Path(self.args.out).write_text(json.dumps(self.artifact, sort_keys=True) + "\n")
        if self.args.report:
            md = [f"# {title}", ""] + self.lines + ["", "## Timings", ""]
            md += [f"- {k}: {v:.2f} s" for k, v in self.timings.items()]
            Path(self.args.report).parent.mkdir(parents=True, exist_ok=True)
            Path(self.args.report).write_text("\n".join(md) + "\n")


def _run_semisimplify(args, out: Output, G=None, F=None, gens=None):
    from .ssimp import semisimplify

    G = G or _group(args)
    F = F or _field(args)
    gens = gens if gens is not None else _generators(args, G, F)
    t = time.monotonic()
    run = semisimplify(G, F, gens, budget=_budget(args), seed=args.seed)
    out.timings[f"semisimplify {G.name}"] = time.monotonic() - t
    return run


# -- tasks ------------------------------------------------------------------------------


def task_ssimp_group(args, out: Output) -> int:
    _need(args, "group", "prime")
    run = _run_semisimplify(args, out)
    R = run.ring()
    out.artifact = json.loads(run.to_json())
    out.say(f"group {run.group.name} over {run.field}: {run.rank} simples, closed={run.closed}")
    out.say("")
    out.say("| index | label | dim | dual |")
    out.say("|---|---|---|---|")
    for i, (lab, d) in enumerate(zip(run.labels, run.dims())):
        out.say(f"| {i} | {lab} | {d} | {run.duals[i]} |")
    if not run.closed:
        out.say("run is not closed within the budget")
        return EXIT_BUDGET
    rep = br.validate(R)
    out.say(rep.summary())
    if not rep.ok or not run.dim_homomorphism_ok():
        return EXIT_FAILED
    return EXIT_OK


def _subgroup(args, G, p):
    from .groups import normalizer, sylow

    kind = args.subgroup or "normalizer"
    if kind == "whole":
        return G.whole()
    P = sylow(G, p)
    return P if kind == "sylow" else normalizer(G, P)


def task_verify_equiv(args, out: Output) -> int:
    from .ssimp import restricted_generators, semisimplify, verify_equivalence

    _need(args, "group", "prime")
    G, F = _group(args), _field(args)
    runG = _run_semisimplify(args, out, G, F)
    N = _subgroup(args, G, F.p)
    t = time.monotonic()
    runN = semisimplify(N.group, F, restricted_generators(runG, N), budget=_budget(args), seed=args.seed)
    out.timings["semisimplify N"] = time.monotonic() - t
    rep = verify_equivalence(runG, runN, N)
    out.artifact = {"verdict": rep.verdict, "rank_G": rep.rank_G, "rank_N": rep.rank_N,
                    "bijection": {runG.labels[i]: runN.labels[j] for i, j in sorted(rep.bijection.items())},
                    "problems": rep.problems}
    out.say(f"G-simples {rep.rank_G}, N-simples {rep.rank_N} (|N| = {N.order}), verdict {rep.verdict}")
    for pr in rep.problems:
        out.say(f"- {pr}")
    if not (runG.closed and runN.closed):
        return EXIT_BUDGET
    return EXIT_OK if rep.verdict else EXIT_FAILED


def task_verify_descent(args, out: Output) -> int:
    from .ssimp import verify_restriction_descent

    _need(args, "group", "prime")
    G, F = _group(args), _field(args)
    run = _run_semisimplify(args, out, G, F)
    H = _subgroup(args, G, F.p)
    rep = verify_restriction_descent(run, H)
    out.artifact = {"violations": rep.violations, "checked_objects": rep.checked_objects,
                    "checked_morphisms": rep.checked_morphisms, "index_coprime": rep.index_coprime}
    if not rep.index_coprime:
        out.say("warning: the index of the subgroup is divisible by p")
    out.say(f"{rep.checked_objects} negligible objects, {rep.checked_morphisms} morphisms checked; "
            f"{len(rep.violations)} violations")
    for v in rep.violations:
        out.say(f"- {v}")
    return EXIT_OK if rep.ok else EXIT_FAILED


def task_vertex_sweep(args, out: Output) -> int:
    from .groups import p_subgroups_up_to_conjugacy, sylow
    from .ssimp import vertex

    _need(args, "group", "prime")
    G, F = _group(args), _field(args)
    run = _run_semisimplify(args, out, G, F)
    cands = p_subgroups_up_to_conjugacy(G, F.p)
    syl = sylow(G, F.p).order
    rows = []
    ok = True
    for lab, rec in zip(run.labels, run.registry.records):
        v = vertex(rec.module, cands)
        rows.append({"label": lab, "dim": rec.dim, "vertex_order": v.order})
        if rec.dim % F.p and v.order != syl:
            ok = False
    out.artifact = {"sylow_order": syl, "vertices": rows}
    out.say(f"Sylow order {syl}")
    for r in rows:
        out.say(f"- {r['label']} (dim {r['dim']}): vertex of order {r['vertex_order']}")
    return EXIT_OK if ok else EXIT_FAILED


def task_sp_check(args, out: Output) -> int:
    from .ssimp import sp_image_check

    _need(args, "p")
    t = time.monotonic()
    rep = sp_image_check(args.p, seed=args.seed, budget=_budget(args))
    out.timings["sp_image_check"] = time.monotonic() - t
    R = rep.run.ring()
    out.artifact = {"p": rep.p, "rank": rep.rank, "expected_rank": rep.expected_rank, "closed": rep.closed,
                    "iso": None if rep.iso is None else {R.basis[i]: j for i, j in sorted(rep.iso.items())},
                    "chi": rep.generator_pin, "order_of_V_p-1": rep.order_of_v_pm1,
                    "ring": json.loads(rep.run.to_json())}
    out.say(f"S_{args.p}: {rep.rank} simples (expected {rep.expected_rank}), closed={rep.closed}, "
            f"iso {'found' if rep.iso else 'not found'}, order of V_(p-1) = {rep.order_of_v_pm1}")
    if not rep.closed:
        return EXIT_BUDGET
    return EXIT_OK if rep.ok else EXIT_FAILED


def task_ring_validate(args, out: Output) -> int:
    _need(args, "ring")
    R = _ring(args.ring)
    rep = br.validate(R)
    out.artifact = {"ok": rep.ok, "violations": rep.violations, "skipped": len(rep.skipped)}
    out.say(rep.summary())
    for v in rep.violations:
        out.say(f"- {v}")
    return EXIT_OK if rep.ok else EXIT_FAILED


def task_ring_iso(args, out: Output) -> int:
    _need(args, "a", "b")
    A, B = _ring(args.a), _ring(args.b)
    iso = br.iso_search(A, B, timeout=args.timeout or 60.0)
    out.artifact = {"isomorphic": iso is not None,
                    "bijection": None if iso is None else {A.basis[i]: B.basis[j] for i, j in sorted(iso.items())}}
    if iso is None:
        out.say("no isomorphism")
        return EXIT_FAILED
    for i, j in sorted(iso.items()):
        out.say(f"{A.basis[i]} -> {B.basis[j]}")
    return EXIT_OK


def task_ring_characters(args, out: Output) -> int:
    _need(args, "ring")
    R = _ring(args.ring)
    chars = br.characters(R, seed=args.seed)
    rows = []
    for ch in chars:
        f = br.formal_codegree(ch)
        rows.append({"values": [[round(v.real, 9), round(v.imag, 9)] for v in ch.values],
                     "formal_codegree": [round(f.real, 9), round(f.imag, 9)]})
    out.artifact = {"ring": R.name, "characters": rows}
    out.say(f"{len(chars)} characters")
    for r in rows:
        out.say(f"- codegree {r['formal_codegree'][0]:.9f}")
    return EXIT_OK


def _qreport(rep, out: Output) -> None:
    from .qcase import theta_table

    out.artifact = {"verdict": rep.verdict, "problems": rep.problems, "ring": json.loads(rep.ring.to_json()),
                    "iso": None if rep.iso is None else {rep.ring.basis[i]: rep.target.basis[j]
                                                         for i, j in sorted(rep.iso.items())}}
    if rep.n is not None:
        out.artifact["theta"] = theta_table(rep.run.simples)
        out.say("| object | theta | reduced | nu |")
        out.say("|---|---|---|---|")
        for row in out.artifact["theta"]:
            out.say(f"| {row['object']} | {row['theta']} | {row['reduced']} | {row['nu']} |")
    out.say(f"{len(rep.run.simples)} simples up to word length {rep.level}; verdict {rep.verdict}")
    for pr in rep.problems:
        out.say(f"- {pr}")


def task_qcase_generic(args, out: Output) -> int:
    from .qcase import extract_ring

    rep = extract_ring(None, args.level or 4, timeout=args.timeout or 120.0)
    _qreport(rep, out)
    if rep.run.skipped:
        return EXIT_BUDGET
    return EXIT_OK if rep.verdict else EXIT_FAILED


def task_qcase_root(args, out: Output) -> int:
    from .qcase import extract_ring

    _need(args, "n")
    if args.n % 2 == 0 or args.n < 3:
        raise InputError("qcase-root needs odd n >= 3 (the even case is not implemented)")
    rep = extract_ring(args.n, args.level or 4, timeout=args.timeout or 120.0)
    _qreport(rep, out)
    if rep.run.skipped:
        return EXIT_BUDGET
    return EXIT_OK if rep.verdict else EXIT_FAILED


def task_char2(args, out: Output) -> int:
    from .char2 import char2_ring, parity_claims

    _need(args, "n")
    par = parity_claims(args.n)
    c = char2_ring(args.n, args.variant or "GL", args.level or 3)
    pointed = all(c.ring.invertible(i) for i in range(c.ring.rank))
    out.artifact = {"n": args.n, "digits": list(par.profile.digits), "partial_sums": list(par.profile.partial),
                    "s": par.profile.s, "claims": par.claims, "variant": c.variant, "group_rank": c.group_rank,
                    "coordinates": {k: list(v) for k, v in c.coordinates.items()}, "relation": c.relation,
                    "pointed": pointed, "ring": json.loads(c.ring.to_json())}
    out.say(f"n = {args.n}: digits {list(par.profile.digits)}, s = {par.profile.s}")
    out.say("")
    out.say("| claim | holds |")
    out.say("|---|---|")
    for k, v in par.claims.items():
        out.say(f"| {k} | {v} |")
    out.say(f"{c.variant}: group rank {c.group_rank}, relation {c.relation}")
    return EXIT_OK if par.ok and pointed else EXIT_FAILED


def task_lucas_sweep(args, out: Output) -> int:
    import math

    from .char2 import lucas_binom, parity_claims

    bound = args.max or 500
    primes = [int(x) for x in (args.primes or "2,3,5").split(",")]
    bad = []
    for p in primes:
        for a in range(bound + 1):
            for b in range(bound + 1):
                if lucas_binom(a, b, p) != math.comb(a, b) % p:
                    bad.append([a, b, p])
    parity_bad = [n for n in range(1, min(bound, 4096) + 1) if not parity_claims(n).ok]
    out.artifact = {"bound": bound, "primes": primes, "lucas_mismatches": bad[:100], "parity_failures": parity_bad}
    out.say(f"lucas: {len(bad)} mismatches; parity claims fail for {len(parity_bad)} values of n")
    return EXIT_OK if not bad and not parity_bad else EXIT_FAILED


HANDLERS = {name: globals()["task_" + name.replace("-", "_")] for name in TASKS}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Output(args)
    try:
        _merge_spec(args)
        if args.seed is None:
            args.seed = _default_seed()
        if args.jobs is not None and args.jobs < 1:
            raise InputError("--jobs must be positive")
        code = HANDLERS[args.task](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceeded, DimCapExceeded, IndecomposabilityUnresolved, IsoUndecided, SearchTimeout,
            ClusteringAmbiguous, Truncated) as exc:
        print(f"undecided: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SemisimpError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.flush(f"semisimp {args.task}")
    return code


if __name__ == "__main__":
    sys.exit(main())
