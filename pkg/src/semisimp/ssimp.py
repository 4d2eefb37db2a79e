"""Semisimplification of Rep_k(G): fusion rings generated by given modules,
restriction descent, Green correspondents, equivalence checks and vertices.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import basedring as br
from .decomp import Registry, _scalar_part, decompose
from .errors import BudgetExceeded, NegligibleInput, NotUnique
from .exact_linalg.fields import FiniteField
from .groups import PermGroup, Subgroup, group_to_literal, normalizer, p_subgroups_up_to_conjugacy, sylow
from .modrep import (
    GModule,
    dual,
    higman_projective,
    intertwiners,
    negligible_morphism,
    ModMorphism,
    perm_heart,
    perm_quotient,
    restrict,
    sign_module,
    tensor,
    trivial_module,
    young_induced,
)


@dataclass
class Budget:
    max_simples: int = 64
    max_tensor_dim: int = 144
    max_word_length: int = 6


@dataclass
class FusionRun:
    group: PermGroup
    field: FiniteField
    generators: list
    budget: Budget
    seed: int
    registry: Registry
    negligibles: Registry
    products: dict = dc_field(default_factory=dict)  # (i, j) -> {k: mult}
    negligible_part: dict = dc_field(default_factory=dict)  # (i, j) -> total dim of negligible summands
    word_length: list = dc_field(default_factory=list)
    duals: list = dc_field(default_factory=list)
    generator_indices: list = dc_field(default_factory=list)
    closed: bool = False
    skipped_pairs: list = dc_field(default_factory=list)
    elapsed: float = 0.0

    @property
    def simples(self):
        return [r.module for r in self.registry.records]

    @property
    def labels(self):
        return [r.alias or r.label for r in self.registry.records]

    @property
    def rank(self) -> int:
        return len(self.registry)

    def dims(self):
        return [r.dim for r in self.registry.records]

    def ring(self) -> br.BasedRing:
        r = self.rank
        N = np.zeros((r, r, r), dtype=np.int64)
        C = np.zeros((r, r), dtype=bool)
        for (i, j), row in self.products.items():
            for k, v in row.items():
                N[i, j, k] = v
                N[j, i, k] = v
            C[i, j] = C[j, i] = True
        return br.BasedRing(self.labels, N, self.duals, 0, C, not self.closed,
                            self.budget.max_word_length if not self.closed else None,
                            name=f"ssimp({self.group.name},{self.field})")

    def provenance(self) -> dict:
        return {
            "group": group_to_literal(self.group),
            "prime": self.field.p,
            "field_degree": self.field.r,
            "generators": [g.name or f"module{k}" for k, g in enumerate(self.generators)],
            "budget": vars(self.budget),
            "seed": self.seed,
            "closed": self.closed,
        }

    def to_json(self) -> str:
        ring = json.loads(self.ring().to_json())
        ring["provenance"] = self.provenance()
        return json.dumps(ring, sort_keys=True)

    def dim_homomorphism_ok(self) -> bool:
        p = self.field.p
        dims = [d % p for d in self.dims()]
        for (i, j), row in self.products.items():
            if (dims[i] * dims[j] - sum(v * dims[k] for k, v in row.items())) % p:
                return False
        return True


def default_generators(G: PermGroup, F: FiniteField) -> list[GModule]:
    """For S_{p+n}: V_{p+n-1} (permutation module mod constants), V_{p+n-2}
    (sum-zero mod constants) and, when n > 0, the sign module and V_{p-1} of S_p
    induced from S_p x S_n."""
    a = perm_quotient(G, F)
    b = perm_heart(G, F)
    gens = [a, b] if b.dim else [a]
    if G.degree > F.p:
        gens += [sign_module(G, F), young_induced(G, F, F.p)]
    return gens


def semisimplify(G: PermGroup, F: FiniteField, generators: Sequence[GModule], budget: Budget | None = None,
                 seed: int = 0, raise_on_budget: bool = True, verbose: bool = False) -> FusionRun:
    """BFS over tensor products of registered simples, discarding summands of
    dimension divisible by p."""
    budget = budget or Budget()
    t0 = time.monotonic()
    run = FusionRun(G, F, list(generators), budget, seed, Registry(), Registry())
    reg = run.registry
    p = F.p

    def register(mod, length, alias=None):
        lab = reg.insert(mod, seed=seed, alias=alias)
        idx = reg.index_of(lab)
        if idx == len(run.word_length):
            run.word_length.append(length)
        else:
            run.word_length[idx] = min(run.word_length[idx], length)
        if len(reg) > budget.max_simples:
            raise BudgetExceeded(f"more than {budget.max_simples} simples", partial=run)
        return idx

    register(trivial_module(G, F), 0, alias="1")
    # seed with non-negligible summands of generators and their duals
    for gen in generators:
        for mod in (gen, dual(gen)):
            dec = decompose(mod, seed=seed)
            for s in dec.parts:
                if s.module.dim % p:
                    idx = register(s.module, 1)
                    if idx not in run.generator_indices:
                        run.generator_indices.append(idx)
                else:
                    run.negligibles.insert(s.module, seed=seed)
        if gen.name and gen.dim % p:
            lab = reg.find(gen)
            if lab is not None:
                rec = reg.record(lab)
                rec.alias = rec.alias or gen.name
    incomplete = False
    try:
        m = 0
        while m < len(reg):
            for i in range(m + 1):
                if (i, m) in run.products:
                    continue
                if i == 0:
                    run.products[(0, m)] = {m: 1}
                    continue
                Xi, Xm = reg.records[i].module, reg.records[m].module
                if Xi.dim * Xm.dim > budget.max_tensor_dim:
                    run.skipped_pairs.append((i, m))
                    incomplete = True
                    continue
                length = run.word_length[i] + run.word_length[m]
                dec = decompose(tensor(Xi, Xm), seed=seed)
                row: dict[int, int] = {}
                negl = 0
                cut = False
                for s in dec.parts:
                    if s.module.dim % p:
                        if length > budget.max_word_length and reg.find(s.module) is None:
                            # a new simple beyond the word-length budget: leave it out
                            cut = True
                            continue
                        k = register(s.module, length)
                        row[k] = row.get(k, 0) + 1
                    else:
                        negl += s.module.dim
                        run.negligibles.insert(s.module, seed=seed)
                if cut:
                    run.skipped_pairs.append((i, m))
                    incomplete = True
                    continue
                run.products[(i, m)] = row
                run.negligible_part[(i, m)] = negl
                if verbose:
                    print(f"  {reg.records[i].label} x {reg.records[m].label}: {row} (+{negl} negligible)")
            m += 1
    except BudgetExceeded:
        run.closed = False
        _finish_duals(run)
        run.elapsed = time.monotonic() - t0
        if raise_on_budget:
            raise
        return run
    run.closed = not incomplete
    _finish_duals(run)
    run.elapsed = time.monotonic() - t0
    return run


def _finish_duals(run: FusionRun) -> None:
    reg = run.registry
    duals = []
    for rec in reg.records:
        lab = reg.find(dual(rec.module))
        duals.append(reg.index_of(lab) if lab is not None else -1)
    for i, d in enumerate(duals):
        rec = reg.records[i]
        rec.self_dual = d == i
    run.duals = duals


# -- Green correspondence and equivalence -------------------------------------------


def green_correspondent(x: GModule, n: Subgroup, registry: Registry | None = None, seed: int = 0):
    """Unique summand of nonzero dimension in the restriction to n; returns
    ``(module, label)`` (label None without a registry)."""
    p = x.field.p
    if x.dim % p == 0:
        raise NegligibleInput("input has dimension divisible by p")
    if n.order == x.group.order:
        mod = x
        parts = [x]
    else:
        dec = decompose(restrict(x, n), seed=seed)
        parts = [s.module for s in dec.parts if s.module.dim % p]
    if len(parts) != 1:
        raise NotUnique(f"restriction has {len(parts)} summands of nonzero dimension")
    mod = parts[0]
    label = registry.find(mod) if registry is not None else None
    return mod, label


def restricted_generators(run: FusionRun, n: Subgroup) -> list[GModule]:
    return [green_correspondent(run.registry.records[i].module, n, seed=run.seed)[0]
            for i in run.generator_indices]


@dataclass
class EquivalenceReport:
    verdict: bool
    bijection: dict
    problems: list
    rank_G: int
    rank_N: int


def verify_equivalence(runG: FusionRun, runN: FusionRun, n: Subgroup) -> EquivalenceReport:
    problems = []
    sigma: dict[int, int] = {}
    for i, rec in enumerate(runG.registry.records):
        try:
            if i == 0:
                sigma[0] = 0
                continue
            _, lab = green_correspondent(rec.module, n, runN.registry, seed=runG.seed)
        except NotUnique as exc:
            problems.append(f"{rec.label}: {exc}")
            continue
        if lab is None:
            problems.append(f"{rec.label}: correspondent not among the N-simples")
            continue
        sigma[i] = runN.registry.index_of(lab)
    if len(set(sigma.values())) != len(sigma):
        problems.append("correspondence is not injective")
    if len(sigma) != runN.rank or runG.rank != runN.rank:
        problems.append(f"rank mismatch: {runG.rank} G-simples vs {runN.rank} N-simples")
    if not runG.closed or not runN.closed:
        problems.append("a run is not closed; comparison restricted to computed products")
    for (i, j), row in runG.products.items():
        if i not in sigma or j not in sigma:
            continue
        a, b = sorted((sigma[i], sigma[j]))
        other = runN.products.get((a, b))
        if other is None:
            problems.append(f"product {i}x{j} missing on the N side")
            continue
        mapped = {sigma.get(k, -1): v for k, v in row.items()}
        if mapped != other:
            problems.append(f"structure constants differ for {i}x{j}: {mapped} vs {other}")
    for i, d in enumerate(runG.duals):
        if i in sigma and d in sigma and runN.duals[sigma[i]] != sigma[d]:
            problems.append(f"duality not transported at {i}")
    return EquivalenceReport(not problems, sigma, problems, runG.rank, runN.rank)


# -- descent --------------------------------------------------------------------------


@dataclass
class DescentReport:
    violations: list
    checked_objects: int
    checked_morphisms: int
    index_coprime: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_restriction_descent(run: FusionRun, h: Subgroup, max_morphisms: int = 4) -> DescentReport:
    """Negligible objects and morphisms of the run stay negligible after restriction."""
    p = run.field.p
    index = run.group.order // h.order
    viol = []
    nobj = nmor = 0
    for rec in run.negligibles.records:
        nobj += 1
        dec = decompose(restrict(rec.module, h), seed=run.seed)
        bad = [s.module.dim for s in dec.parts if s.module.dim % p]
        if bad:
            viol.append(f"{rec.label}: restriction has summands of dimension {bad}")
    F = run.field
    for rec in run.registry.records:
        X = rec.module
        ends = intertwiners(F, X.ops, X.ops)
        XH = restrict(X, h)
        back = intertwiners(F, XH.ops, XH.ops)
        count = 0
        for phi in ends:
            # the non-scalar part of an endomorphism of a simple is nilpotent, hence negligible
            lam = _scalar_part(F, phi)
            if lam is None:
                continue
            N = F.sub(phi, F.mul(F.eye(X.dim), F.asarray(np.full((X.dim, X.dim), lam))))
            if not np.any(N):
                continue
            nmor += 1
            count += 1
            f = ModMorphism(XH, XH, N)
            if not negligible_morphism(f, back=back):
                viol.append(f"{rec.label}: a negligible endomorphism restricts to a non-negligible one")
            if count >= max_morphisms:
                break
    return DescentReport(viol, nobj, nmor, index % p != 0)


# -- vertices ----------------------------------------------------------------------------


def vertex(x: GModule, candidates: Sequence[Subgroup] | None = None) -> Subgroup:
    """Smallest candidate p-subgroup relative to which x is projective."""
    if candidates is None:
        candidates = p_subgroups_up_to_conjugacy(x.group, x.field.p)
    for h in sorted(candidates, key=lambda s: s.order):
        if higman_projective(x, h):
            return h
    raise AssertionError("no candidate subgroup passed Higman's criterion")


# -- symmetric group image check ------------------------------------------------------------


@dataclass
class SpReport:
    p: int
    rank: int
    expected_rank: int
    closed: bool
    iso: dict | None
    generator_pin: str | None
    order_of_v_pm1: int | None
    run: FusionRun | None = None

    @property
    def ok(self) -> bool:
        return self.closed and self.iso is not None and self.rank == self.expected_rank


def sp_image_check(p: int, seed: int = 0, budget: Budget | None = None, run: FusionRun | None = None) -> SpReport:
    from .exact_linalg.fields import GF
    from .groups import symmetric

    if run is None:
        G = symmetric(p)
        F = GF(p)
        run = semisimplify(G, F, default_generators(G, F), budget=budget, seed=seed)
    ring = run.ring()
    reg = run.registry
    i_pm1 = reg.index_of(reg.find(perm_quotient(run.group, run.field)))
    i_pm2 = reg.index_of(reg.find(perm_heart(run.group, run.field)))
    target = br.product(br.ver_p_plus(p), br.group_ring([2 * (p - 1)]))
    n = 2 * (p - 1)
    iso = None
    pin_label = None
    import math

    for k in range(1, n):
        if math.gcd(k, n) != 1:
            continue
        chi = target.index(f"L1*g({k})")
        pm2 = target.index(f"L{p - 2}*g({(k * (p - 1)) % n})")
        pins = {i_pm1: chi, i_pm2: pm2}
        if i_pm1 == i_pm2:
            continue
        iso = br.iso_search(ring, target, pins=pins) if run.closed else None
        if iso is not None:
            pin_label = target.basis[chi]
            break
    return SpReport(p, run.rank, (p - 1) ** 2, run.closed, iso, pin_label, ring.element_order(i_pm1), run)
