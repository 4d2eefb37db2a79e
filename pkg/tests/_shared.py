"""Cached engine runs shared by the module tests and the acceptance suite."""

from __future__ import annotations

from functools import lru_cache

from semisimp import groups, modrep
from semisimp.exact_linalg.fields import GF
from semisimp.ssimp import Budget, default_generators, semisimplify


@lru_cache(maxsize=None)
def cyclic_run(p: int, seed: int = 0):
    G, F = groups.cyclic(p), GF(p)
    return semisimplify(G, F, [modrep.jordan_module(G, F, 2)], seed=seed)


@lru_cache(maxsize=None)
def symmetric_run(n: int, p: int, seed: int = 0):
    G, F = groups.symmetric(n), GF(p)
    return semisimplify(G, F, default_generators(G, F), seed=seed)


@lru_cache(maxsize=None)
def normalizer_of_sylow(n: int, p: int):
    G = groups.symmetric(n)
    return groups.normalizer(G, groups.sylow(G, p))


@lru_cache(maxsize=None)
def normalizer_run(n: int, p: int, seed: int = 0):
    from semisimp.ssimp import restricted_generators

    N = normalizer_of_sylow(n, p)
    runG = symmetric_run(n, p, seed)
    return semisimplify(N.group, GF(p), restricted_generators(runG, N), seed=seed)


@lru_cache(maxsize=None)
def klein_run(seed: int = 0):
    G, F = groups.klein_four(), GF(2)
    gen = modrep.heller_module(G, F, 1)
    return semisimplify(G, F, [gen], budget=Budget(max_word_length=4), seed=seed, raise_on_budget=False)


@lru_cache(maxsize=None)
def dihedral_run(seed: int = 0):
    G, F = groups.dihedral(5), GF(5)
    X = modrep.perm_quotient(G, F)
    X.name = "X"
    return semisimplify(G, F, [X], seed=seed)


@lru_cache(maxsize=None)
def qcase_report(n):
    from semisimp.qcase import extract_ring

    return extract_ring(n, level=4)


# -- negligibility: trace criterion vs componentwise criterion


@lru_cache(maxsize=None)
def indecomposable_pool(p: int):
    """Pairwise non-isomorphic indecomposables used to build random direct sums."""
    if p == 2:
        G, F = groups.klein_four(), GF(2)
        return [modrep.trivial_module(G, F), modrep.heller_module(G, F, 1), modrep.heller_module(G, F, -1),
                modrep.heller_module(G, F, 2), modrep.regular_module(G, F)]
    G, F = groups.cyclic(p), GF(p)
    return [modrep.jordan_module(G, F, k) for k in range(1, p + 1)]


def random_morphism(p: int, rng):
    """Random f: X -> Y between direct sums of pool modules, returned with the
    block data needed by the componentwise test."""
    import numpy as np

    from semisimp.decomp import _scalar_part
    from semisimp.exact_linalg.linalg import rank

    pool = indecomposable_pool(p)
    F = pool[0].field
    xs = [int(i) for i in rng.integers(0, len(pool), int(rng.integers(1, 4)))]
    ys = [int(i) for i in rng.integers(0, len(pool), int(rng.integers(1, 4)))]
    if rng.random() < 0.5:
        # shared summands make isomorphic components likely
        ys = [int(i) for i in rng.permutation(xs)]
    X = modrep.direct_sum(*[pool[i] for i in xs])
    Y = modrep.direct_sum(*[pool[j] for j in ys])
    M = F.zeros((Y.dim, X.dim))
    blocks = {}
    r0 = 0
    for b, j in enumerate(ys):
        c0 = 0
        for a, i in enumerate(xs):
            Xi, Yj = pool[i], pool[j]
            fij = F.zeros((Yj.dim, Xi.dim))
            basis = [h.matrix for h in modrep.hom_space(Xi, Yj)]
            if basis and rng.random() > 0.25:
                for h in basis:
                    fij = F.add(fij, F.mul(h, F.asarray(np.full(h.shape, int(rng.integers(0, F.q))))))
                if i == j and rng.random() < 0.3:
                    lam = _scalar_part(F, fij)
                    fij = F.sub(fij, F.mul(F.eye(Xi.dim), F.asarray(np.full(fij.shape, lam))))
            M[r0:r0 + Yj.dim, c0:c0 + Xi.dim] = fij
            iso = i == j and rank(F, fij) == Xi.dim
            blocks[(a, b)] = (iso, Yj.dim % p)
            c0 += Xi.dim
        r0 += pool[j].dim
    return modrep.ModMorphism(X, Y, M), blocks


def componentwise_negligible(blocks) -> bool:
    return all(not iso or dim_mod_p == 0 for iso, dim_mod_p in blocks.values())


def lemma_agreement(p: int, count: int = 100, seed: int = 0):
    """Returns (agreements, negligible count, total)."""
    import numpy as np

    rng = np.random.default_rng(seed)
    agree = negl = 0
    for _ in range(count):
        f, blocks = random_morphism(p, rng)
        assert f.check()
        a = modrep.negligible_morphism(f)
        b = componentwise_negligible(blocks)
        agree += a == b
        negl += a
    return agree, negl, count


# -- characters of K_l from the closed form


def kl_expected(l: int):
    """(u, values, codegree) for u = q^2 with u^{l+1} = +-1, u != 1, one per pair
    {u, 1/u}: u = exp(2 pi i k / (2(l+1))), k = 1..l+1."""
    import cmath

    out = []
    for k in range(1, l + 2):
        u = cmath.exp(2j * cmath.pi * k / (2 * (l + 1)))
        vals = [sum(u**j for j in range(-i, i + 1)) for i in range(l + 1)]
        code = l + 1 if k == l + 1 else -2 * (l + 1) / (u - 2 + 1 / u)
        out.append((u, vals, code))
    return out


def match_kl_characters(chars, l: int, tol: float = 1e-9):
    """Bijection character -> expected entry, or None."""
    import numpy as np

    exp = kl_expected(l)
    used = set()
    pairs = []
    for ch in chars:
        hit = [t for t, (_, vals, _) in enumerate(exp) if np.max(np.abs(ch.values - np.array(vals))) < tol]
        if len(hit) != 1 or hit[0] in used:
            return None
        used.add(hit[0])
        pairs.append((ch, exp[hit[0]]))
    return pairs if len(used) == len(exp) else None
