"""Krull-Schmidt decomposition of modules given by operator matrices.

Works for any object exposing ``field``, ``dim``, ``ops`` (matrices that
generate the acting algebra) and ``with_action``: group modules as well as
the two-operator modules of the quantum Borel case.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .errors import DimCapExceeded, IndecomposabilityUnresolved, IsoUndecided
from .exact_linalg.fields import ExactField, FiniteField, GF
from .exact_linalg.linalg import _nonzero, inverse, kernel, rank, row_basis, solve
from .exact_linalg.poly import UniPoly, factor
from .modrep import GModule, _field_label, _is_p_group, _readonly, field_embedding, intertwiners

DIM_CAP = 256
MAX_EXT_DEGREE = 8
RANDOM_CANDIDATES = 64
FREE_SPLIT_ORDER = 1024


class OpModule:
    """A module over the algebra generated by a list of square matrices."""

    def __init__(self, field: ExactField, ops: Sequence[np.ndarray], name: str | None = None,
                 prefix: str = "Alg", meta=None):
        self.field = field
        self.ops = tuple(_readonly(field.asarray(a)) for a in ops)
        self.dim = self.ops[0].shape[0] if self.ops else 0
        self.name = name
        self.prefix = prefix
        self.meta = meta

    @property
    def label_prefix(self):
        return f"{self.prefix}@{_field_label(self.field)}"

    @property
    def dim_mod_p(self):
        return self.dim % self.field.p if isinstance(self.field, FiniteField) else self.dim

    def with_action(self, ops, name=None):
        return OpModule(self.field, ops, name=name, prefix=self.prefix, meta=self.meta)

    def extend_field(self, F: FiniteField):
        if F == self.field:
            return self
        emb = field_embedding(self.field, F)
        return OpModule(F, [emb[a] for a in self.ops], name=self.name, prefix=self.prefix, meta=self.meta)

    def __repr__(self):
        return f"OpModule({self.field}, dim={self.dim})"


@dataclass
class Summand:
    module: object
    incl: np.ndarray  # parent_dim x dim
    proj: np.ndarray  # dim x parent_dim
    label: str | None = None


@dataclass
class Decomposition:
    input: object
    parts: list = dc_field(default_factory=list)
    field: ExactField | None = None  # field over which the split was found

    def summand_modules(self):
        return [s.module for s in self.parts]

    def dims(self):
        return sorted(s.module.dim for s in self.parts)

    def labels(self):
        """Multiset of labels as sorted (label, multiplicity) pairs."""
        out: dict[str, int] = {}
        for s in self.parts:
            out[s.label] = out.get(s.label, 0) + 1
        return sorted(out.items())

    def projections(self):
        F = self.field
        return [F.matmul(s.incl, s.proj) for s in self.parts]


# -- helpers ------------------------------------------------------------------


def _span_basis(F, mats: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Independent subset spanning the same space (as RREF combinations)."""
    if not mats:
        return []
    shape = mats[0].shape
    flat = np.stack([np.asarray(m).ravel() for m in mats], axis=0)
    basis, piv = row_basis(F, flat)
    return [basis[i].reshape(shape) for i in range(len(piv))]


def _charpoly_poly(F: FiniteField, M: np.ndarray) -> UniPoly:
    from .exact_linalg.linalg import charpoly

    return UniPoly(F, charpoly(F, M))


def _is_nilpotent(F, M: np.ndarray) -> bool:
    n = M.shape[0]
    P = M
    k = 1
    while k < n:
        P = F.matmul(P, P)
        k *= 2
        if not _nonzero(F, P).any():
            return True
    return not _nonzero(F, P).any()


def _scalar_part(F: FiniteField, M: np.ndarray):
    """lambda with M - lambda*I nilpotent, or None."""
    cp = _charpoly_poly(F, M)
    fs = factor(cp)
    if len(fs) == 1 and fs[0][0].degree == 1:
        return int(F.neg(fs[0][0].coeffs[0]))
    return None


class _NeedExtension(Exception):
    def __init__(self, degree):
        self.degree = degree


def _try_split(F, dim, phi, seed):
    """Fitting decomposition of F^dim by phi; returns list of kernel bases or None.

    Raises _NeedExtension when phi has a single nonlinear irreducible factor.
    """
    cp = _charpoly_poly(F, phi)
    fs = factor(cp, seed=seed)
    if len(fs) < 2:
        if fs and fs[0][0].degree > 1:
            raise _NeedExtension(fs[0][0].degree)
        return None
    pieces = []
    for f, e in fs:
        g = UniPoly.const(F, 1)
        for _ in range(e):
            g = g * f
        K = kernel(F, g.compose_matrix(phi))
        pieces.append(K)
    return pieces


def _local_certificate(F, endbasis, dim) -> bool:
    """End is k*1 + N with N a nilpotent ideal (so End is local)."""
    nils = []
    for phi in endbasis:
        lam = _scalar_part(F, phi)
        if lam is None:
            return False
        N = F.sub(phi, F.mul(F.eye(dim), lam))
        nils.append(N)
    N = _span_basis(F, [n for n in nils if _nonzero(F, n).any()])
    if len(N) != len(endbasis) - 1:
        return False
    if not N:
        return True
    flatN, pivN = row_basis(F, np.stack([n.ravel() for n in N]))
    # closed under multiplication, and powers of the ideal reach zero
    power = N
    for _ in range(len(N) + 1):
        prods = [F.matmul(a, b) for a in power for b in N]
        prods = [x for x in prods if _nonzero(F, x).any()]
        if not prods:
            return True
        flat = np.stack([x.ravel() for x in prods])
        # membership in span(N)
        red = F.sub(flat, F.matmul(flat[:, pivN], flatN))
        if _nonzero(F, red).any():
            return False
        newp = _span_basis(F, prods)
        if len(newp) >= len(power):
            return False
        power = newp
    return False


def _transport(F, T, Ti, endbasis, sl):
    """End basis of the block ``sl`` after the change of basis T."""
    blocks = [F.matmul(Ti, F.matmul(phi, T))[sl, sl] for phi in endbasis]
    return _span_basis(F, blocks)


def _random_comb(F, basis, rng):
    coef = F.random(rng, len(basis))
    acc = F.zeros(basis[0].shape)
    for c, b in zip(coef, basis):
        if c:
            acc = F.add(acc, F.mul(int(c), b))
    return acc


def _split_rec(F, module, endbasis, rng, seed, out, incl):
    dim = module.dim
    if len(endbasis) <= 1:
        out.append((module, incl))
        return
    cands = list(endbasis)
    pieces = None
    ext_needed = None
    tried = 0

    def candidates():
        for phi in endbasis:
            yield phi
        for _ in range(RANDOM_CANDIDATES):
            yield _random_comb(F, endbasis, rng)
        for a, b in itertools.product(endbasis, repeat=2):
            yield F.matmul(a, b)

    for phi in candidates():
        tried += 1
        try:
            pieces = _try_split(F, dim, phi, seed)
        except _NeedExtension as exc:
            ext_needed = exc.degree if ext_needed is None else ext_needed
            pieces = None
        if pieces:
            break
        # after the basis pass, test locality before spending random candidates
        if tried == len(endbasis):
            if ext_needed is None and _local_certificate(F, endbasis, dim):
                out.append((module, incl))
                return
    if not pieces:
        if ext_needed is not None:
            raise _NeedExtension(ext_needed)
        if _local_certificate(F, endbasis, dim):
            out.append((module, incl))
            return
        raise IndecomposabilityUnresolved(
            f"no splitting endomorphism found for a dim-{dim} module and End is not certified local"
        )
    T = np.concatenate(pieces, axis=1)
    Ti = inverse(F, T)
    start = 0
    for K in pieces:
        k = K.shape[1]
        sl = slice(start, start + k)
        acts = [F.matmul(Ti, F.matmul(A, T))[sl, sl] for A in module.ops]
        sub = module.with_action(acts)
        sub_end = _transport(F, T, Ti, endbasis, sl)
        _split_rec(F, sub, sub_end, rng, seed, out, F.matmul(incl, T[:, sl]))
        start += k


def _extend(module, F):
    if isinstance(module, GModule):
        return module.extend_field(F)
    return module.extend_field(F)


def _embed(M, small, big):
    if small == big:
        return M
    return field_embedding(small, big)[M]


def _split_free(F, module: GModule):
    """Split off free summands of a module over a p-group.

    The number of free summands is the rank of the norm map sum_g g. For v_j with
    independent norms, kG v_j is free; functionals dual to the basis {g v_j}
    give a module map onto (kG)^k whose kernel is a complement.
    Returns (free parts as (module, incl), complement module, complement incl).
    """
    G = module.group
    d = module.dim
    mats = [module.element_matrix(e) for e in range(G.order)]
    if isinstance(F, FiniteField) and F.r == 1:
        Nm = np.sum(np.stack(mats), axis=0) % F.p
    else:
        Nm = F.zeros((d, d))
        for A in mats:
            Nm = F.add(Nm, A)
    _, piv = row_basis(F, Nm)
    k = len(piv)
    if k == 0:
        return [], module, None
    seeds = [F.eye(d)[:, c : c + 1] for c in piv]
    blocks = [np.concatenate([F.matmul(A, v) for A in mats], axis=1) for v in seeds]
    W = np.concatenate(blocks, axis=1)  # d x (|G| k), column (j, g) = g v_j
    n = G.order
    E = F.zeros((n * k, k))
    for j in range(k):
        E[j * n, j] = F.one_code  # element 0 is the identity
    Lam = solve(F, W.T.copy(), E).T  # k x d, Lam W = E^T
    inv = G.inverses
    Phi = np.concatenate([F.matmul(Lam, mats[inv[g]]) for g in range(n)], axis=0)
    K = kernel(F, Phi)
    free = []
    for B in blocks:
        acts = [solve(F, B, F.matmul(A, B)) for A in module.action]
        free.append((GModule(G, F, acts, check=False), B))
    if K.shape[1] == 0:
        return free, module.with_action([F.zeros((0, 0)) for _ in module.action]), K
    acts = [solve(F, K, F.matmul(A, K)) for A in module.action]
    return free, GModule(G, F, acts, check=False), K


def decompose(module, seed: int = 0, registry: "Registry | None" = None) -> Decomposition:
    """Split a module into indecomposables by Fitting's lemma on End candidates.

    Nonlinear irreducible characteristic-polynomial factors trigger a base
    field extension (total degree at most 8).
    """
    if module.dim > DIM_CAP:
        raise DimCapExceeded(f"dimension {module.dim} exceeds {DIM_CAP}")
    F = module.field
    free: list = []
    core, core_incl = module, None
    if isinstance(module, GModule) and module.dim and module.group.order <= FREE_SPLIT_ORDER \
            and _is_p_group(module.group, F.p):
        free, core, core_incl = _split_free(F, module)
    cur = core
    while True:
        rng = np.random.default_rng(seed)
        endbasis = intertwiners(F, cur.ops, cur.ops) if cur.dim else []
        out: list = []
        try:
            if cur.dim:
                incl = F.eye(cur.dim) if core_incl is None else _embed(core_incl, module.field, F)
                _split_rec(F, cur, endbasis, rng, seed, out, incl)
            break
        except _NeedExtension as exc:
            newdeg = F.r * exc.degree
            if newdeg > MAX_EXT_DEGREE:
                raise IndecomposabilityUnresolved(
                    f"field extension to degree {newdeg} exceeds cap {MAX_EXT_DEGREE}"
                ) from None
            F = GF(F.p, newdeg)
            cur = _extend(core, F)
    out = [(_extend(m, F), _embed(inc, module.field, F)) for m, inc in free] + out
    # projections from the inverse of the assembled inclusion matrix
    if out:
        T = np.concatenate([inc for _, inc in out], axis=1)
        Ti = inverse(F, T)
    parts = []
    start = 0
    for mod, inc in out:
        k = mod.dim
        parts.append(Summand(mod, inc, Ti[start : start + k]))
        start += k
    # deterministic order: by dimension then by registry label
    dec = Decomposition(module, parts, F)
    if registry is not None:
        for s in dec.parts:
            s.label = registry.insert(s.module, seed=seed)
        dec.parts.sort(key=lambda s: (s.module.dim, registry.index_of(s.label)))
    else:
        dec.parts.sort(key=lambda s: s.module.dim)
    return dec


def is_indecomposable(module, seed: int = 0) -> bool:
    return len(decompose(module, seed=seed).parts) == 1


# -- isomorphism ---------------------------------------------------------------


def _common_field(a, b):
    Fa, Fb = a.field, b.field
    if Fa == Fb:
        return a, b
    import math

    r = Fa.r * Fb.r // math.gcd(Fa.r, Fb.r)
    F = GF(Fa.p, r)
    return _extend(a, F), _extend(b, F)


def pairing_isomorphic(a, b):
    """For indecomposable a, b: an isomorphism exists iff some g o f is not nilpotent
    (End(a) is local). Returns a witness f or None."""
    a, b = _common_field(a, b)
    if a.dim != b.dim:
        return None
    F = a.field
    fs = intertwiners(F, a.ops, b.ops)
    if not fs:
        return None
    gs = intertwiners(F, b.ops, a.ops)
    for f in fs:
        for g in gs:
            if not _is_nilpotent(F, F.matmul(g, f)):
                return f
    return None


def is_isomorphic(a, b, seed: int = 0, tries: int = 200, witness: bool = False):
    """Decide a ≅ b; returns a bool (or ``(bool, matrix)`` with ``witness=True``)."""
    a, b = _common_field(a, b)

    def ret(ok, w=None):
        return (ok, w) if witness else ok

    if a.dim != b.dim:
        return ret(False)
    if a.dim == 0:
        return ret(True, a.field.zeros((0, 0)))
    F = a.field
    H = intertwiners(F, a.ops, b.ops)
    if not H:
        return ret(False)
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        f = _random_comb(F, H, rng)
        if rank(F, f) == a.dim:
            return ret(True, f)
    if isinstance(F, FiniteField) and F.q < 16 and len(H) <= 4:
        for coefs in itertools.product(range(F.q), repeat=len(H)):
            acc = F.zeros(H[0].shape)
            for c, h in zip(coefs, H):
                acc = F.add(acc, F.mul(c, h))
            if rank(F, acc) == a.dim:
                return ret(True, acc)
        return ret(False)
    # Krull-Schmidt comparison of decompositions, summands matched by the pairing test
    try:
        da, db = decompose(a, seed=seed), decompose(b, seed=seed)
    except IndecomposabilityUnresolved as exc:
        raise IsoUndecided(str(exc)) from exc
    if da.dims() != db.dims():
        return ret(False)
    left = list(db.parts)
    pairs = []
    for sa in da.parts:
        hit = None
        for j, sb in enumerate(left):
            if sb.module.dim == sa.module.dim:
                w = pairing_isomorphic(sa.module, sb.module)
                if w is not None:
                    hit = (j, w)
                    break
        if hit is None:
            return ret(False)
        pairs.append((sa, left[hit[0]], hit[1]))
        left.pop(hit[0])
    if not witness:
        return True
    Fd = da.field
    W = Fd.zeros((a.dim, a.dim))
    for sa, sb, w in pairs:
        W = Fd.add(W, Fd.matmul(sb.incl, Fd.matmul(w, sa.proj)))
    return True, W


# -- registry ------------------------------------------------------------------


def _invariants(module):
    F = module.field
    I = F.eye(module.dim)
    inv = [module.dim]
    for A in module.ops:
        N = F.sub(A, I)
        inv.append(rank(F, N))
        inv.append(rank(F, F.matmul(N, N)))
    return tuple(inv)


@dataclass
class IndecRecord:
    label: str
    module: object
    dim: int
    dim_mod_p: int
    invariants: tuple
    self_dual: bool | None = None
    alias: str | None = None


class Registry:
    """Canonical isomorphism classes of indecomposables, labelled in insertion order."""

    def __init__(self):
        self.records: list[IndecRecord] = []
        self._by_label: dict[str, int] = {}

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def index_of(self, label: str) -> int:
        return self._by_label[label]

    def record(self, label: str) -> IndecRecord:
        return self.records[self._by_label[label]]

    def find(self, module, seed: int = 0) -> str | None:
        inv = _invariants(module)
        for rec in self.records:
            if rec.invariants != inv:
                continue
            if pairing_isomorphic(rec.module, module) is not None:
                return rec.label
        return None

    def insert(self, module, seed: int = 0, alias: str | None = None) -> str:
        hit = self.find(module, seed)
        if hit is not None:
            return hit
        label = f"{module.label_prefix}/I{len(self.records)}"
        p = module.field.p if isinstance(module.field, FiniteField) else 0
        rec = IndecRecord(label, module, module.dim, module.dim % p if p else module.dim,
                          _invariants(module), alias=alias)
        self._by_label[label] = len(self.records)
        self.records.append(rec)
        return label

    def to_json(self) -> str:
        from .modrep import module_to_json

        out = []
        for r in self.records:
            entry = {"label": r.label, "dim": r.dim, "dim_mod_p": r.dim_mod_p, "alias": r.alias}
            if isinstance(r.module, GModule):
                entry["module"] = module_to_json(r.module)
            out.append(entry)
        return json.dumps({"records": out}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, group=None) -> "Registry":
        from .modrep import module_from_json

        obj = json.loads(text)
        reg = cls()
        for e in obj["records"]:
            m = module_from_json(e["module"], group=group)
            rec = IndecRecord(e["label"], m, e["dim"], e["dim_mod_p"], _invariants(m), alias=e.get("alias"))
            reg._by_label[rec.label] = len(reg.records)
            reg.records.append(rec)
        return reg
