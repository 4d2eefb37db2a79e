"""Modules over group algebras kG given by generator matrices.

Monoidal operations, restriction/induction, intertwiner spaces, trace
pairings and negligibility, Heller shifts for p-groups and Higman's
relative-projectivity criterion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidModule, ModuleMismatch, NoSolution, NotAPGroup, NotASubgroup
from .exact_linalg.fields import ExactField, FiniteField, GF
from .exact_linalg.linalg import _nonzero, inverse, kernel, rank, row_basis, solve
from .groups import PermGroup, Subgroup, group_from_literal, group_to_literal

__all__ = [
    "GModule",
    "ModMorphism",
    "intertwiners",
    "spin_basis",
    "hom_space",
    "tensor",
    "dual",
    "direct_sum",
    "restrict",
    "induce",
    "submodule",
    "quotient",
    "negligible_morphism",
    "negligible_object",
    "heller_shift",
    "inverse_heller_shift",
    "higman_projective",
    "trivial_module",
    "sign_module",
    "perm_module",
    "perm_quotient",
    "perm_heart",
    "regular_module",
    "jordan_module",
    "heller_module",
    "module_from_spec",
    "module_to_json",
    "module_from_json",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def _field_label(F: ExactField) -> str:
    if isinstance(F, FiniteField):
        return f"F{F.q}"
    return repr(F)


class GModule:
    """A kG-module: one matrix per generator of ``group``, acting on column vectors."""

    def __init__(self, group: PermGroup, field: FiniteField, action: Sequence[np.ndarray], *,
                 check: bool = True, name: str | None = None, seed: int = 0):
        if len(action) != len(group.generators):
            raise InvalidModule(f"expected {len(group.generators)} generator matrices, got {len(action)}")
        mats = [field.asarray(a) for a in action]
        dim = mats[0].shape[0] if mats else 0
        for a in mats:
            if a.shape != (dim, dim):
                raise InvalidModule(f"generator matrix shape {a.shape} != ({dim}, {dim})")
        self.group = group
        self.field = field
        self.dim = dim
        self.action = tuple(_readonly(a) for a in mats)
        self.name = name
        self._elem: dict[int, np.ndarray] = {0: _readonly(field.eye(dim))}
        if check:
            self.validate(seed=seed)

    # generic protocol shared with decomp's operator modules
    @property
    def ops(self):
        return self.action

    @property
    def dim_mod_p(self) -> int:
        return self.dim % self.field.p

    @property
    def label_prefix(self) -> str:
        return f"{self.group.name}@{_field_label(self.field)}"

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"GModule({self.group.name}, {self.field}, dim={self.dim}{nm})"

    def element_matrix(self, i: int) -> np.ndarray:
        """rho(e_i), built along the enumeration tree and cached."""
        path = []
        j = i
        while j not in self._elem:
            path.append(j)
            j = self.group.word_of[j][1]
        for j in reversed(path):
            k, par = self.group.word_of[j]
            self._elem[j] = _readonly(self.field.matmul(self.action[k], self._elem[par]))
        return self._elem[i]

    def element_matrix_perm(self, perm) -> np.ndarray:
        return self.element_matrix(self.group.index(perm))

    def validate(self, seed: int = 0, words: int = 200) -> None:
        F, G = self.field, self.group
        for a in self.action:
            if rank(F, a) != self.dim:
                raise InvalidModule("generator matrix is singular")
        if G.order <= 400:
            for i in range(G.order):
                Ri = self.element_matrix(i)
                for k, g in enumerate(G.generators):
                    j = G.index(tuple(g[x] for x in G.elements[i]))
                    if not np.array_equal(F.matmul(self.action[k], Ri), self.element_matrix(j)):
                        raise InvalidModule("generator matrices violate a group relation")
            return
        rng = np.random.default_rng(seed)
        for _ in range(words):
            w = rng.integers(0, len(G.generators), size=int(rng.integers(1, 40)))
            perm = tuple(range(G.degree))
            M = F.eye(self.dim)
            for k in w:
                perm = tuple(G.generators[k][x] for x in perm)
                M = F.matmul(self.action[k], M)
            if not np.array_equal(M, self.element_matrix_perm(perm)):
                raise InvalidModule("generator matrices violate a group relation")

    def same_category(self, other: "GModule") -> None:
        if other.group is not self.group and other.group != self.group:
            raise ModuleMismatch("modules over different groups")
        if other.field != self.field:
            raise ModuleMismatch(f"modules over {self.field} and {other.field}")

    def with_action(self, action, name=None) -> "GModule":
        return GModule(self.group, self.field, action, check=False, name=name)

    def extend_field(self, field: FiniteField) -> "GModule":
        """Same matrices read over an extension field containing the prime field."""
        if field == self.field:
            return self
        if field.p != self.field.p or field.r % self.field.r:
            raise ModuleMismatch(f"{field} does not contain {self.field}")
        emb = field_embedding(self.field, field)
        return GModule(self.group, field, [emb[a] for a in self.action], check=False, name=self.name)


def field_embedding(small: FiniteField, big: FiniteField) -> np.ndarray:
    """Lookup table code -> code for the embedding GF(p^s) -> GF(p^r), s | r."""
    if small.r == 1:
        return np.arange(small.q, dtype=np.int64)
    # image of small's generator t: a root of small.modulus in big
    from .exact_linalg.poly import UniPoly, factor

    f = UniPoly(big, [int(c) for c in small.modulus])
    root = None
    for g, _ in factor(f):
        if g.degree == 1:
            root = int(big.neg(g.coeffs[0]))
            break
    table = np.zeros(small.q, dtype=np.int64)
    for code in range(small.q):
        acc = 0
        for c in reversed(small.to_coeffs(code)):
            acc = int(big.add(big.mul(acc, root), c))
        table[code] = acc
    return table


@dataclass(frozen=True)
class ModMorphism:
    source: GModule
    target: GModule
    matrix: np.ndarray

    def check(self) -> bool:
        F = self.source.field
        return all(
            np.array_equal(F.matmul(self.matrix, a), F.matmul(b, self.matrix))
            for a, b in zip(self.source.ops, self.target.ops)
        )


# -- intertwiners ------------------------------------------------------------------


def spin_basis(F: ExactField, ops: Sequence[np.ndarray], dim: int):
    """Basis of F^dim grown from standard seed vectors under ``ops``.

    Returns ``(V, seeds, tree)`` where the columns of V are the spun vectors,
    ``seeds`` the positions of seed columns and ``tree[j] = (k, parent)`` for
    columns obtained as ``ops[k] @ V[:, parent]`` (``None`` for seeds).
    """
    cols: list[np.ndarray] = []
    tree: list = []
    seeds: list[int] = []
    # incremental echelon rows for membership tests
    ech = F.zeros((0, dim))
    piv: list[int] = []

    def reduce(v):
        if piv:
            v = F.sub(v, F.matmul(v[piv][None, :], ech)[0])
        return v

    def add(v):
        nonlocal ech, piv
        r = reduce(v)
        nz = np.flatnonzero(_nonzero(F, r))
        if nz.size == 0:
            return False
        c = int(nz[0])
        r = F.mul(r, F.inv(r[c]))
        if piv:
            # keep ech reduced at the new pivot
            coef = ech[:, c].copy()
            ech = F.sub(ech, F.mul(coef[:, None], r[None, :]))
        ech = np.concatenate([ech, r[None, :]], axis=0)
        piv = piv + [c]
        return True

    for s in range(dim):
        if len(cols) == dim:
            break
        e = F.zeros(dim)
        e[s] = F.one_code
        if not add(e):
            continue
        seeds.append(len(cols))
        cols.append(e)
        tree.append(None)
        j = len(cols) - 1
        while j < len(cols):
            for k, A in enumerate(ops):
                w = F.matmul(A, cols[j][:, None])[:, 0]
                if add(w):
                    cols.append(w)
                    tree.append((k, j))
            j += 1
    V = np.stack(cols, axis=1) if cols else F.zeros((dim, 0))
    return V, seeds, tree


def intertwiners(F: ExactField, ops_a: Sequence[np.ndarray], ops_b: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Basis of {X : X A_k = B_k X for all k} (X has shape dim_b x dim_a).

    X is determined by its values on the seeds of a spinning basis of the
    source; the remaining generator relations give a linear system in those
    values only.
    """
    n = ops_a[0].shape[0] if ops_a else 0
    m = ops_b[0].shape[0] if ops_b else 0
    if n == 0 or m == 0:
        return []
    V, seeds, tree = spin_basis(F, ops_a, n)
    Vinv = inverse(F, V)
    t = len(seeds)
    u = t * m
    # L[j] : m x u, X V[:, j] = L[j] @ x
    L = F.zeros((n, m, u))
    for si, j in enumerate(seeds):
        for r in range(m):
            L[j, r, si * m + r] = F.one_code
    for j, node in enumerate(tree):
        if node is None:
            continue
        k, par = node
        L[j] = F.matmul(ops_b[k], L[par])
    treeset = {node for node in tree if node is not None}
    blocks = []
    Lflat = L.reshape(n, m * u)
    for k, A in enumerate(ops_a):
        C = F.matmul(Vinv, F.matmul(A, V))  # A V = V C
        js = [j for j in range(n) if (k, j) not in treeset]
        if not js:
            continue
        BL = F.matmul(ops_b[k], L[js].transpose(1, 0, 2).reshape(m, len(js) * u))
        BL = BL.reshape(m, len(js), u).transpose(1, 0, 2)
        CL = F.matmul(C[:, js].T.copy(), Lflat).reshape(len(js), m, u)
        blocks.append(F.sub(BL, CL).reshape(len(js) * m, u))
    if blocks:
        K = kernel(F, np.concatenate(blocks, axis=0))
    else:
        K = F.eye(u)
    out = []
    for c in range(K.shape[1]):
        x = K[:, c]
        XV = F.matmul(Lflat.reshape(n * m, u), x[:, None]).reshape(n, m).T
        out.append(F.matmul(XV, Vinv))
    return out


def hom_space(a: GModule, b: GModule) -> list[ModMorphism]:
    a.same_category(b)
    return [ModMorphism(a, b, _readonly(X)) for X in intertwiners(a.field, a.ops, b.ops)]


# -- monoidal structure ------------------------------------------------------------------


def kron(F: ExactField, A, B) -> np.ndarray:
    A, B = np.asarray(A), np.asarray(B)
    if isinstance(F, FiniteField) and F.r == 1:
        return np.kron(A, B) % F.p
    prod = F.mul(A[:, None, :, None], B[None, :, None, :])
    return prod.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def tensor(a: GModule, b: GModule) -> GModule:
    a.same_category(b)
    F = a.field
    return a.with_action([kron(F, x, y) for x, y in zip(a.action, b.action)])


def dual(a: GModule) -> GModule:
    F = a.field
    return a.with_action([inverse(F, x).T.copy() for x in a.action])


def direct_sum(*mods: GModule) -> GModule:
    from .exact_linalg.linalg import block_diag

    first = mods[0]
    for m in mods[1:]:
        first.same_category(m)
    F = first.field
    return first.with_action([block_diag(F, *[m.action[k] for m in mods]) for k in range(len(first.action))])


def submodule(a: GModule, U: np.ndarray) -> GModule:
    """Action on an invariant subspace spanned by the (independent) columns of U."""
    F = a.field
    acts = []
    for A in a.action:
        try:
            acts.append(solve(F, U, F.matmul(A, U)))
        except NoSolution as exc:
            raise InvalidModule("subspace is not invariant") from exc
    return a.with_action(acts)


def complete_basis(F: ExactField, U: np.ndarray) -> np.ndarray:
    """Extend independent columns U by standard vectors to an invertible matrix."""
    n = U.shape[0]
    basis, piv = row_basis(F, U.T)
    extra = [c for c in range(n) if c not in set(piv)]
    E = F.zeros((n, len(extra)))
    for j, c in enumerate(extra):
        E[c, j] = F.one_code
    return np.concatenate([U, E], axis=1)


def quotient(a: GModule, U: np.ndarray) -> GModule:
    F = a.field
    k = U.shape[1]
    T = complete_basis(F, U)
    Ti = inverse(F, T)
    return a.with_action([F.matmul(Ti, F.matmul(A, T))[k:, k:] for A in a.action])


def restrict(a: GModule, h: Subgroup) -> GModule:
    if h.parent is not a.group and h.parent != a.group:
        raise NotASubgroup("subgroup of a different group")
    H = h.group
    acts = [a.element_matrix(a.group.index(g)) for g in H.generators]
    return GModule(H, a.field, acts, check=False)


def induce(a: GModule, g: PermGroup, h: Subgroup | None = None) -> GModule:
    """Induction from the group of ``a`` (a subgroup of g) along left coset reps."""
    H = a.group
    if h is None:
        for x in H.generators:
            if not g.contains(x):
                raise NotASubgroup("module group is not inside the target group")
        members = frozenset(g.index(e) for e in H.elements)
        h = Subgroup(g, members, tuple(g.index(x) for x in H.generators))
    F = a.field
    reps = g.left_coset_reps(h)
    rep_pos = {}
    for pos, x in enumerate(reps):
        for y in h.members:
            rep_pos[g.mul(x, y)] = pos
    d = a.dim
    n = len(reps)
    acts = []
    inv = g.inverses
    for gen in g.generators:
        gi = g.index(gen)
        M = F.zeros((n * d, n * d))
        for i, x in enumerate(reps):
            gx = g.mul(gi, x)
            j = rep_pos[gx]
            hh = g.mul(int(inv[reps[j]]), gx)  # x_j^-1 g x_i in H
            M[j * d : (j + 1) * d, i * d : (i + 1) * d] = a.element_matrix_perm(g.elements[hh])
        acts.append(M)
    return GModule(g, F, acts, check=False)


# -- traces and negligibility -------------------------------------------------------


def trace_pairing(F: ExactField, f: np.ndarray, gmat: np.ndarray):
    """Tr(f o g) computed as sum_ij f_ij g_ji."""
    return _field_sum(F, F.mul(f, gmat.T))


def _field_sum(F: ExactField, arr) -> object:
    arr = np.asarray(arr).ravel()
    if isinstance(F, FiniteField) and F.r == 1:
        return int(arr.sum() % F.p)
    if isinstance(F, FiniteField):
        return int(F.pack(F.unpack(arr).sum(axis=0)))
    acc = F.zero
    for x in arr:
        acc = acc + x
    return acc


def negligible_morphism(f: ModMorphism, back: Sequence[np.ndarray] | None = None) -> bool:
    """Tr(f o g) = 0 for every g in a basis of Hom(target, source)."""
    F = f.source.field
    if back is None:
        back = intertwiners(F, f.target.ops, f.source.ops)
    return all(not _field_sum(F, F.mul(f.matrix, g.T)) for g in back)


def negligible_object(a: GModule, decomposer=None) -> bool:
    """All indecomposable summands have dimension divisible by p."""
    if decomposer is None:
        from .decomp import decompose as decomposer
    dec = decomposer(a)
    return all(s.dim % a.field.p == 0 for s in dec.summand_modules())


# -- Heller shifts ------------------------------------------------------------------


def _is_p_group(g: PermGroup, p: int) -> bool:
    n = g.order
    while n % p == 0:
        n //= p
    return n == 1


def radical_submodule(a: GModule) -> np.ndarray:
    """Columns spanning I*M, I the augmentation ideal."""
    F = a.field
    cols = [F.sub(A, F.eye(a.dim)) for A in a.action]
    gen = np.concatenate(cols, axis=1)
    basis, piv = row_basis(F, gen.T)
    # close under the action (I M is a submodule)
    span = basis
    while True:
        imgs = np.concatenate([span.T] + [F.matmul(A, span.T) for A in a.action], axis=1)
        nb, npiv = row_basis(F, imgs.T)
        if len(npiv) == len(piv):
            return nb.T
        span, piv = nb, npiv


def heller_shift(a: GModule) -> GModule:
    F = a.field
    G = a.group
    if not _is_p_group(G, F.p):
        raise NotAPGroup(f"{G.name} is not a {F.p}-group")
    IM = radical_submodule(a)
    T = complete_basis(F, IM)
    tops = T[:, IM.shape[1]:]
    t = tops.shape[1]
    n = G.order
    # pi: (kG)^t -> M, basis e_{(i, g)} -> rho(g) m_i, ordered i-major
    cols = []
    for i in range(t):
        for e in range(n):
            cols.append(F.matmul(a.element_matrix(e), tops[:, i : i + 1])[:, 0])
    Pi = np.stack(cols, axis=1)
    K = kernel(F, Pi)
    reg = [_left_regular_matrix(F, G, k) for k in range(len(G.generators))]
    acts = []
    from .exact_linalg.linalg import block_diag

    for k in range(len(G.generators)):
        R = block_diag(F, *([reg[k]] * t))
        acts.append(solve(F, K, F.matmul(R, K)))
    return GModule(G, F, acts, check=False)


def inverse_heller_shift(a: GModule) -> GModule:
    """Omega^{-1}(M) computed as Omega(M*)*, valid since kG is self-injective."""
    return dual(heller_shift(dual(a)))


def _left_regular_matrix(F, G: PermGroup, k: int) -> np.ndarray:
    n = G.order
    gi = G.index(G.generators[k])
    M = F.zeros((n, n))
    for e in range(n):
        M[G.mul(gi, e), e] = F.one_code
    return M


# -- Higman's criterion ---------------------------------------------------------------


def relative_trace(a: GModule, h: Subgroup, phi: np.ndarray) -> np.ndarray:
    F = a.field
    G = a.group
    acc = F.zeros(phi.shape)
    for x in G.left_coset_reps(h):
        rx = a.element_matrix(x)
        rxi = a.element_matrix(int(G.inverses[x]))
        acc = F.add(acc, F.matmul(rx, F.matmul(phi, rxi)))
    return acc


def higman_projective(a: GModule, h: Subgroup) -> bool:
    """Identity lies in Tr_H^G(End_kH(M))."""
    F = a.field
    res = restrict(a, h)
    basis = intertwiners(F, res.ops, res.ops)
    if not basis:
        return a.dim == 0
    imgs = np.stack([relative_trace(a, h, phi).ravel() for phi in basis], axis=1)
    ident = F.eye(a.dim).ravel()
    try:
        solve(F, imgs, ident)
        return True
    except NoSolution:
        return False


# -- constructors ------------------------------------------------------------------


def trivial_module(G: PermGroup, F: FiniteField) -> GModule:
    return GModule(G, F, [F.eye(1) for _ in G.generators], check=False, name="k")


def _perm_sign(p) -> int:
    from .groups import to_cycles

    return (-1) ** sum(len(c) - 1 for c in to_cycles(p))


def sign_module(G: PermGroup, F: FiniteField) -> GModule:
    return GModule(G, F, [F.asarray([[_perm_sign(g) % F.p]]) for g in G.generators], check=False, name="sign")


def perm_module(G: PermGroup, F: FiniteField) -> GModule:
    mats = []
    for g in G.generators:
        M = F.zeros((G.degree, G.degree))
        for i, gi in enumerate(g):
            M[gi, i] = F.one_code
        mats.append(M)
    return GModule(G, F, mats, check=False, name="perm")


def perm_quotient(G: PermGroup, F: FiniteField) -> GModule:
    """Permutation module modulo the constants (dimension degree-1)."""
    P = perm_module(G, F)
    ones = F.asarray(np.ones((G.degree, 1), dtype=np.int64))
    m = quotient(P, ones)
    m.name = f"V{G.degree - 1}"
    return m


def perm_heart(G: PermGroup, F: FiniteField) -> GModule:
    """Sum-zero vectors modulo constants when p divides the degree (dimension
    degree-2); the sum-zero submodule otherwise."""
    P = perm_module(G, F)
    n = G.degree
    W = F.zeros((n, n - 1))
    for i in range(n - 1):
        W[i, i] = F.one_code
        W[n - 1, i] = F.neg(F.one_code)
    sumzero = submodule(P, W)
    if n % F.p:
        sumzero.name = f"V{n - 1}"
        return sumzero
    # constants inside W-coordinates: all-ones vector has coordinates (1,...,1)
    ones = F.asarray(np.ones((n - 1, 1), dtype=np.int64))
    m = quotient(sumzero, ones)
    m.name = f"V{n - 2}"
    return m


def young_induced(G: PermGroup, F: FiniteField, k: int) -> GModule:
    """Induction to G (containing S_degree) of V_{k-1} of S_k, inflated to S_k x S_{degree-k}."""
    from .groups import from_cycles

    d = G.degree
    if not 2 <= k <= d:
        raise InvalidModule(f"young_induced needs 2 <= k <= {d}")
    gens = [from_cycles([[0, 1]], d), from_cycles([list(range(k))], d)]
    if d - k >= 2:
        gens += [from_cycles([[k, k + 1]], d), from_cycles([list(range(k, d))], d)]
    H = PermGroup(gens, name=f"S{k}xS{d - k}", degree=d)
    mats = []
    for g in gens:
        M = F.zeros((k, k))
        for i in range(k):
            M[g[i], i] = F.one_code
        mats.append(M)
    a = quotient(GModule(H, F, mats, check=False), F.asarray(np.ones((k, 1), dtype=np.int64)))
    m = induce(a, G)
    m.name = f"Ind(V{k - 1})"
    return m


def regular_module(G: PermGroup, F: FiniteField) -> GModule:
    return GModule(G, F, [_left_regular_matrix(F, G, k) for k in range(len(G.generators))], check=False,
                   name="kG")


def jordan_module(G: PermGroup, F: FiniteField, size: int) -> GModule:
    """Cyclic group: the generator acts by a unipotent Jordan block of the given size."""
    if len(G.generators) != 1:
        raise InvalidModule("Jordan modules need a cyclic group with one generator")
    J = F.eye(size)
    for i in range(size - 1):
        J[i, i + 1] = F.one_code
    return GModule(G, F, [J], name=f"J{size}")


def heller_module(G: PermGroup, F: FiniteField, n: int, strip=True) -> GModule:
    """Omega^n(k) with projective summands removed at each step."""
    m = trivial_module(G, F)
    for _ in range(abs(n)):
        m = heller_shift(m) if n > 0 else inverse_heller_shift(m)
        if strip:
            m = strip_projectives(m)
    m.name = f"Omega^{n}(k)"
    return m


def strip_projectives(m: GModule) -> GModule:
    """Remove free summands (p-group case) using the decomposition engine."""
    from .decomp import decompose

    dec = decompose(m)
    keep = [s for s in dec.summand_modules() if s.dim % m.group.order != 0 or not _is_free(s)]
    if len(keep) == len(dec.summand_modules()):
        return m
    if not keep:
        return GModule(m.group, m.field, [m.field.zeros((0, 0)) for _ in m.group.generators], check=False)
    return direct_sum(*keep) if len(keep) > 1 else keep[0]


def _is_free(s: GModule) -> bool:
    """A module over a p-group is free iff dim(M/IM) * |G| = dim M."""
    IM = radical_submodule(s)
    return (s.dim - IM.shape[1]) * s.group.order == s.dim


def module_from_spec(G: PermGroup, F: FiniteField, spec: str) -> GModule:
    """Named module constructors: trivial, sign, perm, perm_quotient, perm_heart,
    regular, jordan:k, young:k, heller:n."""
    spec = spec.strip()
    if spec in ("trivial", "k"):
        return trivial_module(G, F)
    if spec == "sign":
        return sign_module(G, F)
    if spec == "perm":
        return perm_module(G, F)
    if spec == "perm_quotient":
        return perm_quotient(G, F)
    if spec == "perm_heart":
        return perm_heart(G, F)
    if spec == "regular":
        return regular_module(G, F)
    if spec.startswith("jordan:"):
        return jordan_module(G, F, int(spec.split(":", 1)[1]))
    if spec.startswith("young:"):
        return young_induced(G, F, int(spec.split(":", 1)[1]))
    if spec.startswith("heller:"):
        return heller_module(G, F, int(spec.split(":", 1)[1]))
    from .errors import UnknownName

    raise UnknownName(f"unknown module constructor {spec!r}")


# -- JSON ------------------------------------------------------------------------


def module_to_json(a: GModule) -> dict:
    F = a.field
    act = {}
    for name, M in zip(a.group.generator_names, a.action):
        if F.r == 1:
            act[name] = [[int(x) for x in row] for row in M]
        else:
            act[name] = [[list(F.to_coeffs(int(x))) for x in row] for row in M]
    return {
        "field": {"p": F.p, "degree": F.r},
        "group": group_to_literal(a.group),
        "dim": a.dim,
        "action": act,
    }


def module_from_json(obj, group: PermGroup | None = None) -> GModule:
    if isinstance(obj, str):
        obj = json.loads(obj)
    fld = obj["field"]
    F = GF(int(fld["p"]), int(fld.get("degree", 1)))
    G = group or group_from_literal(obj["group"])
    act = obj["action"]
    names = G.generator_names
    if set(act) != set(names):
        raise InvalidModule(f"action keys {sorted(act)} != generators {names}")
    mats = []
    for nm in names:
        rows = act[nm]
        if F.r == 1:
            mats.append(F.asarray(rows))
        else:
            mats.append(np.array([[F.from_coeffs(c) for c in row] for row in rows], dtype=np.int64).reshape(
                len(rows), len(rows)))
    m = GModule(G, F, mats)
    if m.dim != int(obj["dim"]):
        raise InvalidModule("dim field disagrees with matrices")
    return m
