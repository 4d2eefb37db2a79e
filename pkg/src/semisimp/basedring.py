"""Based rings: unital Z>=0 rings with a distinguished basis and duality.

Structure constants are stored densely as ``N[i, j, k]`` (coefficient of
``X_k`` in ``X_i X_j``) together with a completeness mask: for truncated
rings ``complete[i, j]`` is False when the product ``X_i X_j`` leaves the
stored basis, and every check touching such a product is reported as
skipped.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .errors import ClusteringAmbiguous, NotCommutative, SearchTimeout, Truncated, UnknownName

__all__ = [
    "BasedRing",
    "ValidationReport",
    "RingCharacter",
    "validate",
    "fp_dims",
    "characters",
    "formal_codegree",
    "iso_search",
    "catalog",
    "product",
    "ring_from_json",
    "ver_p",
    "ver_p_plus",
    "K_l",
    "K_l_tilde",
    "K_inf_trunc",
    "sl2_trunc",
    "pgl2_trunc",
    "osp12_trunc",
    "group_ring",
]


class BasedRing:
    def __init__(self, basis: Sequence[str], N: np.ndarray, dual: Sequence[int], unit: int = 0,
                 complete: np.ndarray | None = None, truncated: bool = False, level: int | None = None,
                 name: str | None = None):
        r = len(basis)
        N = np.asarray(N, dtype=np.int64)
        if N.shape != (r, r, r):
            raise ValueError(f"structure constants have shape {N.shape}, expected {(r, r, r)}")
        if complete is None:
            complete = np.ones((r, r), dtype=bool)
        self.basis = list(basis)
        self.N = N
        self.N.setflags(write=False)
        self.dual = [int(x) for x in dual]
        self.unit = int(unit)
        self.complete = np.asarray(complete, dtype=bool)
        self.complete.setflags(write=False)
        self.truncated = bool(truncated)
        self.level = level
        self.name = name

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __repr__(self):
        t = f", truncated at {self.level}" if self.truncated else ""
        return f"BasedRing({self.name or '?'}, rank={self.rank}{t})"

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise UnknownName(f"no basis element {label!r}") from None

    def mult(self, i: int, j: int) -> dict[int, int]:
        return {int(k): int(v) for k, v in enumerate(self.N[i, j]) if v}

    def mult_labels(self, a: str, b: str) -> dict[str, int]:
        return {self.basis[k]: v for k, v in self.mult(self.index(a), self.index(b)).items()}

    def is_commutative(self) -> bool:
        both = self.complete & self.complete.T
        return bool(np.all((self.N == self.N.transpose(1, 0, 2))[both]))

    def left_matrix(self, i: int) -> np.ndarray:
        """A_i[j, k] = N_ij^k: multiplication by X_i in row-vector coordinates."""
        return self.N[i].astype(float)

    def invertible(self, i: int) -> bool:
        j = self.dual[i]
        return bool(self.complete[i, j]) and self.N[i, j].sum() == 1 and self.N[i, j, self.unit] == 1

    def element_order(self, i: int, cap: int = 1000) -> int | None:
        """Multiplicative order of an invertible basis element (None if unknown)."""
        if not self.invertible(i):
            return None
        cur = i
        for n in range(1, cap + 1):
            if cur == self.unit:
                return n
            if not self.complete[cur, i]:
                return None
            nxt = np.flatnonzero(self.N[cur, i])
            if len(nxt) != 1:
                return None
            cur = int(nxt[0])
        return None

    def to_json(self) -> str:
        idx = np.argwhere(self.N)
        consts = [[int(i), int(j), int(k), int(self.N[i, j, k])] for i, j, k in idx]
        obj = {
            "basis": self.basis,
            "unit": self.unit,
            "dual": self.dual,
            "constants": consts,
            "truncated": self.truncated,
            "level": self.level,
        }
        if self.truncated:
            obj["incomplete"] = [[int(i), int(j)] for i, j in np.argwhere(~self.complete)]
        return json.dumps(obj, sort_keys=True)

    def relabel(self, basis: Sequence[str], name=None) -> "BasedRing":
        return BasedRing(basis, self.N.copy(), self.dual, self.unit, self.complete.copy(), self.truncated,
                         self.level, name or self.name)


def ring_from_json(text) -> BasedRing:
    obj = json.loads(text) if isinstance(text, str) else text
    r = len(obj["basis"])
    N = np.zeros((r, r, r), dtype=np.int64)
    for i, j, k, v in obj["constants"]:
        N[i, j, k] = v
    complete = np.ones((r, r), dtype=bool)
    for i, j in obj.get("incomplete", []):
        complete[i, j] = False
    return BasedRing(obj["basis"], N, obj["dual"], obj["unit"], complete, obj.get("truncated", False),
                     obj.get("level"))


# -- validation ---------------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    violations: list = dc_field(default_factory=list)
    skipped: list = dc_field(default_factory=list)
    checked_quadruples: int = 0

    def summary(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return (f"{verdict}: {len(self.violations)} violations, {self.checked_quadruples} associativity "
                f"triples checked, {len(self.skipped)} skipped")


def validate(R: BasedRing, max_listed: int = 50) -> ValidationReport:
    r = R.rank
    N, C, u = R.N, R.complete, R.unit
    viol: list = []
    skipped: list = []
    if (N < 0).any():
        viol.append("negative structure constant")
    # involution
    for i in range(r):
        if R.dual[R.dual[i]] != i:
            viol.append(f"duality is not an involution at {R.basis[i]}")
    if R.dual[u] != u:
        viol.append("unit is not self-dual")
    # unit
    eye = np.eye(r, dtype=np.int64)
    for j in range(r):
        if C[u, j] and not np.array_equal(N[u, j], eye[j]):
            viol.append(f"unit fails on the left at {R.basis[j]}")
        if C[j, u] and not np.array_equal(N[j, u], eye[j]):
            viol.append(f"unit fails on the right at {R.basis[j]}")
    # duality / Frobenius: N_ij^unit = delta_{j, i*}
    for i in range(r):
        for j in range(r):
            if C[i, j] and N[i, j, u] != int(j == R.dual[i]):
                viol.append(f"N[{R.basis[i]},{R.basis[j]}]^unit = {N[i, j, u]}, expected {int(j == R.dual[i])}")
    # associativity on triples whose both bracketings only touch complete products
    left = np.einsum("ijm,mkl->ijkl", N, N)
    right = np.einsum("jkm,iml->ijkl", N, N)
    # completeness of (X_i X_j) X_k: C[i,j] and C[m,k] for all m in supp(N_ij)
    supp = N > 0
    okL = C[:, :, None] & ~np.einsum("ijm,mk->ijk", supp, ~C).astype(bool)
    okR = C[None, :, :] & ~np.einsum("jkm,im->ijk", supp, ~C).astype(bool)
    ok = okL & okR
    bad = np.any(left != right, axis=3) & ok
    for i, j, k in np.argwhere(bad)[:max_listed]:
        viol.append(f"associativity fails for ({R.basis[i]}, {R.basis[j]}, {R.basis[k]})")
    if bad.sum() > max_listed:
        viol.append(f"... {int(bad.sum()) - max_listed} further associativity failures")
    for i, j, k in np.argwhere(~ok):
        skipped.append((int(i), int(j), int(k)))
    return ValidationReport(not viol, viol, skipped, int(ok.sum()))


# -- FP dimensions and characters ---------------------------------------------------


def fp_dims(R: BasedRing, tol: float = 1e-12) -> np.ndarray:
    """Frobenius-Perron dimensions: the positive common eigenvector of the A_i."""
    if R.truncated:
        raise Truncated("FP dimensions need a complete ring")
    A = R.N.astype(float).sum(axis=0)  # sum_i A_i, entries N_ij^k summed over i
    w, V = np.linalg.eig(A)
    idx = int(np.argmax(w.real))
    d = np.abs(V[:, idx].real)
    d = d / d[R.unit]
    # polish with power iteration on the nonnegative matrix
    for _ in range(200):
        nd = A @ d
        nd = nd / nd[R.unit]
        if np.max(np.abs(nd - d)) < tol:
            d = nd
            break
        d = nd
    # FPdim(X_i) from the eigen-equation A_i d = d_i d
    vals = np.array([(R.N[i].astype(float) @ d)[R.unit] for i in range(R.rank)])
    res = max(np.max(np.abs(R.N[i].astype(float) @ d - vals[i] * d)) for i in range(R.rank))
    if res > 1e-9 * max(1.0, float(np.max(vals)) ** 2):
        raise ClusteringAmbiguous(f"FP eigenvector residual {res:.2e} too large")
    return vals


@dataclass
class RingCharacter:
    ring: BasedRing
    values: np.ndarray  # complex

    def residual(self) -> float:
        R, v = self.ring, self.values
        worst = 0.0
        for i in range(R.rank):
            lhs = v[i] * v
            rhs = R.N[i].astype(float) @ v
            err = np.abs(lhs - rhs) / (1 + np.abs(lhs))
            worst = max(worst, float(err.max()))
        return worst


def characters(R: BasedRing, seed: int = 0, cluster_tol: float = 1e-9, attempts: int = 5) -> list[RingCharacter]:
    """All ring homomorphisms to C, as simultaneous eigenvectors of the A_i."""
    if R.truncated:
        raise Truncated("characters need a complete ring")
    if not R.is_commutative():
        raise NotCommutative("ring is not commutative")
    rng = np.random.default_rng(seed)
    mats = [R.N[i].astype(float) for i in range(R.rank)]
    for _ in range(attempts):
        c = rng.standard_normal(R.rank)
        C = sum(ci * M for ci, M in zip(c, mats))
        w, V = np.linalg.eig(C)
        gaps = np.abs(w[:, None] - w[None, :]) + np.eye(len(w)) * 1e9
        if gaps.min() < cluster_tol * max(1.0, np.abs(w).max()):
            continue
        chars = []
        for col in range(V.shape[1]):
            v = V[:, col]
            if abs(v[R.unit]) < 1e-14:
                break
            v = v / v[R.unit]
            # polish: phi(X_i) read off the eigen-equation
            vals = np.array([(mats[i] @ v)[R.unit] for i in range(R.rank)])
            chars.append(RingCharacter(R, vals))
        else:
            chars.sort(key=lambda ch: tuple(np.round(np.concatenate([ch.values.real, ch.values.imag]), 9)))
            return chars
    raise ClusteringAmbiguous("could not separate characters by a random combination")


def formal_codegree(phi: RingCharacter) -> complex:
    R, v = phi.ring, phi.values
    return complex(sum(v[i] * v[R.dual[i]] for i in range(R.rank)))


# -- isomorphism search -------------------------------------------------------------


def _elem_invariants(R: BasedRing, i: int):
    sq = R.N[i, i]
    return (
        R.dual[i] == i,
        bool(R.complete[i, i]),
        int(R.complete[i].sum()),
        tuple(sorted(int(x) for x in R.N[i, R.dual[i]])) if R.complete[i, R.dual[i]] else None,
        tuple(sorted(int(x) for x in sq)) if R.complete[i, i] else None,
        int(R.N[i][R.complete[i]].sum()),
    )


def iso_search(a: BasedRing, b: BasedRing, pins: dict | None = None, timeout: float = 60.0):
    """A basis bijection a -> b transporting unit, duality, completeness and all
    stored (complete) structure constants, or None if none exists.

    Raises SearchTimeout when the search does not finish in time.
    """
    if a.rank != b.rank:
        return None
    r = a.rank
    inv_a = [_elem_invariants(a, i) for i in range(r)]
    inv_b = [_elem_invariants(b, i) for i in range(r)]
    if sorted(map(repr, inv_a)) != sorted(map(repr, inv_b)):
        return None
    pins = dict(pins or {})
    if a.unit in pins and pins[a.unit] != b.unit:
        return None
    pins[a.unit] = b.unit
    domains = {i: [j for j in range(r) if inv_b[j] == inv_a[i]] for i in range(r)}
    for i, j in pins.items():
        if j not in domains[i]:
            return None
        domains[i] = [j]
    # assignment order: pins, then elements reached as summands of products of earlier ones
    order = list(pins)
    placed = set(order)
    origin: dict[int, tuple[int, int]] = {}
    while len(order) < r:
        grew = False
        for x in list(order):
            for y in list(order):
                if not a.complete[x, y]:
                    continue
                for k in np.flatnonzero(a.N[x, y]):
                    k = int(k)
                    if k not in placed:
                        placed.add(k)
                        order.append(k)
                        origin[k] = (x, y)
                        grew = True
        if not grew:
            rest = [i for i in range(r) if i not in placed]
            nxt = min(rest, key=lambda i: (len(domains[i]), i))
            placed.add(nxt)
            order.append(nxt)
    deadline = time.monotonic() + timeout
    sigma = [-1] * r
    used = [False] * r
    Na, Nb, Ca, Cb = a.N, b.N, a.complete, b.complete

    def consistent(i):
        si = sigma[i]
        di = a.dual[i]
        if sigma[di] != -1 and sigma[di] != b.dual[si]:
            return False
        assigned = [x for x in order if sigma[x] != -1]
        ax = np.array(assigned)
        bx = np.array([sigma[x] for x in assigned])
        # products involving i and assigned elements
        if not np.array_equal(Ca[i, ax], Cb[si, bx]) or not np.array_equal(Ca[ax, i], Cb[bx, si]):
            return False
        for x, sx in zip(assigned, bx):
            for (p, q, sp, sq) in ((i, x, si, sx), (x, i, sx, si)):
                if not Ca[p, q]:
                    continue
                rowa, rowb = Na[p, q], Nb[sp, sq]
                if rowa.sum() != rowb.sum():
                    return False
                if not np.array_equal(rowa[ax], rowb[bx]):
                    return False
        # i as a product target of assigned pairs
        sub_a = Na[np.ix_(ax, ax, [i])][:, :, 0]
        sub_b = Nb[np.ix_(bx, bx, [si])][:, :, 0]
        mask = Ca[np.ix_(ax, ax)]
        return bool(np.array_equal(sub_a[mask], sub_b[mask]))

    def rec(pos):
        if time.monotonic() > deadline:
            raise SearchTimeout(f"iso_search exceeded {timeout}s")
        if pos == r:
            return True
        i = order[pos]
        dom = domains[i]
        if i in origin:
            x, y = origin[i]
            allowed = set(int(k) for k in np.flatnonzero(Nb[sigma[x], sigma[y]]))
            dom = [j for j in dom if j in allowed]
        for j in dom:
            if used[j]:
                continue
            sigma[i] = j
            used[j] = True
            if consistent(i) and rec(pos + 1):
                return True
            sigma[i] = -1
            used[j] = False
        return False

    if not rec(0):
        return None
    # post hoc: transport every complete constant
    s = np.array(sigma)
    if not np.array_equal(Ca, Cb[np.ix_(s, s)]):
        return None
    Nt = Nb[np.ix_(s, s, s)]
    if not np.array_equal(Na[Ca], Nt[Ca]):
        return None
    return {int(i): int(sigma[i]) for i in range(r)}


# -- catalog ------------------------------------------------------------------------


def _truncated_cg(P: int, labels: Sequence[int]) -> np.ndarray:
    """Ver-type fusion on the listed L_a: c runs over |a-b|+1, ..., min(a+b-1, 2P-1-a-b) step 2."""
    pos = {a: i for i, a in enumerate(labels)}
    r = len(labels)
    N = np.zeros((r, r, r), dtype=np.int64)
    for a in labels:
        for b in labels:
            top = min(a + b - 1, 2 * P - 1 - a - b)
            for c in range(abs(a - b) + 1, top + 1, 2):
                N[pos[a], pos[b], pos[c]] += 1
    return N


def ver_p(p: int) -> BasedRing:
    labels = list(range(1, p))
    return BasedRing([f"L{a}" for a in labels], _truncated_cg(p, labels), list(range(p - 1)), 0,
                     name=f"Ver{p}")


def ver_p_plus(p: int) -> BasedRing:
    labels = list(range(1, p, 2))
    return BasedRing([f"L{a}" for a in labels], _truncated_cg(p, labels), list(range(len(labels))), 0,
                     name=f"Ver{p}+")


def K_l(l: int) -> BasedRing:
    """X_0..X_l with X_1 X_l = X_{l-1}; odd part of truncated fusion at 2(l+1)."""
    labels = [2 * i + 1 for i in range(l + 1)]
    return BasedRing([f"X{i}" for i in range(l + 1)], _truncated_cg(2 * (l + 1), labels), list(range(l + 1)),
                     0, name=f"K{l}")


def K_l_tilde(l: int) -> BasedRing:
    """X_0..X_l with X_1 X_l = X_{l-1} + X_l; odd part of truncated fusion at 2l+3."""
    labels = [2 * i + 1 for i in range(l + 1)]
    return BasedRing([f"X{i}" for i in range(l + 1)], _truncated_cg(2 * l + 3, labels), list(range(l + 1)),
                     0, name=f"K{l}~")


def _cg_trunc(L: int, step: int, start_of, prefix: str, name: str) -> BasedRing:
    """Truncations of Clebsch-Gordan rings: X_i X_j = sum over k = |i-j|..i+j (given step)."""
    r = L + 1
    N = np.zeros((r, r, r), dtype=np.int64)
    C = np.ones((r, r), dtype=bool)
    for i in range(r):
        for j in range(r):
            if i + j > L:
                C[i, j] = False
            for k in range(abs(i - j), i + j + 1, step):
                if k <= L:
                    N[i, j, k] += 1
    return BasedRing([f"{prefix}{start_of(i)}" for i in range(r)], N, list(range(r)), 0, C, True, L, name)


def K_inf_trunc(L: int) -> BasedRing:
    return _cg_trunc(L, 1, lambda i: i, "X", f"Kinf<={L}")


def sl2_trunc(L: int) -> BasedRing:
    return _cg_trunc(L, 2, lambda i: i, "W", f"SL2<={L}")


def pgl2_trunc(L: int) -> BasedRing:
    """Rep PGL(2): U_s of dimension s = 1, 3, 5, ...; U_a U_b as for SO(3)."""
    return _cg_trunc(L, 1, lambda i: 2 * i + 1, "U", f"PGL2<={L}")


def osp12_trunc(L: int) -> BasedRing:
    """Rep OSp(1|2) simples up to parity have the K_inf fusion rules."""
    return _cg_trunc(L, 1, lambda i: i, "P", f"OSp12<={L}")


def group_ring(invariants: Sequence[int], L: int | None = None) -> BasedRing:
    """Z[A] for A = Z/n_1 x ... (0 meaning a free Z factor); free parts truncated to
    total word length <= L."""
    invariants = list(invariants)
    free = [i for i, n in enumerate(invariants) if n == 0]
    if free and L is None:
        raise ValueError("free factors need a truncation level")
    ranges = []
    for n in invariants:
        ranges.append(range(n) if n else range(-L, L + 1))
    import itertools

    elems = [e for e in itertools.product(*ranges) if sum(abs(e[i]) for i in free) <= (L or 0)]
    elems.sort(key=lambda e: (sum(abs(e[i]) for i in free), [abs(x) if invariants[t] == 0 else x for t, x in enumerate(e)], e))
    pos = {e: i for i, e in enumerate(elems)}
    r = len(elems)
    N = np.zeros((r, r, r), dtype=np.int64)
    C = np.ones((r, r), dtype=bool)
    dual = []
    for e in elems:
        dual.append(pos[tuple((-x) % n if n else -x for x, n in zip(e, invariants))])
    for a in elems:
        for b in elems:
            c = tuple((x + y) % n if n else x + y for x, y, n in zip(a, b, invariants))
            if c in pos:
                N[pos[a], pos[b], pos[c]] = 1
            else:
                C[pos[a], pos[b]] = False

    def lab(e):
        return "g(" + ",".join(str(x) for x in e) + ")"

    name = "Z[" + "x".join(f"Z{n}" if n else "Z" for n in invariants) + "]"
    return BasedRing([lab(e) for e in elems], N, dual, pos[tuple(0 for _ in invariants)], C, bool(free),
                     L if free else None, name)


def product(a: BasedRing, b: BasedRing) -> BasedRing:
    ra, rb = a.rank, b.rank
    N = np.einsum("ijk,abc->iajbkc", a.N, b.N).reshape(ra * rb, ra * rb, ra * rb)
    C = np.einsum("ij,ab->iajb", a.complete, b.complete).reshape(ra * rb, ra * rb).astype(bool)
    basis = [f"{x}*{y}" for x in a.basis for y in b.basis]
    dual = [a.dual[i] * rb + b.dual[j] for i in range(ra) for j in range(rb)]
    unit = a.unit * rb + b.unit
    trunc = a.truncated or b.truncated
    lvl = max(x for x in (a.level, b.level) if x is not None) if trunc else None
    return BasedRing(basis, N, dual, unit, C, trunc, lvl, f"{a.name}*{b.name}")


def catalog(name: str, *params) -> BasedRing:
    """Named rings; ``name`` may embed parameters separated by ':' (e.g. ``ver_p:5``,
    ``group_ring:Z4``, ``group_ring:Z2xZ2``, ``K_l:3``)."""
    if ":" in name and not params:
        head, rest = name.split(":", 1)
        if head == "product":
            left, right = rest.split(";")
            return product(catalog(left), catalog(right))
        if head == "group_ring":
            parts = rest.split(":")
            inv = []
            for tok in parts[0].replace("Z", " ").split("x"):
                tok = tok.strip()
                inv.append(int(tok) if tok else 0)
            L = int(parts[1]) if len(parts) > 1 else None
            return group_ring(inv, L)
        return catalog(head, *[int(x) for x in rest.split(":")])
    table = {
        "ver_p": ver_p,
        "ver_p_plus": ver_p_plus,
        "K_inf_trunc": K_inf_trunc,
        "K_l": K_l,
        "K_l_tilde": K_l_tilde,
        "sl2_trunc": sl2_trunc,
        "pgl2_trunc": pgl2_trunc,
        "osp12_trunc": osp12_trunc,
    }
    if name == "group_ring":
        return group_ring(*params)
    if name in table:
        return table[name](*params)
    raise UnknownName(f"unknown ring {name!r}")
