"""The quantum Borel category: modules over <g, E | g E g^-1 = q E>, with
Delta(E) = E (x) g + 1 (x) E, at generic q and at odd roots of unity.

Objects V(m, d) are Jordan chains for E of length d whose top vector has
g-weight q^m.  Tensor products are classified by an oracle that builds the
explicit matrices and reads the chain structure from graded ranks of E^k;
an independent route decomposes the same two-operator module with
``decomp.decompose`` over a prime field containing the n-th roots of unity.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from . import basedring as br
from .errors import BudgetExceeded, DimCapExceeded, GenericOrder
from .exact_linalg.fields import GF, CyclotomicField, ExactField, FiniteField, RationalFunctionField, is_prime
from .exact_linalg.linalg import rank

GENERIC = None
ORACLE_DIM_CAP = 144


# -- objects ------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class QObject:
    """V(m, d): Jordan chain of length d, top weight m (mod n unless generic)."""

    n: int | None
    m: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("chain length d must be at least 1")
        if self.n is not None:
            if self.n < 3 or self.n % 2 == 0:
                raise ValueError("only odd n >= 3 is implemented")
            object.__setattr__(self, "m", self.m % self.n)

    @classmethod
    def from_gl(cls, m1: int, m2: int) -> "QObject":
        """Generic-q object V_{m1,m2} with m1 >= m2."""
        if m1 < m2:
            raise ValueError("need m1 >= m2")
        return cls(GENERIC, m1, m1 - m2 + 1)

    @property
    def label(self) -> str:
        return f"V({self.m},{self.d})"

    @property
    def negligible(self) -> bool:
        return self.n is not None and self.d % self.n == 0

    @property
    def gl_weight(self) -> tuple[int, int]:
        return (self.m, self.m - self.d + 1)

    def weights(self) -> list[int]:
        """g-weight exponents from the bottom of the chain to the top."""
        return [self.m - self.d + 1 + k for k in range(self.d)]

    def dual(self) -> "QObject":
        return QObject(self.n, self.d - 1 - self.m, self.d)

    def __str__(self):
        return self.label


def gl2_fusion(a: tuple[int, int], b: tuple[int, int]) -> list[tuple[int, int]]:
    """Clebsch-Gordan rule for GL(2) highest weights (sorted, with multiplicity)."""
    (m1, m2), (n1, n2) = a, b
    if m1 < m2 or n1 < n2:
        raise ValueError("highest weights need m1 >= m2")
    k = min(m1 - m2, n1 - n2)
    return sorted((m1 + n1 - j, m2 + n2 + j) for j in range(k + 1))


def qdim(x: QObject, q):
    """q^{m-d+1} + ... + q^m for any q supporting * and integer powers."""
    lo = x.m - x.d + 1
    base = q**lo
    acc = base
    for _ in range(x.d - 1):
        base = base * q
        acc = acc + base
    return acc


def nu(x: QObject) -> int:
    if x.n is None:
        raise GenericOrder("nu needs q of finite order")
    return (2 * x.m - x.d + 1) % (2 * x.n)


# -- theta ---------------------------------------------------------------------------


def _r_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    """Product in the representation ring of SL(2) on the basis W_s."""
    out: dict[int, int] = {}
    for s, x in a.items():
        for t, y in b.items():
            for u in range(abs(s - t), s + t + 1, 2):
                out[u] = out.get(u, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _r_add(a: dict[int, int], b: dict[int, int], sign: int = 1) -> dict[int, int]:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


@dataclass
class ThetaElem:
    """Element of R[chi]/(chi^n - 1), R = Rep SL(2), optionally reduced modulo
    1 + chi + ... + chi^{n-1}.  ``coeffs[a][s]`` is the coefficient of chi^a W_s."""

    n: int
    coeffs: dict[int, dict[int, int]]
    reduced: bool = False

    def __post_init__(self):
        clean = {}
        for a, row in self.coeffs.items():
            row = {s: v for s, v in row.items() if v}
            if row:
                a %= self.n
                clean[a] = _r_add(clean.get(a, {}), row)
                if not clean[a]:
                    del clean[a]
        self.coeffs = clean

    def reduce(self) -> "ThetaElem":
        if self.reduced:
            return self
        top = self.coeffs.get(self.n - 1, {})
        out = {}
        for a in range(self.n - 1):
            row = _r_add(self.coeffs.get(a, {}), top, -1)
            if row:
                out[a] = row
        return ThetaElem(self.n, out, True)

    def __mul__(self, other: "ThetaElem") -> "ThetaElem":
        if self.n != other.n:
            raise ValueError("different orders")
        out: dict[int, dict[int, int]] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                c = (a + b) % self.n
                out[c] = _r_add(out.get(c, {}), _r_mul(x, y))
        res = ThetaElem(self.n, out)
        return res.reduce() if self.reduced or other.reduced else res

    def __add__(self, other: "ThetaElem") -> "ThetaElem":
        out = {a: dict(r) for a, r in self.coeffs.items()}
        for a, r in other.coeffs.items():
            out[a] = _r_add(out.get(a, {}), r)
        res = ThetaElem(self.n, out)
        return res.reduce() if self.reduced or other.reduced else res

    def scale(self, k: int) -> "ThetaElem":
        return ThetaElem(self.n, {a: {s: k * v for s, v in r.items()} for a, r in self.coeffs.items()}, self.reduced)

    def __eq__(self, other):
        if not isinstance(other, ThetaElem) or self.n != other.n:
            return NotImplemented
        if self.reduced or other.reduced:
            return self.reduce().coeffs == other.reduce().coeffs
        return self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not (self.reduce().coeffs if self.reduced else self.coeffs)

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for a in sorted(self.coeffs):
            for s in sorted(self.coeffs[a]):
                v = self.coeffs[a][s]
                coef = "" if v == 1 else "-" if v == -1 else f"{v}*"
                terms.append(f"{coef}chi^{a}*W{s}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"ThetaElem({self.format()}{', reduced' if self.reduced else ''})"


def theta_unit(n: int) -> ThetaElem:
    return ThetaElem(n, {0: {0: 1}})


def theta(x: QObject, reduced: bool = True) -> ThetaElem:
    """Weight-count formula: s_r = #{k in [0, d-1] : k = r mod n}, and
    theta = sum_r chi^{m-r} W_{s_r - 1}."""
    if x.n is None:
        raise GenericOrder("theta needs q of finite order")
    n = x.n
    coeffs: dict[int, dict[int, int]] = {}
    for r in range(n):
        s = len(range(r, x.d, n))
        if s:
            a = (x.m - r) % n
            coeffs[a] = _r_add(coeffs.get(a, {}), {s - 1: 1})
    t = ThetaElem(n, coeffs)
    return t.reduce() if reduced else t


def r_element(**terms: int) -> dict[int, int]:
    return {int(k[1:]): v for k, v in terms.items() if v}


# -- explicit matrices -----------------------------------------------------------------


@dataclass
class QField:
    """A field with a chosen q: exact (Q(zeta_n) or Q(t)) or a prime-field model
    GF(l) with q an element of order n (or of large order for generic q)."""

    F: ExactField
    n: int | None
    q: object  # element in the array representation of F (code or object)
    kind: str

    def qpow(self, k: int):
        F = self.F
        if isinstance(F, FiniteField):
            e = k % (F.p - 1)
            return int(pow(int(self.q), e, F.p))
        if isinstance(F, CyclotomicField):
            return F.zeta_power(k)
        return F.t_power(k)


def _primes_one_mod(m: int, start: int, count: int) -> list[int]:
    out = []
    x = start - (start % m) + 1
    while len(out) < count:
        if x > start and is_prime(x):
            out.append(x)
        x += m
    return out


def _primitive_root(p: int) -> int:
    fac = set()
    n = p - 1
    d = 2
    while d * d <= n:
        while n % d == 0:
            fac.add(d)
            n //= d
        d += 1
    if n > 1:
        fac.add(n)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fac):
            return g
    raise AssertionError("no primitive root")


def qfield(n: int | None, mode: str = "modular", index: int = 0) -> QField:
    """``mode``: 'exact' for Q(zeta_n) / Q(t), 'modular' for the index-th prime model."""
    if mode == "exact":
        if n is None:
            F = RationalFunctionField()
            return QField(F, None, F.t(), "rational-functions")
        F = CyclotomicField(n)
        return QField(F, n, F.zeta(), "cyclotomic")
    step = n if n is not None else 2
    p = _primes_one_mod(step, 1_000_000, index + 1)[index]
    g = _primitive_root(p)
    q = g if n is None else pow(g, (p - 1) // n, p)
    return QField(GF(p), n, q, f"GF({p})")


def chain_matrices(x: QObject, K: QField):
    """(g, E, weights) on the basis b_0..b_{d-1}, bottom to top, E b_k = b_{k+1}."""
    F = K.F
    w = x.weights()
    G = F.zeros((x.d, x.d))
    E = F.zeros((x.d, x.d))
    for k in range(x.d):
        G[k, k] = K.qpow(w[k])
        if k + 1 < x.d:
            E[k + 1, k] = F.one_code
    return G, E, w


def tensor_matrices(x: QObject, y: QObject, K: QField):
    F = K.F
    G1, E1, w1 = chain_matrices(x, K)
    G2, E2, w2 = chain_matrices(y, K)
    from .modrep import kron

    G = kron(F, G1, G2)
    E = F.add(kron(F, E1, G2), kron(F, F.eye(x.d), E2))
    w = [a + b for a in w1 for b in w2]
    return G, E, w


# -- oracle ------------------------------------------------------------------------------


@dataclass
class OracleResult:
    x: QObject
    y: QObject
    summands: Counter  # non-negligible QObject -> multiplicity
    negligible: Counter  # negligible QObject -> multiplicity
    field_kind: str

    @property
    def negligible_dim(self) -> int:
        return sum(o.d * k for o, k in self.negligible.items())

    def decomposition(self) -> list[QObject]:
        return sorted(self.summands.elements())

    def all_summands(self) -> Counter:
        return self.summands + self.negligible


def _is_nilpotent(F, E) -> bool:
    d = E.shape[0]
    P = E
    steps = max(1, math.ceil(math.log2(d))) if d > 1 else 1
    for _ in range(steps):
        P = F.matmul(P, P)
    return not np.any(~F.is_zero(P)) if d else True


def classify_chains(F, E, weights: Sequence[int], n: int | None) -> Counter:
    """Multiset of (bottom weight, length) of the graded Jordan chains of a nilpotent
    degree-one operator E, from ranks of E^k between weight spaces:
    #chains(bottom a, length k+1) = c(a,k) - c(a-1,k+1) - c(a,k+1) + c(a-1,k+2)."""
    d = len(weights)
    cls = [w % n for w in weights] if n is not None else list(weights)
    classes = sorted(set(cls))
    c: dict[tuple[int, int], int] = {}
    for a in classes:
        cols = [i for i in range(d) if cls[i] == a]
        X = F.eye(d)[:, cols]
        k = 0
        while True:
            r = rank(F, X)
            c[(a, k)] = r
            if r == 0:
                break
            X = F.matmul(E, X)
            k += 1

    def cc(a, k):
        if n is not None:
            a %= n
        return c.get((a, k), 0)

    out: Counter = Counter()
    for a in classes:
        for k in range(d):
            if cc(a, k) == 0:
                break
            v = cc(a, k) - cc(a - 1, k + 1) - cc(a, k + 1) + cc(a - 1, k + 2)
            if v < 0:
                raise AssertionError("negative chain count: operator is not a graded nilpotent")
            if v:
                out[(a, k + 1)] += v
    if sum(L * v for (_, L), v in out.items()) != d:
        raise AssertionError("chain lengths do not add up to the dimension")
    return out


def oracle_tensor(x: QObject, y: QObject, mode: str = "modular", models: int = 2) -> OracleResult:
    """Decompose V(x) (x) V(y) from explicit matrices.

    mode 'exact' works over Q(zeta_n) or Q(t); 'modular' works over ``models``
    prime-field models and requires them to agree.
    """
    if x.n != y.n:
        raise ValueError("objects for different q")
    if x.d * y.d > ORACLE_DIM_CAP:
        raise DimCapExceeded(f"tensor dimension {x.d * y.d} exceeds {ORACLE_DIM_CAP}")
    n = x.n
    fields = [qfield(n, "exact")] if mode == "exact" else [qfield(n, "modular", i) for i in range(models)]
    results = []
    for K in fields:
        G, E, w = tensor_matrices(x, y, K)
        if not _is_nilpotent(K.F, E):
            raise AssertionError("tensor action of E is not nilpotent")
        chains = classify_chains(K.F, E, w, n)
        results.append(chains)
    if any(r != results[0] for r in results[1:]):
        raise AssertionError("prime-field models disagree; ranks are not generic")
    summ: Counter = Counter()
    negl: Counter = Counter()
    for (bottom, L), v in results[0].items():
        obj = QObject(n, bottom + L - 1, L)
        (negl if obj.negligible else summ)[obj] += v
    return OracleResult(x, y, summ, negl, fields[0].kind if mode == "exact" else "modular")


def oracle_tensor_decomp(x: QObject, y: QObject, index: int = 0) -> Counter:
    """Independent route: Krull-Schmidt decomposition of the two-operator module
    over a prime-field model; each summand identified by its length and the
    g-eigenvalue on the socle of E."""
    from .decomp import OpModule, decompose
    from .exact_linalg.linalg import kernel

    K = qfield(x.n, "modular", index)
    F = K.F
    G, E, _ = tensor_matrices(x, y, K)
    dec = decompose(OpModule(F, [G, E], prefix="Hq"))
    p = F.p
    span = x.n if x.n is not None else 4 * (x.d + y.d + abs(x.m) + abs(y.m)) + 8
    logs = {}
    for e in range(-span, span + 1):
        logs.setdefault(pow(int(K.q), e % (p - 1), p), e)
    out: Counter = Counter()
    for s in dec.parts:
        mod = s.module
        g, e = mod.ops
        soc = kernel(F, e)
        if soc.shape[1] != 1:
            raise AssertionError("summand is not a single chain")
        v = soc[:, 0]
        i = int(np.flatnonzero(v)[0])
        lam = int(F.mul(F.matmul(g, soc)[i, 0], F.inv(v[i])))
        out[QObject(x.n, logs[lam], mod.dim)] += 1
    return out


def theta_oracle(x: QObject, mode: str = "exact") -> ThetaElem:
    """Unreduced theta read off the matrices: for each g-eigenspace, the Jordan
    type of E^n restricted to it (the restriction to the subalgebra <g, E^n>)."""
    if x.n is None:
        raise GenericOrder("theta needs q of finite order")
    K = qfield(x.n, mode)
    F = K.F
    G, E, w = chain_matrices(x, K)
    En = F.eye(x.d)
    for _ in range(x.n):
        En = F.matmul(E, En)
    coeffs: dict[int, dict[int, int]] = {}
    n = x.n
    for a in sorted(set(v % n for v in w)):
        idx = [i for i in range(x.d) if w[i] % n == a]
        B = En[np.ix_(idx, idx)]
        # Jordan type from ranks of powers
        ranks = [len(idx)]
        P = F.eye(len(idx))
        while ranks[-1]:
            P = F.matmul(B, P)
            ranks.append(rank(F, P))
        ranks.append(0)
        for k in range(1, len(ranks) - 1):
            cnt = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]
            if cnt:
                coeffs.setdefault(a, {})
                coeffs[a][k - 1] = coeffs[a].get(k - 1, 0) + cnt
    return ThetaElem(n, coeffs)


def qdim_exact(x: QObject):
    """Pivotal dimension in Q(zeta_n) (or Q(t) for generic q)."""
    K = qfield(x.n, "exact")
    q = K.F.zeta() if x.n is not None else K.F.t()
    return qdim(x, q)


# -- ring extraction -----------------------------------------------------------------------


def default_generators(n: int | None) -> list[QObject]:
    if n is None:
        return [QObject(GENERIC, 1, 1), QObject(GENERIC, 0, 2)]
    return [QObject(n, 1, 1), QObject(n, 0, 2), QObject(n, n - 1, n - 1), QObject(n, 0, n + 1)]


@dataclass
class QRun:
    n: int | None
    level: int
    simples: list[QObject]
    lengths: list[int]
    products: dict = dc_field(default_factory=dict)  # (i, j) -> {k: mult}
    negligible_dims: dict = dc_field(default_factory=dict)
    oracle: dict = dc_field(default_factory=dict)  # (i, j) -> OracleResult
    skipped: list = dc_field(default_factory=list)
    generators: list = dc_field(default_factory=list)

    def index(self, x: QObject) -> int:
        return self.simples.index(x)

    def ring(self) -> br.BasedRing:
        r = len(self.simples)
        N = np.zeros((r, r, r), dtype=np.int64)
        C = np.zeros((r, r), dtype=bool)
        for (i, j), row in self.products.items():
            for k, v in row.items():
                N[i, j, k] = N[j, i, k] = v
            C[i, j] = C[j, i] = True
        dual = [self.simples.index(x.dual()) for x in self.simples]
        name = f"Cq(n={self.n if self.n is not None else 'generic'})<={self.level}"
        return br.BasedRing([x.label for x in self.simples], N, dual, 0, C, True, self.level, name)


def _layered_bfs(unit, gens: Sequence, dual, multiply, level: int, size=None, max_size=None):
    """Shared BFS: elements registered with minimal word length; pair (i, j) is
    multiplied iff len_i + len_j <= level.  ``multiply`` returns a Counter of
    elements.  Returns (elements, lengths, products, skipped)."""
    elems = [unit]
    lengths = [0]
    pos = {unit: 0}

    def reg(x, L):
        if x not in pos:
            pos[x] = len(elems)
            elems.append(x)
            lengths.append(L)
        return pos[x]

    for g in gens:
        for h in (g, dual(g)):
            reg(h, 1)
    products: dict = {}
    skipped = []
    for s in range(1, level + 1):
        for j in range(len(elems)):
            for i in range(j + 1):
                if (i, j) in products or lengths[i] + lengths[j] != s:
                    continue
                if size is not None and max_size is not None and size(elems[i]) * size(elems[j]) > max_size:
                    skipped.append((i, j))
                    continue
                row: dict[int, int] = {}
                for z, v in multiply(elems[i], elems[j]).items():
                    k = reg(z, s)
                    row[k] = row.get(k, 0) + v
                products[(i, j)] = row
    return elems, lengths, products, skipped


def _qrun(n: int | None, level: int, gens: Sequence[QObject] | None, mode: str) -> QRun:
    gens = list(gens or default_generators(n))
    unit = QObject(n, 0, 1)
    cache: dict = {}

    def mult(a, b):
        res = oracle_tensor(a, b, mode=mode)
        cache[(a, b)] = res
        return res.summands

    elems, lengths, products, skipped = _layered_bfs(
        unit, gens, QObject.dual, mult, level, size=lambda o: o.d, max_size=ORACLE_DIM_CAP)
    run = QRun(n, level, elems, lengths, products, generators=gens, skipped=skipped)
    for (i, j) in products:
        res = cache.get((elems[i], elems[j]))
        if res is not None:
            run.oracle[(i, j)] = res
            run.negligible_dims[(i, j)] = res.negligible_dim
    return run


def target_ring(n: int | None, level: int) -> tuple[br.BasedRing, dict]:
    """Full (level-padded) target ring and the images of the default generators."""
    if n is None:
        raise GenericOrder("use gl2_target for generic q")
    K = 2 * level + 2
    T = br.product(br.product(br.group_ring([n]), br.ver_p(n)), br.pgl2_trunc(K))
    a = ((-1 - n) // 2) % n
    images = {
        QObject(n, 1, 1): "g(1)*L1*U1",
        QObject(n, 0, 2): f"g({a})*L2*U1",
        QObject(n, n - 1, n - 1): f"g(0)*L{n - 1}*U1",
        QObject(n, 0, n + 1): f"g(0)*L{n - 1}*U3",
    }
    return T, images


def _truncate_by_bfs(T: br.BasedRing, gen_idx: Sequence[int], level: int) -> tuple[br.BasedRing, list[int]]:
    def mult(i, j):
        if not T.complete[i, j]:
            raise BudgetExceeded("target padding too small for this level")
        return Counter({int(k): int(T.N[i, j, k]) for k in np.flatnonzero(T.N[i, j])})

    elems, lengths, products, _ = _layered_bfs(T.unit, gen_idx, lambda i: T.dual[i], mult, level)
    r = len(elems)
    N = np.zeros((r, r, r), dtype=np.int64)
    C = np.zeros((r, r), dtype=bool)
    for (i, j), row in products.items():
        for k, v in row.items():
            N[i, j, k] = N[j, i, k] = v
        C[i, j] = C[j, i] = True
    pos = {e: t for t, e in enumerate(elems)}
    dual = [pos[T.dual[e]] for e in elems]
    return br.BasedRing([T.basis[e] for e in elems], N, dual, 0, C, True, level, f"{T.name}<={level}"), elems


def gl2_target(level: int, gens: Sequence[QObject]) -> tuple[br.BasedRing, list]:
    unit = (0, 0)

    def dual(w):
        return (-w[1], -w[0])

    def mult(a, b):
        return Counter(gl2_fusion(a, b))

    elems, lengths, products, _ = _layered_bfs(unit, [g.gl_weight for g in gens], dual, mult, level)
    r = len(elems)
    N = np.zeros((r, r, r), dtype=np.int64)
    C = np.zeros((r, r), dtype=bool)
    for (i, j), row in products.items():
        for k, v in row.items():
            N[i, j, k] = N[j, i, k] = v
        C[i, j] = C[j, i] = True
    pos = {e: t for t, e in enumerate(elems)}
    R = br.BasedRing([f"({a},{b})" for a, b in elems], N, [pos[dual(e)] for e in elems], 0, C, True, level,
                     f"GL2<={level}")
    return R, elems


@dataclass
class QRingReport:
    n: int | None
    level: int
    run: QRun
    ring: br.BasedRing
    target: br.BasedRing
    iso: dict | None
    nu_ok: bool | None
    theta_ok: bool | None
    qdim_ok: bool | None
    theta_injective: bool | None
    problems: list

    @property
    def verdict(self) -> bool:
        checks = [self.iso is not None] + [c for c in (self.nu_ok, self.theta_ok, self.qdim_ok,
                                                         self.theta_injective) if c is not None]
        return all(checks) and not self.run.skipped


def extract_ring(n: int | None, level: int = 4, gens: Sequence[QObject] | None = None,
                 mode: str = "modular", timeout: float = 120.0) -> QRingReport:
    """BFS over oracle products up to word length ``level`` and comparison with
    Z[Z/n] x Ver_q x Rep PGL(2) (or Rep GL_q(2) for generic q)."""
    if n is not None and (n % 2 == 0 or n < 3):
        raise ValueError("only odd n >= 3 is implemented; the even case is out of scope")
    if level > 6:
        raise BudgetExceeded("level above 6 is outside the supported range")
    run = _qrun(n, level, gens, mode)
    R = run.ring()
    problems: list[str] = []
    if run.skipped:
        problems.append(f"{len(run.skipped)} products exceed the oracle dimension cap")
    if n is None:
        target, elems = gl2_target(level, run.generators)
        pos = {e: t for t, e in enumerate(elems)}
        pins = {run.index(g): pos[g.gl_weight] for g in run.generators}
    else:
        T, images = target_ring(n, level)
        gen_idx = [T.index(images[g]) for g in run.generators]
        target, elems = _truncate_by_bfs(T, gen_idx, level)
        pos = {e: t for t, e in enumerate(elems)}
        pins = {run.index(g): pos[T.index(images[g])] for g in run.generators}
    iso = br.iso_search(R, target, pins=pins, timeout=timeout)
    if iso is None:
        problems.append("no isomorphism with the target truncation")
    nu_ok = theta_ok = qdim_ok = inj = None
    if n is not None:
        nu_ok, theta_ok, qdim_ok = True, True, True
        th = [theta(x) for x in run.simples]
        qd = [qdim_exact(x) for x in run.simples]
        F = CyclotomicField(n)
        for (i, j), row in run.products.items():
            X, Y = run.simples[i], run.simples[j]
            for k in row:
                if nu(run.simples[k]) != (nu(X) + nu(Y)) % (2 * n):
                    nu_ok = False
                    problems.append(f"nu not additive on {X}x{Y}")
            lhs = th[i] * th[j]
            rhs = ThetaElem(n, {}, True)
            acc = F.zero
            for k, v in row.items():
                rhs = rhs + th[k].scale(v)
                acc = acc + qd[k] * v
            res = run.oracle.get((i, j))
            if res is not None:
                for z, v in res.negligible.items():
                    if not theta(z).is_zero():
                        theta_ok = False
                        problems.append(f"negligible summand {z} has nonzero theta")
            if lhs != rhs:
                theta_ok = False
                problems.append(f"theta not multiplicative on {X}x{Y}")
            if qd[i] * qd[j] != acc:
                qdim_ok = False
                problems.append(f"qdim not multiplicative on {X}x{Y}")
        inj = theta_injective([x for x in run.simples if nu(x) == 0])
        if not inj:
            problems.append("theta is not injective on the nu = 0 part")
    return QRingReport(n, level, run, R, target, iso, nu_ok, theta_ok, qdim_ok, inj, problems)


def theta_injective(objs: Iterable[QObject]) -> bool:
    """Reduced theta images of distinct simples are linearly independent over Q."""
    from fractions import Fraction

    from .exact_linalg.fields import Rationals

    objs = list(objs)
    if not objs:
        return True
    rows = [theta(x).coeffs for x in objs]
    keys = sorted({(a, s) for r in rows for a, row in r.items() for s in row})
    Q = Rationals()
    M = Q.asarray([[Fraction(r.get(a, {}).get(s, 0)) for (a, s) in keys] for r in rows])
    return rank(Q, M) == len(objs)


def theta_table(objs: Iterable[QObject]) -> list[dict]:
    return [{"object": x.label, "theta": theta(x, reduced=False).format(), "reduced": theta(x).format(),
             "nu": nu(x)} for x in objs]
