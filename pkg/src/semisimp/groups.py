"""Small permutation groups: enumeration, Sylow subgroups, normalizers,
coset representatives, p-subgroup classes and a catalog of named groups.

Permutations are tuples of images on ``0..degree-1`` and compose right to
left: ``(a*b)(i) = a(b(i))``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import NotASubgroup, OrderCapExceeded, SylowTooLarge, UnknownName

ORDER_CAP = 10080

Perm = tuple


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(a[i] for i in b)


def perm_inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_order(a: Perm) -> int:
    seen = [False] * len(a)
    order = 1
    for s in range(len(a)):
        if seen[s]:
            continue
        n, x = 0, s
        while not seen[x]:
            seen[x] = True
            x = a[x]
            n += 1
        order = order * n // math.gcd(order, n)
    return order


def from_cycles(cycles: Iterable[Sequence[int]], degree: int, one_based: bool = False) -> Perm:
    img = list(range(degree))
    for cyc in cycles:
        cyc = [c - 1 for c in cyc] if one_based else list(cyc)
        for i, x in enumerate(cyc):
            img[x] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def to_cycles(a: Perm, one_based: bool = False) -> list[list[int]]:
    seen = set()
    out = []
    for s in range(len(a)):
        if s in seen or a[s] == s:
            continue
        cyc, x = [], s
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1 if one_based else x)
            x = a[x]
        out.append(cyc)
    return out


class PermGroup:
    """A permutation group with all elements enumerated.

    Elements are listed breadth first from the identity, each new element
    being ``generator * parent``; ``word_of`` records that spanning tree so
    representation matrices can be built element by element.
    """

    def __init__(self, generators: Sequence[Perm], name: str | None = None, degree: int | None = None):
        gens = [tuple(int(x) for x in g) for g in generators]
        if degree is None:
            degree = len(gens[0]) if gens else 1
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"not a permutation of degree {degree}: {g}")
        self.degree = degree
        self.generators = gens
        self.name = name or f"G{degree}"
        ident = tuple(range(degree))
        elements = [ident]
        index = {ident: 0}
        parent = [(-1, -1)]
        queue = deque([0])
        while queue:
            i = queue.popleft()
            e = elements[i]
            for k, g in enumerate(gens):
                ne = compose(g, e)
                if ne not in index:
                    if len(elements) >= ORDER_CAP:
                        raise OrderCapExceeded(f"group order exceeds {ORDER_CAP}")
                    index[ne] = len(elements)
                    elements.append(ne)
                    parent.append((k, i))
                    queue.append(index[ne])
        self.elements = elements
        self._index = index
        self.word_of = parent
        self.order = len(elements)
        self._arr = np.array(elements, dtype=np.int16).reshape(self.order, degree)

    def __repr__(self):
        return f"PermGroup({self.name}, order={self.order})"

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.degree == other.degree and set(self._index) == set(other._index)

    def __hash__(self):
        return hash((self.degree, self.order, min(self._index)))

    @property
    def generator_names(self) -> list[str]:
        return [f"g{k}" for k in range(len(self.generators))]

    def index(self, perm: Perm) -> int:
        try:
            return self._index[tuple(perm)]
        except KeyError:
            raise NotASubgroup(f"{perm} is not an element of {self.name}") from None

    def contains(self, perm: Perm) -> bool:
        return tuple(perm) in self._index

    def mul(self, i: int, j: int) -> int:
        if self.order <= 2000:
            return int(self.table[i, j])
        return self._index[compose(self.elements[i], self.elements[j])]

    @cached_property
    def table(self) -> np.ndarray:
        """Full multiplication table ``table[i, j] = index(e_i * e_j)``."""
        arr = self._arr.astype(np.int64)
        # encode each permutation as an integer in base `degree`
        base = self.degree ** np.arange(self.degree, dtype=np.int64)[::-1]
        codes = arr @ base
        order = np.argsort(codes)
        sorted_codes = codes[order]
        out = np.empty((self.order, self.order), dtype=np.int32)
        for i in range(self.order):
            prods = arr[i][arr]  # e_i o e_j for all j
            c = prods @ base
            out[i] = order[np.searchsorted(sorted_codes, c)]
        return out

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.array([self._index[perm_inverse(e)] for e in self.elements], dtype=np.int64)

    def element_order(self, i: int) -> int:
        return perm_order(self.elements[i])

    def closure(self, idx: Iterable[int]) -> frozenset:
        gens = [self.elements[i] for i in idx]
        found = {0}
        queue = deque([tuple(range(self.degree))])
        while queue:
            e = queue.popleft()
            for g in gens:
                ne = compose(g, e)
                j = self._index[ne]
                if j not in found:
                    found.add(j)
                    queue.append(ne)
        return frozenset(found)

    def subgroup(self, idx: Iterable[int], name: str | None = None) -> "Subgroup":
        idx = [int(i) for i in idx]
        return Subgroup(self, self.closure(idx), tuple(idx), name)

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)), tuple(self.index(g) for g in self.generators), self.name)

    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([0]), (), "1")

    def conjugate_set(self, x: int, members: Iterable[int]) -> frozenset:
        xe, xi = self.elements[x], perm_inverse(self.elements[x])
        return frozenset(self._index[compose(compose(xe, self.elements[h]), xi)] for h in members)

    def conjugacy_classes(self) -> list[list[int]]:
        seen = set()
        classes = []
        for i in range(self.order):
            if i in seen:
                continue
            e = self.elements[i]
            cls = sorted({self._index[compose(compose(x, e), perm_inverse(x))] for x in self.elements})
            seen.update(cls)
            classes.append(cls)
        return classes

    def left_coset_reps(self, h: "Subgroup") -> list[int]:
        """Minimal element index in each left coset xH, in increasing order."""
        if h.parent is not self:
            raise NotASubgroup("subgroup of a different group")
        hel = [self.elements[k] for k in sorted(h.members)]
        covered = set()
        reps = []
        for i in range(self.order):
            if i in covered:
                continue
            reps.append(i)
            x = self.elements[i]
            for y in hel:
                covered.add(self._index[compose(x, y)])
        return reps


class Subgroup:
    """A subgroup of an enumerated group, stored by element indices."""

    def __init__(self, parent: PermGroup, members: frozenset, gens: tuple, name: str | None = None):
        self.parent = parent
        self.members = frozenset(members)
        self.gens = tuple(gens)
        self.name = name
        self.order = len(self.members)

    def __repr__(self):
        return f"Subgroup({self.name or '?'} of {self.parent.name}, order={self.order})"

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def __hash__(self):
        return hash(self.members)

    def __contains__(self, i: int):
        return i in self.members

    @cached_property
    def group(self) -> PermGroup:
        """The subgroup as a permutation group on the parent's points."""
        gens = [self.parent.elements[i] for i in self.gens]
        if not gens:
            gens = [tuple(range(self.parent.degree))]
            self.gens = (0,)
        g = PermGroup(gens, name=self.name or f"{self.parent.name}_sub{self.order}", degree=self.parent.degree)
        assert g.order == self.order
        return g


# -- subgroup machinery --------------------------------------------------------


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def normalizer(g: PermGroup, h: Subgroup) -> Subgroup:
    """All x with x H x^-1 = H, by testing the generators of H."""
    gens = [g.elements[i] for i in h.gens] or []
    members = []
    for x in range(g.order):
        xe = g.elements[x]
        xi = perm_inverse(xe)
        if all(g._index[compose(compose(xe, s), xi)] in h.members for s in gens):
            members.append(x)
    mem = frozenset(members)
    # generators: greedily pick elements until the closure is everything
    gens_idx: list[int] = []
    cur = frozenset([0])
    for x in members:
        if x not in cur:
            gens_idx.append(x)
            cur = g.closure(gens_idx)
            if cur == mem:
                break
    return Subgroup(g, mem, tuple(gens_idx), f"N({h.name or h.order})")


def sylow(g: PermGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup by iterated extension inside normalizers."""
    target = _p_part(g.order, p)
    if target == 1:
        return g.trivial()
    orders = [g.element_order(i) for i in range(g.order)]
    p_elems = [i for i in range(g.order) if orders[i] > 1 and _p_part(orders[i], p) == orders[i]]
    start = max(p_elems, key=lambda i: (orders[i], -i))
    gens = [start]
    members = g.closure(gens)
    while len(members) < target:
        n = normalizer(g, Subgroup(g, members, tuple(gens)))
        x = next(i for i in sorted(n.members) if i not in members and i in set(p_elems))
        gens.append(x)
        members = g.closure(gens)
    return Subgroup(g, members, tuple(gens), f"Syl{p}")


def is_subgroup(g: PermGroup, members: Iterable[int]) -> bool:
    mem = set(members)
    if 0 not in mem:
        return False
    return all(g.mul(a, b) in mem for a in mem for b in mem)


def p_subgroups_up_to_conjugacy(g: PermGroup, p: int, max_sylow: int = 64) -> list[Subgroup]:
    """Subgroups of one Sylow p-subgroup, one per G-conjugacy class, sorted by order."""
    P = sylow(g, p)
    if P.order > max_sylow:
        raise SylowTooLarge(f"Sylow {p}-subgroup has order {P.order} > {max_sylow}")
    pel = sorted(P.members)
    subs = {frozenset([0]): ()}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for h in frontier:
            gens = subs[h]
            for x in pel:
                if x in h:
                    continue
                k = g.closure(gens + (x,))
                if k not in subs:
                    subs[k] = gens + (x,)
                    nxt.append(k)
        frontier = nxt
    ordered = sorted(subs, key=lambda s: (len(s), sorted(s)))
    reps: list[frozenset] = []
    for h in ordered:
        conj = False
        for r in reps:
            if len(r) != len(h):
                continue
            if any(g.conjugate_set(x, h) == r for x in range(g.order)):
                conj = True
                break
        if not conj:
            reps.append(h)
    return [Subgroup(g, h, subs[h], f"{p}-sub{len(h)}") for h in reps]


def are_conjugate(g: PermGroup, a: Subgroup, b: Subgroup) -> bool:
    if a.order != b.order:
        return False
    return any(g.conjugate_set(x, a.members) == b.members for x in range(g.order))


# -- catalog -------------------------------------------------------------------


def cyclic(n: int) -> PermGroup:
    return PermGroup([tuple((i + 1) % n for i in range(n))], name=f"Z{n}", degree=n)


def dihedral(n: int) -> PermGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return PermGroup([rot, ref], name=f"D{n}", degree=n)


def symmetric(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([(0,)], name="S1", degree=1)
    if n == 2:
        return PermGroup([(1, 0)], name="S2", degree=2)
    return PermGroup(
        [from_cycles([[0, 1]], n), tuple((i + 1) % n for i in range(n))], name=f"S{n}", degree=n
    )


def alternating(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([tuple(range(max(n, 1)))], name=f"A{n}", degree=max(n, 1))
    a = from_cycles([[0, 1, 2]], n)
    b = from_cycles([list(range(n))], n) if n % 2 else from_cycles([list(range(1, n))], n)
    return PermGroup([a, b], name=f"A{n}", degree=n)


def klein_four() -> PermGroup:
    return PermGroup([from_cycles([[0, 1], [2, 3]], 4), from_cycles([[0, 2], [1, 3]], 4)], name="V4", degree=4)


def _primitive_root(p: int) -> int:
    from .exact_linalg.fields import _prime_factors

    if p == 2:
        return 1
    fs = _prime_factors(p - 1)
    return next(g for g in range(2, p) if all(pow(g, (p - 1) // f, p) != 1 for f in fs))


def frobenius(p: int) -> PermGroup:
    """Z/(p-1) acting on Z/p, order p(p-1)."""
    t = tuple((i + 1) % p for i in range(p))
    r = _primitive_root(p)
    m = tuple((r * i) % p for i in range(p))
    return PermGroup([t, m], name=f"F{p * (p - 1)}", degree=p)


def direct_product(a: PermGroup, b: PermGroup) -> PermGroup:
    da, db = a.degree, b.degree
    gens = [tuple(list(g) + list(range(da, da + db))) for g in a.generators]
    gens += [tuple(list(range(da)) + [da + x for x in g]) for g in b.generators]
    return PermGroup(gens, name=f"{a.name}x{b.name}", degree=da + db)


_SHORT = re.compile(r"^(S|A|Z|C|D|F)(\d+)$")


def catalog(name: str) -> PermGroup:
    """Named groups: ``cyclic:n``, ``dihedral:n``, ``symmetric:n``, ``alternating:n``,
    ``klein_four``, ``frobenius:p``, ``direct_product:A;B``; short forms
    ``S5``, ``A4``, ``Z5``/``C5``, ``D5`` (order 10), ``V4``."""
    name = name.strip()
    if name in ("klein_four", "V4"):
        return klein_four()
    m = _SHORT.match(name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind == "F":
            # F20 = frobenius(5): solve p(p-1) = n
            for p in range(2, n + 1):
                if p * (p - 1) == n:
                    return frobenius(p)
            raise UnknownName(f"no Frobenius group of order {n}")
        return {"S": symmetric, "A": alternating, "Z": cyclic, "C": cyclic, "D": dihedral}[kind](n)
    if ":" in name:
        kind, arg = name.split(":", 1)
        if kind == "direct_product":
            parts = arg.split(";")
            if len(parts) != 2:
                raise UnknownName(f"direct_product needs two ';'-separated factors: {name}")
            return direct_product(catalog(parts[0]), catalog(parts[1]))
        builders = {
            "cyclic": cyclic,
            "dihedral": dihedral,
            "symmetric": symmetric,
            "alternating": alternating,
            "frobenius": frobenius,
        }
        if kind in builders:
            try:
                n = int(arg)
            except ValueError:
                raise UnknownName(f"bad parameter in {name!r}") from None
            return builders[kind](n)
    raise UnknownName(f"unknown group name {name!r}")


def group_from_literal(lit) -> PermGroup:
    """Catalog name string, or ``{"generators": [[cycles...], ...]}`` with 1-based points."""
    if isinstance(lit, str):
        return catalog(lit)
    if isinstance(lit, dict) and "generators" in lit:
        gens_cycles = lit["generators"]
        degree = lit.get("degree") or max((x for g in gens_cycles for c in g for x in c), default=1)
        gens = [from_cycles(g, degree, one_based=True) for g in gens_cycles]
        return PermGroup(gens, name=lit.get("name"), degree=degree)
    raise UnknownName(f"cannot parse group literal {lit!r}")


def group_to_literal(g: PermGroup) -> dict:
    return {
        "name": g.name,
        "degree": g.degree,
        "generators": [to_cycles(x, one_based=True) for x in g.generators],
    }
