"""Univariate polynomials over finite fields and their factorization.

Square-free decomposition, distinct-degree splitting, then Cantor-Zassenhaus
equal-degree splitting (trace map in characteristic 2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import ExactField, FiniteField

__all__ = ["UniPoly", "factor", "poly_from_roots"]


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    return c[: nz[-1] + 1] if nz.size else c[:0]


@dataclass(frozen=True, eq=False)
class UniPoly:
    """Polynomial over a finite field; ``coeffs`` low to high, trailing zeros stripped."""

    field: FiniteField
    coeffs: np.ndarray

    def __init__(self, field: FiniteField, coeffs):
        c = _trim(field.asarray(np.atleast_1d(np.asarray(coeffs, dtype=np.int64))))
        c.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", c)

    # -- basics
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def lead(self) -> int:
        return int(self.coeffs[-1])

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and other.field == self.field
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs.tolist())))

    def __repr__(self):
        F = self.field
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = int(self.coeffs[i])
            if not c:
                continue
            cs = F.format(c)
            if F.r > 1 and "+" in cs:
                cs = f"({cs})"
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mon and c == 1:
                terms.append(mon)
            else:
                terms.append(cs + ("*" + mon if mon else ""))
        return " + ".join(terms)

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field, c):
        return cls(field, [c])

    # -- arithmetic
    def __add__(self, other: "UniPoly") -> "UniPoly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, np.int64)
        b = np.zeros(n, np.int64)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        return UniPoly(F, F.add(a, b))

    def __neg__(self):
        return UniPoly(self.field, self.field.neg(self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, (int, np.integer)):
            return UniPoly(F, F.mul(self.coeffs, int(other)))
        a, b = self.coeffs, other.coeffs
        if not len(a) or not len(b):
            return UniPoly(F, [])
        if F.r == 1 and min(len(a), len(b)) * (F.p - 1) ** 2 < 2 ** 62:
            return UniPoly(F, np.convolve(a, b) % F.p)
        out = np.zeros(len(a) + len(b) - 1, np.int64)
        for i, x in enumerate(a):
            if x:
                out[i : i + len(b)] = F.add(out[i : i + len(b)], F.mul(int(x), b))
        return UniPoly(F, out)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly(self.field, self.field.mul(self.coeffs, self.field.inv(self.lead)))

    def divmod(self, other: "UniPoly"):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = self.coeffs.copy()
        db = other.degree
        if len(r) - 1 < db:
            return UniPoly(F, []), self
        inv = int(F.inv(other.lead))
        b = other.coeffs
        q = np.zeros(len(r) - db, np.int64)
        for s in range(len(r) - 1 - db, -1, -1):
            c = r[s + db]
            if not c:
                continue
            c = int(F.mul(int(c), inv))
            q[s] = c
            r[s : s + db + 1] = F.sub(r[s : s + db + 1], F.mul(c, b))
        return UniPoly(F, q), UniPoly(F, r[:db] if db else r[:0])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def derivative(self) -> "UniPoly":
        F = self.field
        if self.degree < 1:
            return UniPoly(F, [])
        k = np.arange(1, len(self.coeffs)) % F.p
        # integer multiples in the prime subfield
        return UniPoly(F, F.mul(self.coeffs[1:], F.asarray(k) if F.r == 1 else k))

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, mod: "UniPoly") -> "UniPoly":
        result = UniPoly.const(self.field, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in self.coeffs[::-1]:
            acc = int(F.add(F.mul(acc, x), int(c)))
        return acc

    def compose_matrix(self, M: np.ndarray) -> np.ndarray:
        """Evaluate at a square matrix (Horner)."""
        F = self.field
        n = M.shape[0]
        acc = F.zeros((n, n))
        for c in self.coeffs[::-1]:
            acc = F.matmul(acc, M)
            acc[np.arange(n), np.arange(n)] = F.add(acc[np.arange(n), np.arange(n)], int(c))
        return acc


def poly_from_roots(field: FiniteField, roots) -> UniPoly:
    out = UniPoly.const(field, 1)
    for r in roots:
        out = out * UniPoly(field, [int(field.neg(r)), 1])
    return out


def _pth_root(f: UniPoly) -> UniPoly:
    """g with g(x)^p = f(x) when f' = 0."""
    F = f.field
    c = f.coeffs[:: F.p]
    # a -> a^(p^(r-1)) inverts Frobenius on GF(p^r)
    e = F.p ** (F.r - 1)
    roots = np.array([F._scalar_pow(int(a), e) for a in c], np.int64)
    return UniPoly(F, roots)


def _squarefree(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Square-free decomposition of a monic polynomial."""
    F = f.field
    out: list[tuple[UniPoly, int]] = []
    if f.degree < 1:
        return out
    d = f.derivative()
    if d.is_zero():
        return [(g, m * F.p) for g, m in _squarefree(_pth_root(f))]
    c = f.gcd(d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((g, m * F.p) for g, m in _squarefree(_pth_root(c.monic())))
    return out


def _distinct_degree(f: UniPoly) -> list[tuple[UniPoly, int]]:
    F = f.field
    out = []
    x = UniPoly.x(F)
    h = x % f
    d = 0
    rest = f
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(F.q, rest)
        g = rest.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest.monic(), rest.degree))
    return out


def _equal_degree(f: UniPoly, d: int, rng: np.random.Generator) -> list[UniPoly]:
    F = f.field
    if f.degree == d:
        return [f]
    while True:
        a = UniPoly(F, F.random(rng, f.degree))
        if a.degree < 1:
            continue
        if F.p == 2:
            t = a % f
            acc = t
            for _ in range(F.r * d - 1):
                t = (t * t) % f
                acc = acc + t
            g = f.gcd(acc)
        else:
            g = f.gcd(a.powmod((F.q ** d - 1) // 2, f) - UniPoly.const(F, 1))
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor(f: UniPoly, seed: int = 0) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = np.random.default_rng(seed)
    out: dict[UniPoly, int] = {}
    for g, m in _squarefree(f.monic()):
        for h, d in _distinct_degree(g):
            for irr in _equal_degree(h, d, rng):
                out[irr] = out.get(irr, 0) + m
    return sorted(out.items(), key=lambda t: (t[0].degree, t[0].coeffs.tolist()))
