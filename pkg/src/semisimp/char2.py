"""Arithmetic behind the semisimplified tilting categories of GL(n), SL(n), PGL(n)
in characteristic 2: Lucas' theorem, parity facts, and the pointed rings Z^s."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from . import basedring as br
from .exact_linalg.fields import is_prime


def lucas_binom(a: int, b: int, p: int) -> int:
    """C(a, b) mod p as the product of digitwise binomials."""
    if a < 0 or b < 0:
        raise ValueError("lucas_binom needs a, b >= 0")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    out = 1
    while a or b:
        ai, bi = a % p, b % p
        if bi > ai:
            return 0
        out = out * math.comb(ai, bi) % p
        a //= p
        b //= p
    return out % p


@dataclass(frozen=True)
class BinaryProfile:
    n: int
    digits: tuple[int, ...]  # m_1 < ... < m_s
    partial: tuple[int, ...]  # n_j = 2^{m_1} + ... + 2^{m_j}

    @classmethod
    def of(cls, n: int) -> "BinaryProfile":
        if n < 1:
            raise ValueError("n must be positive")
        digits = tuple(i for i in range(n.bit_length()) if n >> i & 1)
        partial = tuple(sum(1 << m for m in digits[: j + 1]) for j in range(len(digits)))
        return cls(n, digits, partial)

    @property
    def s(self) -> int:
        return len(self.digits)


def multinomial_odd(l: int) -> bool:
    """Parity of l! / (2^{k_1}! ... 2^{k_r}!) over the binary parts of l, as the
    product C(l, 2^{k_1}) C(l - 2^{k_1}, 2^{k_2}) ... computed by Lucas."""
    if l < 1:
        raise ValueError("l must be positive")
    rest = l
    acc = 1
    for k in BinaryProfile.of(l).digits:
        acc *= lucas_binom(rest, 1 << k, 2)
        rest -= 1 << k
    return acc % 2 == 1


@dataclass
class ParityReport:
    n: int
    profile: BinaryProfile
    claims: dict = dc_field(default_factory=dict)  # claim name -> bool
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.claims.values())


def parity_claims(n: int) -> ParityReport:
    """Parity facts used for invertibility and independence of the X_{m_j}."""
    if not 1 <= n <= 4096:
        raise ValueError("parity_claims supports 1 <= n <= 4096")
    prof = BinaryProfile.of(n)
    rep = ParityReport(n, prof)

    def odd(a, b):
        return lucas_binom(a, b, 2) == 1

    # wedge powers of the complement are even dimensional
    ok = True
    for nj in prof.partial:
        for i in range(1, nj + 1):
            if odd(n - nj, i):
                ok = False
                rep.failures.append(f"C({n - nj},{i}) is odd")
    rep.claims["complement wedges even"] = ok
    # C(n, 2^m) odd exactly for the binary digits of n
    ok = True
    for m in range(n.bit_length()):
        if odd(n, 1 << m) != (m in prof.digits):
            ok = False
            rep.failures.append(f"C({n},{1 << m}) parity disagrees with digit {m}")
    rep.claims["odd fundamental wedges are the binary digits"] = ok
    # independence: restriction to GL(r) x GL(n-r), r = 2^{m_l} + ... + 2^{m_s}
    ok = True
    for l in range(prof.s):
        r = sum(1 << m for m in prof.digits[l:])
        for j in range(l + 1):
            e = 1 << prof.digits[j]
            odd_i = [i for i in range(e + 1) if odd(r, i) and odd(n - r, e - i)]
            expect = [e] if j == l else [0]
            if odd_i != expect:
                ok = False
                rep.failures.append(f"l={l + 1}, j={j + 1}: odd summands at i={odd_i}, expected {expect}")
    rep.claims["unique odd summand after restriction"] = ok
    # the exterior power splitting into binary parts
    ok = all(multinomial_odd(l) for l in range(1, n + 1))
    rep.claims["binary multinomials odd"] = ok
    if not ok:
        rep.failures.append("some binary multinomial is even")
    return rep


@dataclass
class Char2Ring:
    n: int
    variant: str
    profile: BinaryProfile
    group_rank: int
    ring: br.BasedRing
    # exponent vector of each X_{m_j} in the chosen lattice basis (GL, SL) or the
    # lattice basis written in the X_{m_j} (PGL)
    coordinates: dict
    relation: str


def char2_ring(n: int, variant: str = "GL", L: int = 3) -> Char2Ring:
    """Group ring of Z^s (GL), Z^s / <X_{m_1}...X_{m_s}> (SL) or the sublattice
    sum 2^{m_i} n_i = 0 (PGL), truncated to words of length <= L."""
    if L > 6:
        raise ValueError("truncation level must be at most 6")
    prof = BinaryProfile.of(n)
    s = prof.s
    variant = variant.upper()
    labels = [f"X{m}" for m in prof.digits]
    if variant == "GL":
        k = s
        coords = {lab: tuple(int(i == j) for i in range(s)) for j, lab in enumerate(labels)}
        relation = "none"
    elif variant == "SL":
        k = s - 1
        coords = {lab: tuple(int(i == j) for i in range(k)) for j, lab in enumerate(labels[:-1])}
        coords[labels[-1]] = tuple(-1 for _ in range(k))
        relation = "*".join(labels) + " = 1"
    elif variant == "PGL":
        k = s - 1
        m1 = prof.digits[0]
        # basis v_j = e_j - 2^{m_j - m_1} e_1 of the kernel of n -> sum 2^{m_i} n_i
        coords = {}
        for j in range(1, s):
            v = [0] * s
            v[0] = -(1 << (prof.digits[j] - m1))
            v[j] = 1
            coords[f"v{j}"] = tuple(v)
        relation = " + ".join(f"{1 << m}*n{i + 1}" for i, m in enumerate(prof.digits)) + " = 0"
    else:
        raise ValueError(f"unknown variant {variant!r}")
    R = br.group_ring([0] * k, L) if k else br.group_ring([1])
    R.name = f"Tilt({variant}{n}) char 2, <= {L}"
    return Char2Ring(n, variant, prof, k, R, coords, relation)
