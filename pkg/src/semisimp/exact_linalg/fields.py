"""Exact scalar fields behind one array-oriented contract.

Every field exposes elementwise ``add``/``sub``/``neg``/``mul``/``inv`` on
numpy arrays, ``matmul``, ``zeros``/``eye`` constructors and ``is_zero``.
Finite fields store elements as packed ``int64`` codes (base-``p`` digits of
the coefficient vector modulo the defining polynomial); characteristic-zero
fields store element objects in ``dtype=object`` arrays.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from ..errors import FieldMismatch, NonPrimeModulus

__all__ = [
    "ExactField",
    "FiniteField",
    "Rationals",
    "CyclotomicField",
    "RationalFunctionField",
    "FieldElem",
    "CycloElem",
    "RatFunc",
    "field_make",
    "is_prime",
    "cyclotomic_poly",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- tiny GF(p)[x] helpers (ints, low->high) used only to pick moduli ---

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(_ptrim(a)) - 1 >= dm:
        c = a[-1] * inv % p
        s = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[s + i] = (a[s + i] - c * mi) % p
    return a


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, m, p)


def _ppowx(e, m, p):
    """x**e mod m."""
    result, base = [1], _pmod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _ptrim(_pmod(a, b, p))
    return a


def _is_irreducible_gfp(f, p) -> bool:
    """Rabin's test over GF(p); f monic, low->high."""
    r = len(f) - 1
    if r == 1:
        return True
    x = [0, 1]
    xq = _ppowx(p ** r, f, p)
    if _ptrim([(u - v) % p for u, v in _zip_pad(xq, x)]):
        return False
    for d in _prime_factors(r):
        h = _ppowx(p ** (r // d), f, p)
        diff = _ptrim([(u - v) % p for u, v in _zip_pad(h, x)])
        if len(_pgcd(f, diff, p)) != 1:
            return False
    return True


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


@lru_cache(maxsize=None)
def _first_irreducible(p: int, r: int) -> tuple[int, ...]:
    # monic x^r + c_{r-1}x^{r-1} + ... + c_0, scanned by the packed value of (c_0..c_{r-1})
    for code in range(p ** r):
        coeffs = [(code // p ** i) % p for i in range(r)] + [1]
        if r > 1 and coeffs[0] == 0:
            continue
        if _is_irreducible_gfp(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # impossible


class ExactField:
    """Common interface; subclasses fill in the arithmetic."""

    kind: str
    characteristic: int

    def zeros(self, shape) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one_code
        return out

    def asarray(self, data) -> np.ndarray:
        raise NotImplementedError

    def is_zero(self, a) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, value):
        raise NotImplementedError


# ---------------------------------------------------------------------------
# finite fields


class FiniteField(ExactField):
    """GF(p^r) with elements packed as integers ``sum c_i p^i``.

    The defining polynomial is the first monic irreducible of degree ``r``
    when coefficient vectors are scanned in increasing packed order.
    """

    kind = "prime-power"

    def __init__(self, p: int, r: int = 1):
        if not is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        if r < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.r = r
        self.q = p ** r
        self.characteristic = p
        self.modulus = _first_irreducible(p, r) if r > 1 else (0, 1)
        self.one_code = 1
        self._pw = np.array([p ** i for i in range(r)], dtype=np.int64)
        if r == 1:
            self._inv = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
        else:
            self._build_tables()
        # reduction of x^u for u < 2r-1 into the basis 1..x^{r-1}
        red = np.zeros((2 * r - 1, r), dtype=np.int64)
        for u in range(2 * r - 1):
            red[u] = self._reduce_monomial(u)
        self._red = red

    def __repr__(self):
        return f"GF({self.p}^{self.r})" if self.r > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (other.p, other.r) == (self.p, self.r)

    def __hash__(self):
        return hash(("GF", self.p, self.r))

    def __reduce__(self):
        return (FiniteField, (self.p, self.r))

    # -- scalar helpers --------------------------------------------------
    def _reduce_monomial(self, u):
        r, p = self.r, self.p
        coeffs = [0] * r
        if u < r:
            coeffs[u] = 1
            return coeffs
        poly = [0] * u + [1]
        return (_pmod(poly, list(self.modulus), p) + [0] * r)[:r]

    def to_coeffs(self, code: int) -> tuple[int, ...]:
        return tuple((int(code) // self.p ** i) % self.p for i in range(self.r))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.r:
            coeffs = _pmod([c % self.p for c in coeffs], list(self.modulus), self.p)
        return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coeffs[: self.r]))

    def _scalar_mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        prod = [0] * (2 * self.r - 1)
        for i, x in enumerate(self.to_coeffs(a)):
            if x:
                for j, y in enumerate(self.to_coeffs(b)):
                    prod[i + j] += x * y
        rem = _pmod([c % self.p for c in prod], list(self.modulus), self.p)
        return self.from_coeffs(rem)

    def _build_tables(self):
        q = self.q
        order = q - 1
        factors = _prime_factors(order)
        gen = None
        for cand in range(2, q):
            # order test by repeated squaring on packed scalars
            ok = True
            for f in factors:
                if self._scalar_pow(cand, order // f) == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        exp = np.zeros(order, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for k in range(order):
            exp[k] = x
            log[x] = k
            x = self._scalar_mul(x, gen)
        self.generator = gen
        self._exp, self._log = exp, log

    def _scalar_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._scalar_mul(result, base)
            base = self._scalar_mul(base, base)
            e >>= 1
        return result

    # -- array arithmetic --------------------------------------------------
    def asarray(self, data) -> np.ndarray:
        a = np.asarray(data, dtype=np.int64)
        if self.r == 1:
            return a % self.p
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise ValueError("packed code out of range")
        return a.copy()

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def is_zero(self, a) -> np.ndarray:
        return np.asarray(a) == 0

    def unpack(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pw) % self.p

    def pack(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.p * self._pw).sum(axis=-1)

    def add(self, a, b):
        if self.r == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return self.pack(self.unpack(a) + self.unpack(b))

    def sub(self, a, b):
        if self.r == 1:
            return (np.asarray(a) - np.asarray(b)) % self.p
        return self.pack(self.unpack(a) - self.unpack(b))

    def neg(self, a):
        if self.r == 1:
            return (-np.asarray(a)) % self.p
        return self.pack(-self.unpack(a))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.r == 1:
            return a * b % self.p
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.r == 1:
            return self._inv[a]
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if A.shape[-1] != B.shape[0]:
            raise ValueError(f"matmul shape mismatch {A.shape} @ {B.shape}")
        if self.r == 1:
            return _modmatmul(A, B, self.p)
        Ad, Bd = self.unpack(A), self.unpack(B)
        r = self.r
        prod = np.zeros(A.shape[:-1] + B.shape[1:] + (2 * r - 1,), dtype=np.int64)
        for s in range(r):
            for t in range(r):
                prod[..., s + t] += _modmatmul(Ad[..., s], Bd[..., t], self.p)
        digits = np.tensordot(prod % self.p, self._red, axes=([-1], [0]))
        return self.pack(digits)

    def trace(self, A):
        A = np.asarray(A)
        acc = np.int64(0)
        for x in np.diagonal(A):
            acc = self.add(acc, x)
        return int(acc)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElem(self, self.from_coeffs(value))
        return FieldElem(self, int(value) % self.p if self.r == 1 else self.from_coeffs([int(value)]))

    def gen(self) -> "FieldElem":
        """The class of ``t`` in GF(p)[t]/(modulus)."""
        return FieldElem(self, self.from_coeffs([0, 1]) if self.r > 1 else 0)

    def elements(self):
        return [FieldElem(self, c) for c in range(self.q)]

    def format(self, code: int) -> str:
        if self.r == 1:
            return str(int(code))
        terms = []
        for i, c in enumerate(self.to_coeffs(code)):
            if c:
                mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(f"{c}{mon}" if c != 1 or i == 0 else mon)
        return "+".join(reversed(terms)) or "0"


def _modmatmul(A, B, p):
    k = A.shape[-1]
    if k * (p - 1) ** 2 < 2 ** 52:
        C = np.matmul(A.astype(np.float64), B.astype(np.float64))
        return np.fmod(C, p).astype(np.int64)
    C = np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
    step = max(1, (2 ** 62) // ((p - 1) ** 2 + 1))
    for s in range(0, k, step):
        C = (C + np.matmul(A[..., s : s + step], B[s : s + step])) % p
    return C


class FieldElem:
    """A single element of a finite field (immutable)."""

    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        self.field = field
        self.code = int(code)

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.code
        if isinstance(other, int):
            return self.field(other).code
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, int(self.field.add(self.code, o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, int(self.field.sub(self.code, o)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, int(self.field.sub(o, self.code)))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, int(self.field.mul(self.code, o)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, int(self.field.neg(self.code)))

    def inverse(self):
        return FieldElem(self.field, int(self.field.inv(self.code)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FieldElem(self.field, int(self.field.inv(o)))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(self.field, self.field._scalar_pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field(other).code
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        return f"{self.field.format(self.code)} in {self.field}"


# ---------------------------------------------------------------------------
# characteristic zero


class _ObjectField(ExactField):
    characteristic = 0

    def zeros(self, shape):
        out = np.empty(shape, dtype=object)
        out.fill(self.zero)
        return out

    @property
    def one_code(self):
        return self.one

    def asarray(self, data):
        arr = np.asarray(data, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx, v in np.ndenumerate(arr):
            out[idx] = self(v)
        return out

    def is_zero(self, a):
        a = np.asarray(a, dtype=object)
        return np.vectorize(lambda x: not x, otypes=[bool])(a) if a.size else np.zeros(a.shape, bool)

    def add(self, a, b):
        return np.asarray(a, dtype=object) + np.asarray(b, dtype=object)

    def sub(self, a, b):
        return np.asarray(a, dtype=object) - np.asarray(b, dtype=object)

    def neg(self, a):
        return -np.asarray(a, dtype=object)

    def mul(self, a, b):
        return np.asarray(a, dtype=object) * np.asarray(b, dtype=object)

    def inv(self, a):
        a = np.asarray(a, dtype=object)
        if a.ndim == 0:
            return self.one / a.item()
        return np.vectorize(lambda x: self.one / x, otypes=[object])(a)

    def matmul(self, A, B):
        A = np.asarray(A, dtype=object)
        B = np.asarray(B, dtype=object)
        if A.shape[-1] != B.shape[0]:
            raise ValueError(f"matmul shape mismatch {A.shape} @ {B.shape}")
        if A.shape[-1] == 0:
            return self.zeros(A.shape[:-1] + B.shape[1:])
        return np.dot(A, B)

    def trace(self, A):
        acc = self.zero
        for x in np.diagonal(np.asarray(A, dtype=object)):
            acc = acc + x
        return acc


class Rationals(_ObjectField):
    kind = "rationals"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, value):
        return Fraction(value)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


# -- cyclotomic --------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low to high."""
    # x^n - 1 = prod_{d | n} Phi_d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _zpoly_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _zpoly_exact_div(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for s in range(len(out) - 1, -1, -1):
        c = a[s + len(b) - 1] // b[-1]
        out[s] = c
        for i, bi in enumerate(b):
            a[s + i] -= c * bi
    assert not any(a), "inexact division"
    return out


class CyclotomicField(_ObjectField):
    """Q(zeta_n) as Q[x]/(Phi_n)."""

    kind = "cyclotomic"

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("cyclotomic order must be >= 1")
        self.n = n
        self.modulus = cyclotomic_poly(n)
        self.degree = len(self.modulus) - 1
        deg = self.degree
        self.zero = CycloElem(self, (0,) * deg, 1)
        self.one = CycloElem(self, (1,) + (0,) * (deg - 1), 1)

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("QQzeta", self.n))

    def __repr__(self):
        return f"QQ(zeta_{self.n})"

    def __reduce__(self):
        return (CyclotomicField, (self.n,))

    def zeta(self) -> "CycloElem":
        return self.zeta_power(1)

    def zeta_power(self, k: int) -> "CycloElem":
        k %= self.n
        deg = self.degree
        if k < deg:
            coeffs = [0] * deg
            coeffs[k] = 1
            return CycloElem(self, tuple(coeffs), 1)
        return CycloElem(self, self._reduce_poly([0] * k + [1]), 1)

    def _reduce_poly(self, poly):
        deg = self.degree
        out = [0] * deg
        # fold exponents mod n first, then reduce the tail with the table
        folded = [0] * max(self.n, deg)
        for u, c in enumerate(poly):
            if c:
                folded[u % self.n] += c
        for u, c in enumerate(folded):
            if not c:
                continue
            if u < deg:
                out[u] += c
            else:
                row = self._row(u)
                for v in range(deg):
                    out[v] += c * row[v]
        return tuple(out)

    @lru_cache(maxsize=None)
    def _row(self, u):
        rem = _qpoly_rem([0] * u + [1], self.modulus)
        return tuple(int(c) for c in rem) + (0,) * (self.degree - len(rem))

    def __call__(self, value):
        if isinstance(value, CycloElem):
            if value.field != self:
                raise FieldMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, (list, tuple)):
            fr = [Fraction(c) for c in value]
            den = math.lcm(*[f.denominator for f in fr]) if fr else 1
            num = [int(f * den) for f in fr]
            return CycloElem(self, self._reduce_poly(num), den)
        fr = Fraction(value)
        coeffs = [fr.numerator] + [0] * (self.degree - 1)
        return CycloElem(self, tuple(coeffs), fr.denominator)

    def to_complex(self, elem: "CycloElem", root_index: int = 1) -> complex:
        z = complex(math.cos(2 * math.pi * root_index / self.n), math.sin(2 * math.pi * root_index / self.n))
        return sum(c * z ** i for i, c in enumerate(elem.num)) / elem.den


def _qpoly_rem(a, m):
    a = [Fraction(c) for c in a]
    m = [Fraction(c) for c in m]
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1] / m[-1]
        s = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[s + i] -= c * mi
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return [int(x) if x.denominator == 1 else x for x in a]


class CycloElem:
    """Element of Q(zeta_n): integer numerators over one positive denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: CyclotomicField, num: tuple[int, ...], den: int = 1):
        if den < 0:
            num, den = tuple(-c for c in num), -den
        g = math.gcd(den, *num)
        if g > 1:
            num, den = tuple(c // g for c in num), den // g
        if not any(num):
            den = 1
        self.field = field
        self.num = tuple(num)
        self.den = den

    def _check(self, other):
        if isinstance(other, CycloElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        if o.den == self.den:
            return CycloElem(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        return CycloElem(
            self.field,
            tuple(a * o.den + b * self.den for a, b in zip(self.num, o.num)),
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        a, b = self.num, o.num
        if not any(a) or not any(b):
            return self.field.zero
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycloElem(self.field, self.field._reduce_poly(prod), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloElem":
        if not any(self.num):
            raise ZeroDivisionError("inverse of zero")
        deg = self.field.degree
        # solve (mult-by-self) * y = 1 over Q
        cols = []
        basis_elem = CycloElem(self.field, self.num, 1)
        for k in range(deg):
            cols.append(list((basis_elem * self.field.zeta_power(k)).num))
        A = [[Fraction(cols[j][i]) for j in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if A[r][c] != 0)
            A[c], A[piv] = A[piv], A[c]
            inv = 1 / A[c][c]
            A[c] = [x * inv for x in A[c]]
            for r in range(deg):
                if r != c and A[r][c] != 0:
                    f = A[r][c]
                    A[r] = [x - f * y for x, y in zip(A[r], A[c])]
        sol = [A[i][deg] * self.den for i in range(deg)]
        return self.field(sol)

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.field == other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.n, self.num, self.den))

    def __bool__(self):
        return any(self.num)

    def __repr__(self):
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.num) if c]
        body = " + ".join(terms) or "0"
        return f"({body})/{self.den}" if self.den != 1 else body


# -- rational functions -------------------------------------------------------


def _zp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zp_add(a, b):
    n = max(len(a), len(b))
    return _zp_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _zp_content(a):
    return math.gcd(*a) if a else 1


def _zp_primitive(a):
    a = _zp_trim(a)
    if not a:
        return a
    c = _zp_content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def _zp_prem(a, b):
    """Pseudo-remainder of a by b over Z."""
    a = _zp_trim(a)
    db = len(b) - 1
    lc = b[-1]
    while a and len(a) - 1 >= db:
        c = a[-1]
        s = len(a) - 1 - db
        a = [x * lc for x in a]
        for i, bi in enumerate(b):
            a[s + i] -= c * bi
        a = _zp_trim(a)
    return a


def _zp_gcd(a, b):
    a, b = _zp_primitive(a), _zp_primitive(b)
    if not a:
        return b or [1]
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _zp_prem(a, b)
        a, b = b, _zp_primitive(r)
    return _zp_primitive(a)


def _zp_divexact(a, b):
    """a / b over Q[t] when the quotient has integer coefficients (b primitive)."""
    a = _zp_trim(a)
    out = [0] * (len(a) - len(b) + 1)
    for s in range(len(out) - 1, -1, -1):
        c, rem = divmod(a[s + len(b) - 1], b[-1])
        if rem:
            return None
        out[s] = c
        for i, bi in enumerate(b):
            a[s + i] -= c * bi
    return out if not any(a) else None


class RatFunc:
    """Element of Q(t): coprime integer polynomials, denominator with positive
    leading coefficient, joint content 1."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=(1,), *, reduced=False):
        num, den = _zp_trim(num), _zp_trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = [1]
        elif not reduced and len(den) > 1:
            g = _zp_gcd(num, den)
            if len(g) > 1:
                num = _zp_divexact(num, g)
                den = _zp_divexact(den, g)
        c = math.gcd(_zp_content(num), _zp_content(den)) if num else _zp_content(den)
        if den[-1] < 0:
            c = -c
        self.field = field
        self.num = tuple(x // c for x in num)
        self.den = tuple(x // c for x in den)

    def _check(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        if o.den == self.den:
            return RatFunc(self.field, _zp_add(list(self.num), list(o.num)), self.den)
        return RatFunc(
            self.field,
            _zp_add(_zp_mul(self.num, o.den), _zp_mul(o.num, self.den)),
            _zp_mul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, [-x for x in self.num], self.den, reduced=True)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return self.field.zero
        return RatFunc(self.field, _zp_mul(self.num, o.num), _zp_mul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.field, self.den, self.num, reduced=True)

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def evaluate(self, x):
        num = sum(c * x ** i for i, c in enumerate(self.num))
        den = sum(c * x ** i for i, c in enumerate(self.den))
        return num / den

    def __repr__(self):
        def fmt(p):
            return " + ".join(f"{c}*t^{i}" if i else str(c) for i, c in enumerate(p) if c) or "0"

        return fmt(self.num) if self.den == (1,) else f"({fmt(self.num)})/({fmt(self.den)})"


class RationalFunctionField(_ObjectField):
    """Q(t) with t transcendental; stands in for a generic q."""

    kind = "rational-functions"

    def __init__(self):
        self.zero = RatFunc(self, [], [1], reduced=True)
        self.one = RatFunc(self, [1], [1], reduced=True)

    def __call__(self, value):
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (list, tuple)):
            fr = [Fraction(c) for c in value]
            den = math.lcm(*[f.denominator for f in fr]) if fr else 1
            return RatFunc(self, [int(f * den) for f in fr], [den])
        fr = Fraction(value)
        return RatFunc(self, [fr.numerator], [fr.denominator])

    def t(self) -> RatFunc:
        return RatFunc(self, [0, 1], [1], reduced=True)

    def t_power(self, k: int) -> RatFunc:
        if k >= 0:
            return RatFunc(self, [0] * k + [1], [1], reduced=True)
        return RatFunc(self, [1], [0] * (-k) + [1], reduced=True)

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField)

    def __hash__(self):
        return hash("QQ(t)")

    def __repr__(self):
        return "QQ(t)"


# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _gf(p, r):
    return FiniteField(p, r)


def field_make(kind: str, **params) -> ExactField:
    """Build an exact field.

    ``kind`` is one of ``prime-power`` (params ``p``, ``r``), ``rationals``,
    ``cyclotomic`` (param ``n``) or ``rational-functions``.
    """
    if kind == "prime-power":
        p, r = int(params["p"]), int(params.get("r", 1))
        if not is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        return _gf(p, r)
    if kind == "rationals":
        return Rationals()
    if kind == "cyclotomic":
        return CyclotomicField(int(params["n"]))
    if kind == "rational-functions":
        return RationalFunctionField()
    raise ValueError(f"unknown field kind {kind!r}")


def GF(p: int, r: int = 1) -> FiniteField:
    return field_make("prime-power", p=p, r=r)


def iter_codes(field: FiniteField) -> Iterable[int]:
    return range(field.q)
