"""Dense exact linear algebra over any :class:`ExactField`.

Matrices are plain numpy arrays in the field's storage format (packed
``int64`` codes for finite fields, ``object`` arrays otherwise).
"""

from __future__ import annotations

import numpy as np

from ..errors import NonSquare, NoSolution, ShapeMismatch
from .fields import ExactField, FiniteField

__all__ = [
    "rref",
    "rank",
    "kernel",
    "solve",
    "inverse",
    "det",
    "charpoly",
    "charpoly_berkowitz",
    "charpoly_hessenberg",
    "row_basis",
    "in_row_span",
    "block_diag",
    "mat_equal",
    "is_zero_mat",
]


def _nonzero(F: ExactField, v) -> np.ndarray:
    if isinstance(F, FiniteField):
        return np.asarray(v) != 0
    v = np.asarray(v, dtype=object)
    return np.fromiter((bool(x) for x in v.ravel()), dtype=bool, count=v.size).reshape(v.shape)


def is_zero_mat(F: ExactField, A) -> bool:
    return not _nonzero(F, A).any()


def mat_equal(F: ExactField, A, B) -> bool:
    A, B = np.asarray(A), np.asarray(B)
    return A.shape == B.shape and bool(np.all(A == B))


def _eliminate(F: ExactField, A: np.ndarray, start_col: int = 0, stop_rank: int | None = None):
    """In-place Gauss-Jordan on a copy; returns (R, pivots)."""
    A = A.copy()
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    prime = isinstance(F, FiniteField) and F.r == 1
    p = F.p if prime else None
    for c in range(start_col, n):
        if r == m or (stop_rank is not None and r == stop_rank):
            break
        nz = np.flatnonzero(_nonzero(F, A[r:, c]))
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        pv = A[r, c]
        if prime:
            if pv != 1:
                A[r, c:] = A[r, c:] * int(F._inv[pv]) % p
            col = A[:, c].copy()
            col[r] = 0
            rows = np.flatnonzero(col)
            if rows.size:
                A[np.ix_(rows, np.arange(c, n))] = (
                    A[np.ix_(rows, np.arange(c, n))] - np.outer(col[rows], A[r, c:])
                ) % p
        else:
            if not (pv == F.one_code):
                A[r, c:] = F.mul(A[r, c:], F.inv(pv))
            col = A[:, c].copy()
            col[r] = F.zeros(1)[0]
            rows = np.flatnonzero(_nonzero(F, col))
            if rows.size:
                sub = A[np.ix_(rows, np.arange(c, n))]
                upd = F.mul(col[rows][:, None], A[r, c:][None, :])
                A[np.ix_(rows, np.arange(c, n))] = F.sub(sub, upd)
        pivots.append(c)
        r += 1
    return A, pivots


def rref(F: ExactField, A, chunk: int | None = None):
    """Reduced row echelon form; returns ``(R, pivots)`` with R the same shape as A.

    Tall inputs are processed in row chunks so only a basis of the row space
    is ever eliminated at full width.
    """
    A = np.asarray(A)
    if A.ndim != 2:
        raise ShapeMismatch("rref needs a matrix")
    m, n = A.shape
    if chunk is None:
        chunk = max(2 * n, 64)
    if m <= chunk:
        return _eliminate(F, A)
    basis, piv = row_basis(F, A, chunk=chunk)
    R = F.zeros((m, n))
    R[: len(piv)] = basis
    return R, piv


def row_basis(F: ExactField, A, chunk: int | None = None):
    """RREF basis (k x n) of the row space of A and its pivot columns."""
    A = np.asarray(A)
    m, n = A.shape
    if chunk is None:
        chunk = max(2 * n, 64)
    basis = F.zeros((0, n))
    piv: list[int] = []
    for s in range(0, m, chunk):
        block = A[s : s + chunk]
        if piv:
            # clear pivot columns against the current basis before stacking
            block = F.sub(block, F.matmul(block[:, piv], basis))
        keep = np.flatnonzero(_nonzero(F, block).any(axis=1))
        if keep.size == 0:
            continue
        stacked = np.concatenate([basis, block[keep]], axis=0)
        R, piv = _eliminate(F, stacked)
        basis = R[: len(piv)]
        if len(piv) == n:
            break
    return basis, piv


def rank(F: ExactField, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(row_basis(F, A)[1])


def kernel(F: ExactField, A) -> np.ndarray:
    """Columns form a basis of {x : A x = 0}."""
    A = np.asarray(A)
    if A.ndim != 2:
        raise ShapeMismatch("kernel needs a matrix")
    m, n = A.shape
    if m == 0:
        return F.eye(n)
    basis, piv = row_basis(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    K = F.zeros((n, len(free)))
    for j, c in enumerate(free):
        K[c, j] = F.one_code
        if piv:
            K[piv, j] = F.neg(basis[:, c])
    return K


def solve(F: ExactField, A, B) -> np.ndarray:
    """One solution X of A X = B (B a vector or matrix)."""
    A = np.asarray(A)
    B = np.asarray(B)
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    if A.ndim != 2 or A.shape[0] != B.shape[0]:
        raise ShapeMismatch(f"solve shapes {A.shape} and {B.shape}")
    n = A.shape[1]
    aug = np.concatenate([A, B], axis=1)
    R, piv = rref(F, aug)
    if any(c >= n for c in piv):
        raise NoSolution("inconsistent linear system")
    X = F.zeros((n, B.shape[1]))
    for i, c in enumerate(piv):
        X[c] = R[i, n:]
    return X[:, 0] if vec else X


def in_row_span(F: ExactField, basis, piv, v) -> bool:
    """Membership of row vector v in the span of an RREF basis."""
    v = np.asarray(v)
    if piv:
        v = F.sub(v, F.matmul(v[piv][None, :], basis)[0])
    return not _nonzero(F, v).any()


def inverse(F: ExactField, A) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquare(f"shape {A.shape}")
    n = A.shape[0]
    R, piv = _eliminate(F, np.concatenate([A, F.eye(n)], axis=1))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def det(F: ExactField, A):
    coeffs = charpoly(F, A)
    n = len(coeffs) - 1
    c0 = coeffs[0]
    return c0 if n % 2 == 0 else F.neg(c0)


def block_diag(F: ExactField, *mats) -> np.ndarray:
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = F.zeros((rows, cols))
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


# -- characteristic polynomials ---------------------------------------------


def _conv(F: ExactField, a, b, keep: int):
    """First ``keep`` coefficients of the product of coefficient vectors a, b."""
    out = F.zeros(keep)
    if isinstance(F, FiniteField) and F.r == 1 and len(a) * (F.p - 1) ** 2 < 2 ** 62:
        return (np.convolve(a, b)[:keep] % F.p).astype(np.int64)
    for i in range(min(len(a), keep)):
        if not _nonzero(F, a[i : i + 1])[0]:
            continue
        span = min(len(b), keep - i)
        out[i : i + span] = F.add(out[i : i + span], F.mul(a[i], b[:span]))
    return out


def charpoly_berkowitz(F: ExactField, A) -> np.ndarray:
    """Division-free characteristic polynomial det(xI - A), coefficients low to high."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquare(f"shape {A.shape}")
    n = A.shape[0]
    # C holds coefficients high -> low during the recursion
    C = F.zeros(1)
    C[0] = F.one_code
    for r in range(n):
        a = A[r, r]
        t = F.zeros(r + 2)
        t[0] = F.one_code
        t[1] = F.neg(a)
        if r > 0:
            R = A[r, :r]
            v = A[:r, r]
            Ar = A[:r, :r]
            for j in range(r):
                t[2 + j] = F.neg(F.matmul(R[None, :], v[:, None])[0, 0])
                if j + 1 < r:
                    v = F.matmul(Ar, v[:, None])[:, 0]
        C = _conv(F, t, C, r + 2)
    return C[::-1].copy()


def charpoly_hessenberg(F: ExactField, A) -> np.ndarray:
    """Characteristic polynomial via reduction to upper Hessenberg form."""
    H = np.asarray(A).copy()
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise NonSquare(f"shape {H.shape}")
    n = H.shape[0]
    for k in range(n - 2):
        col = H[k + 1 :, k]
        nz = np.flatnonzero(_nonzero(F, col))
        if nz.size == 0:
            continue
        i = k + 1 + int(nz[0])
        if i != k + 1:
            H[[i, k + 1]] = H[[k + 1, i]]
            H[:, [i, k + 1]] = H[:, [k + 1, i]]
        pinv = F.inv(H[k + 1, k])
        for j in range(k + 2, n):
            if not _nonzero(F, H[j : j + 1, k])[0]:
                continue
            u = F.mul(H[j, k], pinv)
            H[j, :] = F.sub(H[j, :], F.mul(u, H[k + 1, :]))
            H[:, k + 1] = F.add(H[:, k + 1], F.mul(u, H[:, j]))
    # p_m(x) = (x - h_mm) p_{m-1} - sum_i h_{i,m} (prod sub-diagonals) p_{i-1}
    polys = [F.asarray([F.one_code]) if isinstance(F, FiniteField) else np.array([F.one], dtype=object)]
    for m in range(n):
        nxt = F.zeros(m + 2)
        prev = polys[m]
        nxt[1:] = F.add(nxt[1:], prev)
        nxt[: m + 1] = F.sub(nxt[: m + 1], F.mul(H[m, m], prev))
        prod = F.one_code
        for i in range(m - 1, -1, -1):
            prod = F.mul(prod, H[i + 1, i])
            if not _nonzero(F, np.asarray([prod]))[0]:
                break
            coef = F.mul(prod, H[i, m])
            nxt[: i + 1] = F.sub(nxt[: i + 1], F.mul(coef, polys[i]))
        polys.append(nxt)
    return polys[n]


def charpoly(F: ExactField, A) -> np.ndarray:
    """Monic characteristic polynomial, coefficients low to high.

    Division-free Berkowitz recursion in positive characteristic, Hessenberg
    reduction over the characteristic-zero fields.
    """
    if isinstance(F, FiniteField):
        return charpoly_berkowitz(F, A)
    return charpoly_hessenberg(F, A)
