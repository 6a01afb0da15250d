"""Dense linear algebra over the prime field F_p.

Matrices are plain ``numpy`` int64 arrays with entries in ``[0, p)``.  Every
function takes the modulus explicitly; nothing here knows about algebras.
"""

from __future__ import annotations

import numpy as np

from .errors import CharacteristicMismatch, DimensionMismatch

MAX_PRIME = 2**31 - 1
_INT64_LIMIT = 2**63 - 1


def check_prime(p: int) -> int:
    p = int(p)
    if p < 2 or p > MAX_PRIME:
        raise CharacteristicMismatch(f"characteristic {p} outside [2, 2^31-1]")
    if p > 3:
        if p % 2 == 0:
            raise CharacteristicMismatch(f"{p} is not prime")
        f = 3
        while f * f <= p:
            if p % f == 0:
                raise CharacteristicMismatch(f"{p} is not prime")
            f += 2
    elif p not in (2, 3):
        raise CharacteristicMismatch(f"{p} is not prime")
    return p


def asmat(m, p: int) -> np.ndarray:
    """Coerce ``m`` to a reduced int64 array (copy)."""
    a = np.array(m, dtype=object if _needs_object(m) else np.int64)
    return (a % p).astype(np.int64)


def _needs_object(m) -> bool:
    try:
        a = np.asarray(m)
    except (OverflowError, ValueError):
        return True
    return a.dtype == object


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def inv_scalar(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product ``a @ b`` reduced mod p, without int64 overflow."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    inner = max(a.shape[-1], 1)
    if inner * (p - 1) ** 2 <= _INT64_LIMIT:
        return (a @ b) % p
    # large p: exact Python integers
    return ((a.astype(object) @ b.astype(object)) % p).astype(np.int64)


def matpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    result = identity(a.shape[0])
    base = a % p
    while k:
        if k & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return result


def rref(m, p: int) -> tuple[int, np.ndarray, list[int]]:
    """Reduced row echelon form.

    Returns ``(rank, reduced, pivots)`` where ``pivots`` lists the pivot
    column of each nonzero row of ``reduced``.
    """
    a = np.array(m, dtype=np.int64, copy=True) % p
    if a.ndim != 2:
        raise DimensionMismatch("rref expects a 2-d matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * inv_scalar(a[r, c], p)) % p
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            a[others] = (a[others] - np.outer(col[others], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return r, a, pivots


def rank(m, p: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return rref(m, p)[0]


def kernel_basis(m, p: int) -> np.ndarray:
    """Rows form a basis of the right null space ``{x : m @ x = 0}``."""
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    if rows == 0:
        return identity(cols)
    r, red, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(len(free), cols)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-red[i, f]) % p
    return basis


def solve(a, b, p: int) -> np.ndarray | None:
    """Some ``x`` with ``a @ x = b``, or ``None`` if the system is inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vector = b.ndim == 1
    if vector:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"rows differ: {a.shape} vs {b.shape}")
    n = a.shape[1]
    if a.shape[0] == 0:
        x = zeros(n, b.shape[1])
        return x[:, 0] if vector else x
    r, red, pivots = rref(np.hstack([a, b]), p)
    if any(pc >= n for pc in pivots):
        return None
    x = zeros(n, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = red[i, n:]
    return x[:, 0] if vector else x


def inverse(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch("inverse of non-square matrix")
    r, red, _ = rref(np.hstack([a, identity(n)]), p)
    if n and (r < n or not np.array_equal(red[:, :n], identity(n))):
        raise ZeroDivisionError("singular matrix")
    return red[:, n:].copy()


def is_invertible(a, p: int) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def column_basis(m, p: int) -> np.ndarray:
    """Columns spanning the column space of ``m``, in reduced echelon form."""
    m = np.asarray(m, dtype=np.int64)
    if m.shape[1] == 0:
        return zeros(m.shape[0], 0)
    r, red, _ = rref(m.T, p)
    return red[:r].T.copy()


def row_basis(m, p: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    if m.shape[0] == 0:
        return zeros(0, m.shape[1])
    r, red, _ = rref(m, p)
    return red[:r].copy()


def complement_columns(sub, whole, p: int) -> np.ndarray:
    """Columns of ``whole`` that extend a basis of ``span(sub)`` to ``span(sub + whole)``."""
    sub = np.asarray(sub, dtype=np.int64)
    whole = np.asarray(whole, dtype=np.int64)
    k = sub.shape[1]
    if whole.shape[1] == 0:
        return zeros(whole.shape[0], 0)
    _, _, pivots = rref(np.hstack([sub, whole]), p)
    return whole[:, [c - k for c in pivots if c >= k]]


def in_span(vectors, basis, p: int) -> bool:
    """True when every column of ``vectors`` lies in the column span of ``basis``."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.ndim == 1:
        vectors = vectors.reshape(-1, 1)
    if basis.shape[1] == 0:
        return not np.any(vectors % p)
    return solve(basis, vectors, p) is not None


def intersect_columns(a, b, p: int) -> np.ndarray:
    """Basis (columns) of span(a) ∩ span(b)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], 0)
    ker = kernel_basis(np.hstack([a, (-b) % p]), p)
    if ker.shape[0] == 0:
        return zeros(a.shape[0], 0)
    return column_basis(matmul(a, ker[:, : a.shape[1]].T, p), p)


def nullity(m, p: int) -> int:
    return np.asarray(m).shape[1] - rank(m, p)


def is_nilpotent(a, p: int) -> bool:
    n = a.shape[0]
    return not np.any(matpow(a, n, p)) if n else True
