"""Dense linear algebra over a prime field, used for exactness checks."""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 2147483647  # 2**31 - 1; products of two residues fit in int64


def reduce(M, p: int) -> np.ndarray:
    return np.mod(np.asarray(M, dtype=np.int64), p)


def matmul(A, B, p: int) -> np.ndarray:
    """``A @ B mod p`` without int64 overflow.

    ``B`` is split into 16-bit limbs so every partial product stays below
    ``2**47`` and sums of up to ``2**16`` of them still fit.
    """
    A = reduce(A, p)
    B = reduce(B, p)
    if A.shape[1] > 1 << 16:
        raise ValueError("inner dimension too large for the limb split")
    lo = B & 0xFFFF
    hi = B >> 16
    out = (A @ lo) % p
    out = (out + ((A @ hi) % p) * (1 << 16)) % p
    return out


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod ``p`` and the pivot columns."""
    A = reduce(M, p).copy()
    n_rows, n_cols = A.shape
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[r]) % p) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M, p: int, n_cols: int | None = None) -> np.ndarray:
    """Columns spanning the kernel of ``M`` mod ``p`` (shape ``n_cols x k``)."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1] if n_cols is None else n_cols
    if M.size == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(M, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for t, fc in enumerate(free):
        basis[fc, t] = 1
        for row, pc in enumerate(piv):
            basis[pc, t] = (-R[row, fc]) % p
    return basis


def column_space_rank(*blocks: np.ndarray, p: int, n_rows: int) -> int:
    """Rank of the horizontal concatenation of the given column blocks."""
    if n_rows == 0:
        return 0
    mats = [np.asarray(b, dtype=np.int64).reshape(n_rows, -1) for b in blocks]
    mats = [m for m in mats if m.shape[1]]
    if not mats:
        return 0
    return rank(np.concatenate(mats, axis=1), p)
