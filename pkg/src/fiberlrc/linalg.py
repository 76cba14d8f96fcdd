"""Dense Gaussian elimination over a finite field (int-encoded entries)."""

from __future__ import annotations

import numpy as np

from .errors import RankDeficient
from .gf import FieldSpec


def row_reduce(field: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = field.vmul(A[r], field.inv(int(A[r, c])))
        factors = A[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            A[hit] = field.vsub(A[hit], field.vmul(factors[hit, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(field: FieldSpec, M) -> int:
    return len(row_reduce(field, M)[1])


def solve(field: FieldSpec, A, b) -> np.ndarray:
    """Unique x with x @ A = b for a full-row-rank A (k x n, k <= n)."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    k = A.shape[0]
    # Row-reduce [A^T | b] so the system reads A^T x = b.
    aug = np.concatenate([A.T, b[:, None]], axis=1)
    R, piv = row_reduce(field, aug)
    if len(piv) < k or (piv and piv[-1] == k):
        raise RankDeficient("system is singular or inconsistent")
    return R[:k, k].copy()


def matmul(field: FieldSpec, x, G) -> np.ndarray:
    """Row vector (or matrix of row vectors) times G over the field."""
    x = np.atleast_2d(np.asarray(x, dtype=np.int64))
    G = np.asarray(G, dtype=np.int64)
    out = field.vsum(field.vmul(x[:, :, None], G[None, :, :]), axis=1)
    return out
