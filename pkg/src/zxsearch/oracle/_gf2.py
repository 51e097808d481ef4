"""Linear systems over GF(2) with many right-hand sides.

Both kernels run the same elimination (first available row as pivot,
full reduction above and below), so they return identical solutions.
"""

from __future__ import annotations

import numpy as np

from .._accel import USE_NUMBA, njit


def _solve_loops(a, b):
    rows, cols = a.shape
    k = b.shape[1]
    m = np.zeros((rows, cols + k), dtype=np.uint8)
    m[:, :cols] = a
    m[:, cols:] = b
    pivot_cols = np.full(rows, -1, dtype=np.int64)
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        p = -1
        for r in range(rank, rows):
            if m[r, c]:
                p = r
                break
        if p < 0:
            continue
        if p != rank:
            for j in range(cols + k):
                tmp = m[p, j]
                m[p, j] = m[rank, j]
                m[rank, j] = tmp
        for r in range(rows):
            if r != rank and m[r, c]:
                for j in range(c, cols + k):
                    m[r, j] ^= m[rank, j]
        pivot_cols[rank] = c
        rank += 1
    solvable = np.ones(k, dtype=np.bool_)
    for r in range(rank, rows):
        for j in range(k):
            if m[r, cols + j]:
                solvable[j] = False
    x = np.zeros((cols, k), dtype=np.uint8)
    for r in range(rank):
        for j in range(k):
            x[pivot_cols[r], j] = m[r, cols + j]
    return solvable, x


solve_gf2_numba = njit(_solve_loops)


def solve_gf2_numpy(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Solve ``a @ x = b (mod 2)`` column by column.

    Returns ``(solvable, x)``: ``solvable[j]`` says whether column ``j`` of
    ``b`` has a solution, and ``x[:, j]`` is one (free variables set to 0).
    """
    rows, cols = a.shape
    k = b.shape[1]
    m = np.concatenate([a, b], axis=1).astype(np.uint8)
    pivot_cols = []
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(m[rank:, c])
        if nz.size == 0:
            continue
        p = rank + nz[0]
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        hit = m[:, c].astype(bool)
        hit[rank] = False
        m[hit] ^= m[rank]
        pivot_cols.append(c)
        rank += 1
    solvable = ~m[rank:, cols:].any(axis=0)
    x = np.zeros((cols, k), dtype=np.uint8)
    if rank:
        x[pivot_cols] = m[:rank, cols:]
    return solvable, x


def solve_gf2(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.ascontiguousarray(a, dtype=np.uint8)
    b = np.ascontiguousarray(b, dtype=np.uint8)
    if USE_NUMBA:
        return solve_gf2_numba(a, b)
    return solve_gf2_numpy(a, b)
