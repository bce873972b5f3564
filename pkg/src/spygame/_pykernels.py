"""Numpy implementations of the solver kernels (fallback when the extension is absent).

Both functions mirror ``_ckernels`` exactly; results must be bit-identical.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 15


def _expand(ptr: np.ndarray, idx: np.ndarray, rows: np.ndarray):
    """Concatenate CSR rows ``rows``; returns (owner position, values)."""
    starts = ptr[rows]
    lens = ptr[rows + 1] - starts
    total = int(lens.sum())
    owner = np.repeat(np.arange(len(rows)), lens)
    offs = np.arange(total) - np.repeat(np.cumsum(lens) - lens, lens)
    return owner, idx[starts[owner] + offs]


def guard_move_table(tuples, nbr_ptr, nbr_idx, table):
    """Canonical guard successors of every multiset, as CSR sorted ascending."""
    tuples = np.asarray(tuples)
    m, k = tuples.shape
    nbr_ptr = np.asarray(nbr_ptr, dtype=np.int64)
    nbr_idx = np.asarray(nbr_idx, dtype=np.int64)
    table = np.asarray(table, dtype=np.int64)
    rows = []
    ptr = np.zeros(m + 1, dtype=np.int64)
    for p in range(m):
        opts = [nbr_idx[nbr_ptr[v] : nbr_ptr[v + 1]] for v in tuples[p]]
        grid = np.stack(np.meshgrid(*opts, indexing="ij"), axis=-1).reshape(-1, k)
        grid.sort(axis=1)
        r = np.zeros(len(grid), dtype=np.int64)
        prev = np.zeros(len(grid), dtype=np.int64)
        for i in range(k):
            col = grid[:, i]
            r += table[i, col] - table[i, prev]
            prev = col
        r = np.unique(r)
        rows.append(r)
        ptr[p + 1] = ptr[p] + len(r)
    idx = np.concatenate(rows).astype(np.int32) if rows else np.zeros(0, np.int32)
    return ptr, idx


def attractor(n, m, ball_ptr, ball_idx, gm_ptr, gm_idx, spy_win):
    """Layered backward induction; returns (spy_rank, guard_rank), -1 = unmarked.

    Spy-winning spy configurations get rank 0.  A guard configuration is marked
    one level after its last successor; a spy configuration one level after its
    first marked successor.  Configuration ``(v, P)`` has index ``v * m + P``.
    """
    total = n * m
    ball_ptr = np.asarray(ball_ptr, dtype=np.int64)
    ball_idx = np.asarray(ball_idx, dtype=np.int64)
    gm_ptr = np.asarray(gm_ptr, dtype=np.int64)
    gm_idx = np.asarray(gm_idx, dtype=np.int64)
    spy_rank = np.full(total, -1, dtype=np.int32)
    guard_rank = np.full(total, -1, dtype=np.int32)
    counter = np.tile(np.diff(gm_ptr), n).astype(np.int64)

    frontier = np.flatnonzero(np.asarray(spy_win, dtype=bool))
    spy_rank[frontier] = 0
    level = 0
    while frontier.size:
        new_guard = []
        for lo in range(0, frontier.size, _CHUNK):
            chunk = frontier[lo : lo + _CHUNK]
            v, p = np.divmod(chunk, m)
            owner, succ = _expand(gm_ptr, gm_idx, p)
            preds = v[owner] * m + succ
            preds = preds[guard_rank[preds] < 0]
            if not preds.size:
                continue
            uniq, cnt = np.unique(preds, return_counts=True)
            counter[uniq] -= cnt
            done = uniq[counter[uniq] == 0]
            guard_rank[done] = level + 1
            new_guard.append(done)
        if not new_guard:
            break
        gnew = np.concatenate(new_guard)
        new_spy = []
        for lo in range(0, gnew.size, _CHUNK):
            chunk = gnew[lo : lo + _CHUNK]
            v, p = np.divmod(chunk, m)
            owner, u = _expand(ball_ptr, ball_idx, v)
            cand = u * m + p[owner]
            cand = np.unique(cand[spy_rank[cand] < 0])
            spy_rank[cand] = level + 2
            new_spy.append(cand)
        frontier = np.concatenate(new_spy) if new_spy else np.zeros(0, np.int64)
        level += 2
    return spy_rank, guard_rank
