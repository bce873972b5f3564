# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled solver kernels.  Semantics match ``spygame._pykernels`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport qsort

cnp.import_array()

ctypedef long long i64


cdef int _cmp_i32(const void* a, const void* b) noexcept nogil:
    cdef int x = (<const int*>a)[0]
    cdef int y = (<const int*>b)[0]
    return (x > y) - (x < y)


def guard_move_table(const int[:, ::1] tuples, nbr_ptr_in, nbr_idx_in, table_in):
    """Canonical guard successors of every multiset, as CSR sorted ascending."""
    cdef const i64[::1] nbr_ptr = np.ascontiguousarray(nbr_ptr_in, dtype=np.int64)
    cdef const int[::1] nbr_idx = np.ascontiguousarray(nbr_idx_in, dtype=np.int32)
    cdef const i64[:, ::1] table = np.ascontiguousarray(table_in, dtype=np.int64)
    cdef Py_ssize_t m = tuples.shape[0]
    cdef int k = tuples.shape[1]
    cdef i64[::1] stamp = np.full(m, -1, dtype=np.int64)
    cdef i64[::1] ptr = np.zeros(m + 1, dtype=np.int64)
    cdef Py_ssize_t cap = max(16, m * 8)
    out_arr = np.empty(cap, dtype=np.int32)
    cdef int[::1] out = out_arr
    cdef int[::1] pos = np.zeros(k, dtype=np.int32)
    cdef int[::1] lens = np.zeros(k, dtype=np.int32)
    cdef int[::1] cur = np.zeros(k, dtype=np.int32)
    cdef Py_ssize_t p, count = 0, start
    cdef int i, j, x, prev
    cdef i64 r

    for p in range(m):
        start = count
        for i in range(k):
            pos[i] = 0
            lens[i] = <int>(nbr_ptr[tuples[p, i] + 1] - nbr_ptr[tuples[p, i]])
        while True:
            # insertion sort of the current choice
            for i in range(k):
                x = nbr_idx[nbr_ptr[tuples[p, i]] + pos[i]]
                j = i
                while j > 0 and cur[j - 1] > x:
                    cur[j] = cur[j - 1]
                    j -= 1
                cur[j] = x
            r = 0
            prev = 0
            for i in range(k):
                r += table[i, cur[i]] - table[i, prev]
                prev = cur[i]
            if stamp[r] != p:
                stamp[r] = p
                if count == cap:
                    cap *= 2
                    out_arr = np.resize(out_arr, cap)
                    out = out_arr
                out[count] = <int>r
                count += 1
            i = k - 1
            while i >= 0:
                pos[i] += 1
                if pos[i] < lens[i]:
                    break
                pos[i] = 0
                i -= 1
            if i < 0:
                break
        qsort(&out[start], count - start, sizeof(int), _cmp_i32)
        ptr[p + 1] = count
    return np.asarray(ptr), out_arr[:count].copy()


def attractor(i64 n, i64 m, ball_ptr_in, ball_idx_in, gm_ptr_in, gm_idx_in, spy_win_in):
    """Layered backward induction; returns (spy_rank, guard_rank), -1 = unmarked."""
    cdef const i64[::1] ball_ptr = np.ascontiguousarray(ball_ptr_in, dtype=np.int64)
    cdef const int[::1] ball_idx = np.ascontiguousarray(ball_idx_in, dtype=np.int32)
    cdef const i64[::1] gm_ptr = np.ascontiguousarray(gm_ptr_in, dtype=np.int64)
    cdef const int[::1] gm_idx = np.ascontiguousarray(gm_idx_in, dtype=np.int32)
    cdef const cnp.uint8_t[::1] spy_win = np.ascontiguousarray(spy_win_in, dtype=np.uint8)
    cdef i64 total = n * m
    spy_rank_arr = np.full(total, -1, dtype=np.int32)
    guard_rank_arr = np.full(total, -1, dtype=np.int32)
    cdef int[::1] spy_rank = spy_rank_arr
    cdef int[::1] guard_rank = guard_rank_arr
    cdef int[::1] counter = np.empty(total, dtype=np.int32)
    cdef i64[::1] squeue = np.empty(max(total, 1), dtype=np.int64)
    cdef i64[::1] gqueue = np.empty(max(total, 1), dtype=np.int64)
    cdef i64 shead = 0, stail = 0, send, gstart, gtail = 0
    cdef i64 c, g, v, p, e, base, idx
    cdef int level = 0

    with nogil:
        for v in range(n):
            base = v * m
            for p in range(m):
                counter[base + p] = <int>(gm_ptr[p + 1] - gm_ptr[p])
        for c in range(total):
            if spy_win[c]:
                spy_rank[c] = 0
                squeue[stail] = c
                stail += 1
        while shead < stail:
            send = stail
            gstart = gtail
            for idx in range(shead, send):
                c = squeue[idx]
                v = c // m
                p = c - v * m
                base = v * m
                for e in range(gm_ptr[p], gm_ptr[p + 1]):
                    g = base + gm_idx[e]
                    if guard_rank[g] < 0:
                        counter[g] -= 1
                        if counter[g] == 0:
                            guard_rank[g] = level + 1
                            gqueue[gtail] = g
                            gtail += 1
            shead = send
            for idx in range(gstart, gtail):
                g = gqueue[idx]
                v = g // m
                p = g - v * m
                for e in range(ball_ptr[v], ball_ptr[v + 1]):
                    c = ball_idx[e] * m + p
                    if spy_rank[c] < 0:
                        spy_rank[c] = level + 2
                        squeue[stail] = c
                        stail += 1
            level += 2
    return spy_rank_arr, guard_rank_arr
