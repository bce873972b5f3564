"""Dense indexing of guard multisets.

Guard positions are kept as nondecreasing ``k``-tuples over ``0..n-1``.
Index order equals lexicographic order of the tuples, so "least index" and
"lexicographically least tuple" coincide.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb

import numpy as np


def multiset_count(n: int, k: int) -> int:
    """Number of nondecreasing ``k``-tuples over ``n`` values."""
    return comb(n + k - 1, k)


def config_count(n: int, k: int) -> int:
    """Canonical configurations: two turns, ``n`` spy vertices, guard multisets."""
    return 2 * n * multiset_count(n, k)


class MultisetIndex:
    """Bijection between sorted guard tuples and ``0..M-1``."""

    def __init__(self, n: int, k: int) -> None:
        if n < 1 or k < 1:
            raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
        self.n = n
        self.k = k
        self.size = multiset_count(n, k)
        # table[i, a] = number of tuples whose i-th entry is < a given a shared prefix
        # (prefix lower bound handled by subtracting table[i, a_{i-1}]).
        table = np.zeros((k, n + 1), dtype=np.int64)
        for i in range(k):
            rest = k - i - 1
            acc = 0
            for a in range(n):
                table[i, a] = acc
                acc += comb(n - a + rest - 1, rest)
            table[i, n] = acc
        self.table = table
        self._tuples: np.ndarray | None = None

    @property
    def tuples(self) -> np.ndarray:
        """``(M, k)`` int32 array of all tuples in index order."""
        if self._tuples is None:
            arr = np.fromiter(
                (x for t in combinations_with_replacement(range(self.n), self.k) for x in t),
                dtype=np.int32,
                count=self.size * self.k,
            ).reshape(self.size, self.k)
            arr.setflags(write=False)
            self._tuples = arr
        return self._tuples

    def rank(self, guards) -> int:
        """Index of a guard tuple; the tuple is canonicalized (sorted) first."""
        srt = sorted(int(x) for x in guards)
        if len(srt) != self.k:
            raise ValueError(f"expected {self.k} guards, got {len(srt)}")
        if srt and (srt[0] < 0 or srt[-1] >= self.n):
            raise ValueError(f"guard position out of range in {tuple(guards)}")
        r = 0
        prev = 0
        for i, a in enumerate(srt):
            r += int(self.table[i, a] - self.table[i, prev])
            prev = a
        return r

    def rank_array(self, arr: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`rank` for an ``(N, k)`` array (rows sorted in place of a copy)."""
        srt = np.sort(np.asarray(arr, dtype=np.int64), axis=1)
        prev = np.zeros(len(srt), dtype=np.int64)
        r = np.zeros(len(srt), dtype=np.int64)
        for i in range(self.k):
            col = srt[:, i]
            r += self.table[i, col] - self.table[i, prev]
            prev = col
        return r

    def unrank(self, index: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.tuples[index])
