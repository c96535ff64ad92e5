"""Nonemptiness tests and realizations for (0,1)-matrix classes A(R,S)."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def gale_ryser(R: Sequence[int], S: Sequence[int]) -> bool:
    """True iff some (0,1)-matrix has row sums R and column sums S."""
    m, n = len(R), len(S)
    if any(r < 0 or r > n for r in R) or any(s < 0 or s > m for s in S):
        return False
    if sum(R) != sum(S):
        return False
    s_sorted = sorted(S, reverse=True)
    total = 0
    for k in range(1, n + 1):
        total += s_sorted[k - 1]
        if total > sum(min(r, k) for r in R):
            return False
    return True


def realize_01(R: Sequence[int], S: Sequence[int]) -> np.ndarray | None:
    """One member of A(R,S), or None when the class is empty.

    Rows are filled in order, each putting its ones in the columns with the
    largest remaining demand (ties to the smaller index).
    """
    if not gale_ryser(R, S):
        return None
    m, n = len(R), len(S)
    a = np.zeros((m, n), dtype=np.int64)
    left = list(S)
    for i in sorted(range(m), key=lambda i: -R[i]):
        cols = sorted(range(n), key=lambda j: (-left[j], j))[: R[i]]
        for j in cols:
            a[i, j] = 1
            left[j] -= 1
    assert a.sum(axis=1).tolist() == list(R) and a.sum(axis=0).tolist() == list(S)
    return a
