"""Exhaustive generation of SRM classes and margin classes at desk scale.

Every generator here emits matrices in column-major lexicographic order with
entries ordered -1 < 0 < 1, so counts and golden lists are reproducible.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import MarginPair, SignMatrix, Srm
from .errors import CapExceeded, DomainError

DEFAULT_MAX_CELLS = 20


@dataclass(frozen=True)
class ClassFilter:
    plus_only: bool = False
    margins: MarginPair | None = None
    c_bound: int | None = None

    def __post_init__(self):
        if self.c_bound is not None and self.c_bound < 0:
            raise DomainError("c_bound must be nonnegative")


ALL = ClassFilter()
PLUS = ClassFilter(plus_only=True)


def check_cap(m: int, n: int, max_cells: int | None = None) -> None:
    if m < 1 or n < 1:
        raise DomainError("dimensions must be positive")
    cap = DEFAULT_MAX_CELLS if max_cells is None else max_cells
    if m * n > cap:
        raise CapExceeded(f"{m}x{n} has {m * n} cells, above the enumeration cap of {cap}")
    if cap > DEFAULT_MAX_CELLS:
        warnings.warn(f"enumeration cap raised to {cap} cells (default {DEFAULT_MAX_CELLS})", stacklevel=3)


def alternating_columns(m: int, plus_only: bool = False, total: int | None = None) -> list[tuple[int, ...]]:
    """All length-m columns whose top-down prefix sums stay in {0,1}, in lex order."""
    out: list[tuple[int, ...]] = []
    col = [0] * m

    def rec(i: int, state: int) -> None:
        if i == m:
            if total is None or state == total:
                out.append(tuple(col))
            return
        if state == 0:
            options = (0, 1)
        else:
            options = (0,) if plus_only else (-1, 0)
        for v in options:
            col[i] = v
            rec(i + 1, state + v)
        col[i] = 0

    rec(0, 0)
    return out


def _srm_columns(m: int, n: int, flt: ClassFilter) -> Iterator[tuple[tuple[int, ...], ...]]:
    R = S = None
    if flt.margins is not None:
        R, S = flt.margins.R, flt.margins.S
    base = alternating_columns(m, flt.plus_only)
    if S is None:
        choices = [base] * n
    else:
        choices = [[c for c in base if sum(c) == s] for s in S]
    c = flt.c_bound
    chosen: list[tuple[int, ...]] = [()] * n

    def rec(j: int, pre: tuple[int, ...]):
        left = n - 1 - j
        for col in choices[j]:
            new = tuple(p + v for p, v in zip(pre, col))
            if min(new) < 0:
                continue
            if R is not None and any(abs(x - r) > left for x, r in zip(new, R)):
                continue
            if c is not None and any(x - left > c for x in new):
                continue
            chosen[j] = col
            if left == 0:
                yield tuple(chosen)
            else:
                yield from rec(j + 1, new)

    yield from rec(0, (0,) * m)


def _check_filter(m: int, n: int, flt: ClassFilter) -> None:
    if flt.margins is not None and (flt.margins.m != m or flt.margins.n != n):
        raise DomainError("margin vector lengths do not match the matrix shape")


def _from_columns(cols: tuple[tuple[int, ...], ...]) -> np.ndarray:
    return np.array(cols, dtype=np.int8).T


def enumerate_srms(m: int, n: int, flt: ClassFilter = ALL, max_cells: int | None = None) -> Iterator[Srm]:
    """Stream every m x n SRM passing ``flt`` exactly once.

    Backtracks column by column over alternating columns, pruning as soon as
    a row prefix would go negative or a margin/row-sum target is out of reach.
    """
    check_cap(m, n, max_cells)
    _check_filter(m, n, flt)
    return (Srm._wrap(_from_columns(cols), c_bound=flt.c_bound) for cols in _srm_columns(m, n, flt))


def count_srms(m: int, n: int, flt: ClassFilter = ALL, max_cells: int | None = None) -> int:
    check_cap(m, n, max_cells)
    _check_filter(m, n, flt)
    return sum(1 for _ in _srm_columns(m, n, flt))


def brute_force_max_nonzeros(m: int, n: int, max_cells: int | None = None) -> int:
    """Largest nonzero count over the full enumeration of m x n SRMs."""
    check_cap(m, n, max_cells)
    weight = {col: sum(1 for v in col if v) for col in alternating_columns(m)}
    return max(sum(weight[c] for c in cols) for cols in _srm_columns(m, n, ALL))


def _line_dfs(
    m: int,
    n: int,
    values: Sequence[int],
    R: Sequence[int],
    S: Sequence[int],
    allowed: np.ndarray | None = None,
) -> Iterator[np.ndarray]:
    """Cell-by-cell column-major search for integer matrices with exact margins.

    ``values`` is the sorted entry alphabet; ``allowed`` masks cells forced to 0.
    """
    lo, hi = min(values), max(values)
    a = np.zeros((m, n), dtype=np.int64)
    rp = [0] * m
    cp = [0] * n

    def rec(pos: int):
        if pos == m * n:
            yield a.copy()
            return
        j, i = divmod(pos, m)
        row_left = n - 1 - j
        col_left = m - 1 - i
        opts = values if allowed is None or allowed[i, j] else (0,)
        for v in opts:
            r = rp[i] + v
            c = cp[j] + v
            if not (r + row_left * lo <= R[i] <= r + row_left * hi):
                continue
            if not (c + col_left * lo <= S[j] <= c + col_left * hi):
                continue
            a[i, j] = v
            rp[i] = r
            cp[j] = c
            yield from rec(pos + 1)
            rp[i] -= v
            cp[j] -= v
            a[i, j] = 0

    yield from rec(0)


def _check_lengths(R, S, m, n):
    if m is None:
        m = len(R)
    if n is None:
        n = len(S)
    if len(R) != m or len(S) != n:
        raise DomainError("margin vector lengths do not match the matrix shape")
    return m, n


def enumerate_pm_class(
    R: Sequence[int], S: Sequence[int], m: int | None = None, n: int | None = None, max_cells: int | None = None
) -> Iterator[SignMatrix]:
    """All (0,+-1)-matrices with row sums R and column sums S (no SRM condition)."""
    m, n = _check_lengths(R, S, m, n)
    check_cap(m, n, max_cells)
    return (SignMatrix._wrap(a) for a in _line_dfs(m, n, (-1, 0, 1), R, S))


def enumerate_01_class(
    R: Sequence[int],
    S: Sequence[int],
    max_cells: int | None = None,
    allowed: np.ndarray | None = None,
) -> Iterator[np.ndarray]:
    """All (0,1)-matrices in A(R,S), optionally restricted to ``allowed`` cells."""
    m, n = _check_lengths(R, S, None, None)
    check_cap(m, n, max_cells)
    return _line_dfs(m, n, (0, 1), R, S, allowed)


def enumerate_012_class(R: Sequence[int], S: Sequence[int], max_cells: int | None = None) -> Iterator[np.ndarray]:
    m, n = _check_lengths(R, S, None, None)
    check_cap(m, n, max_cells)
    return _line_dfs(m, n, (0, 1, 2), R, S)
