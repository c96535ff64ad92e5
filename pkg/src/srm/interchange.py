"""Interchanges: adding or subtracting E = [[1,-1],[-1,1]] on a 2x2 submatrix.

Covers elimination of -1's inside an SRM class, interchange paths between
SRMs and inside A^+-(R,S), the nonemptiness inequalities for (0,1,2)- and
(0,+-1)-classes, and the test for A(R,S) = A^+-(R,S).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .classes import gale_ryser, realize_01
from .core import SignMatrix, Srm, as_array, margins, require_srm, validate_srm
from .enumeration import check_cap, enumerate_pm_class
from .errors import DomainError


@dataclass(frozen=True)
class InterchangeStep:
    """Add ``sign`` * E on rows (i,k) and columns (j,l), all 1-based, i<k, j<l."""

    rows: tuple[int, int]
    cols: tuple[int, int]
    sign: int

    def __post_init__(self):
        (i, k), (j, l) = self.rows, self.cols
        if not (1 <= i < k and 1 <= j < l):
            raise DomainError(f"bad interchange position rows={self.rows} cols={self.cols}")
        if self.sign not in (1, -1):
            raise DomainError("interchange sign must be +1 or -1")

    def delta(self, shape: tuple[int, int]) -> np.ndarray:
        (i, k), (j, l) = self.rows, self.cols
        if k > shape[0] or l > shape[1]:
            raise DomainError(f"interchange {self} out of range for shape {shape}")
        d = np.zeros(shape, dtype=np.int64)
        d[i - 1, j - 1] = d[k - 1, l - 1] = self.sign
        d[i - 1, l - 1] = d[k - 1, j - 1] = -self.sign
        return d

    def __str__(self):
        return f"({self.rows[0]},{self.rows[1]})x({self.cols[0]},{self.cols[1]}) {'+' if self.sign > 0 else '-'}"


def step_between(before, after) -> InterchangeStep:
    """The interchange turning ``before`` into ``after`` (they must differ by +-E)."""
    d = as_array(after) - as_array(before)
    pos = np.argwhere(d != 0)
    rows = sorted({int(p[0]) + 1 for p in pos})
    cols = sorted({int(p[1]) + 1 for p in pos})
    if len(pos) != 4 or len(rows) != 2 or len(cols) != 2:
        raise DomainError("matrices do not differ by a single interchange")
    step = InterchangeStep(tuple(rows), tuple(cols), int(d[rows[0] - 1, cols[0] - 1]))
    if not np.array_equal(step.delta(d.shape), d):
        raise DomainError("matrices do not differ by a single interchange")
    return step


def apply_interchange(M, step: InterchangeStep) -> SignMatrix:
    a = as_array(M)
    b = a + step.delta(a.shape)
    if np.any(np.abs(b) > 1):
        raise DomainError(f"interchange {step} would leave an entry outside {{-1,0,1}}")
    return SignMatrix._wrap(b)


CLASSES = ("srm", "pm", "01")


@dataclass
class InterchangeTrace:
    start: SignMatrix
    steps: list[InterchangeStep] = field(default_factory=list)
    certified_class: str = "srm"

    def matrices(self) -> list[SignMatrix]:
        out = [self.start]
        for s in self.steps:
            out.append(apply_interchange(out[-1], s))
        return out

    @property
    def end(self) -> SignMatrix:
        return self.matrices()[-1]

    def __len__(self):
        return len(self.steps)

    def verify(self) -> bool:
        """Replay the steps; every intermediate must stay in the certified class with fixed margins."""
        mats = self.matrices()
        mp = margins(self.start)
        for M in mats:
            if margins(M) != mp:
                return False
            if self.certified_class == "srm" and not validate_srm(M):
                return False
            if self.certified_class == "01" and (M.entries < 0).any():
                return False
        return True


def _top_left_minus_one(a: np.ndarray) -> tuple[int, int] | None:
    pos = np.argwhere(a == -1)
    if len(pos) == 0:
        return None
    i, j = min(pos.tolist(), key=lambda p: (p[0] + p[1], p[0]))
    return i, j


def eliminate_minus_ones(A) -> tuple[Srm, InterchangeTrace]:
    """Remove every -1 from an SRM by interchanges that keep it an SRM.

    Repeatedly take the -1 at (i,j) with i+j minimal (smallest row on ties),
    the nearest 1 above it at (k,j) and the nearest 1 to its left at (i,l);
    then a_kl = 0 and adding E on rows {k,i}, columns {l,j} clears the -1.
    """
    srm = require_srm(A)
    a = srm.entries.astype(np.int64)
    trace = InterchangeTrace(srm, [], "srm")
    while (pos := _top_left_minus_one(a)) is not None:
        i, j = pos
        k = max(r for r in range(i) if a[r, j] == 1)
        l = max(c for c in range(j) if a[i, c] == 1)
        assert a[k, l] == 0
        step = InterchangeStep((k + 1, i + 1), (l + 1, j + 1), 1)
        a += step.delta(a.shape)
        trace.steps.append(step)
    return Srm._wrap(a), trace


def _connect_plus(a: np.ndarray, b: np.ndarray) -> list[InterchangeStep]:
    # a, b: (0,1)-SRMs with equal margins; each column holds at most one 1
    a = a.copy()
    steps = []
    while not np.array_equal(a, b):
        j = int(np.argwhere((a != b).any(axis=0))[0][0])
        i = int(np.argmax(a[:, j]))
        k = int(np.argmax(b[:, j]))
        l = int(np.argwhere((a[k] == 1) & (b[k] == 0))[0][0])
        before = a.copy()
        a[i, j], a[k, j], a[k, l], a[i, l] = 0, 1, 0, 1
        steps.append(step_between(before, a))
    return steps


def srm_interchange_path(A, B) -> InterchangeTrace:
    """Interchanges taking SRM A to SRM B through SRMs with the same margins.

    Both ends are first cleared of -1's; the two (0,1)-SRMs are then joined by
    moving the single 1 of a differing column into its target row.
    """
    sa, sb = require_srm(A), require_srm(B)
    if sa.shape != sb.shape or margins(sa) != margins(sb):
        raise DomainError("SRMs must have equal margins")
    plus_a, ta = eliminate_minus_ones(sa)
    plus_b, tb = eliminate_minus_ones(sb)
    middle = _connect_plus(plus_a.entries.astype(np.int64), plus_b.entries.astype(np.int64))
    back = [InterchangeStep(s.rows, s.cols, -s.sign) for s in reversed(tb.steps)]
    return InterchangeTrace(sa, ta.steps + middle + back, "srm")


def _sorted_desc(S: Sequence[int]) -> list[int]:
    return sorted(S, reverse=True)


def a012_nonempty(R: Sequence[int], S: Sequence[int]) -> bool:
    """Some (0,1,2)-matrix has margins (R,S) iff, with S sorted nonincreasingly,
    s_1+...+s_k <= sum_i min(r_i, 2k) for every k."""
    if sum(R) != sum(S):
        raise DomainError("row and column sums differ")
    if any(x < 0 for x in R) or any(x < 0 for x in S):
        return False
    s = _sorted_desc(S)
    return all(sum(s[:k]) <= sum(min(r, 2 * k) for r in R) for k in range(1, len(s) + 1))


def pm_nonempty(R: Sequence[int], S: Sequence[int]) -> bool:
    """Some (0,+-1)-matrix has margins (R,S) iff, with S sorted nonincreasingly,
    s_1+...+s_k <= sum_i min(r_i + n, 2k) - k*m for every k.

    Shifting by the all-ones matrix maps the class onto a (0,1,2)-class, which
    needs nonnegative shifted margins.
    """
    if sum(R) != sum(S):
        raise DomainError("row and column sums differ")
    m, n = len(R), len(S)
    if any(r + n < 0 for r in R) or any(s + m < 0 for s in S):
        return False
    s = _sorted_desc(S)
    return all(sum(s[:k]) <= sum(min(r + n, 2 * k) for r in R) - k * m for k in range(1, n + 1))


def _neighbors(a: np.ndarray):
    m, n = a.shape
    for i in range(m):
        for k in range(i + 1, m):
            for j in range(n):
                for l in range(j + 1, n):
                    for sign in (1, -1):
                        if (
                            abs(a[i, j] + sign) <= 1
                            and abs(a[k, l] + sign) <= 1
                            and abs(a[i, l] - sign) <= 1
                            and abs(a[k, j] - sign) <= 1
                        ):
                            b = a.copy()
                            b[i, j] += sign
                            b[k, l] += sign
                            b[i, l] -= sign
                            b[k, j] -= sign
                            yield b


def pm_interchange_path(A, B, max_cells: int | None = None) -> InterchangeTrace:
    """Shortest interchange path between two members of one A^+-(R,S) class.

    Bidirectional breadth-first search on the interchange graph; every
    intermediate is a (0,+-1)-matrix with the same margins.
    """
    a, b = as_array(A), as_array(B)
    if a.shape != b.shape or margins(a) != margins(b):
        raise DomainError("matrices must have equal shape and margins")
    check_cap(*a.shape, max_cells)
    start = SignMatrix._wrap(a)
    if np.array_equal(a, b):
        return InterchangeTrace(start, [], "pm")
    ka, kb = a.tobytes(), b.tobytes()
    parents = [{ka: None}, {kb: None}]
    frontiers = [deque([a]), deque([b])]
    meet = None
    while meet is None and frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = parents[side], parents[1 - side]
        nxt = deque()
        for x in frontiers[side]:
            kx = x.tobytes()
            for y in _neighbors(x):
                ky = y.tobytes()
                if ky in mine:
                    continue
                mine[ky] = (kx, x)
                if ky in other:
                    meet = ky
                    break
                nxt.append(y)
            if meet is not None:
                break
        frontiers[side] = nxt
    if meet is None:
        raise DomainError("no interchange path found; interchange graph is disconnected")

    def chain(par, key):
        out = []
        while par[key] is not None:
            prev_key, prev = par[key]
            out.append(prev)
            key = prev_key
        return out

    shape = a.shape
    from_a = list(reversed(chain(parents[0], meet)))
    to_b = chain(parents[1], meet)
    mid = np.frombuffer(meet, dtype=a.dtype).reshape(shape)
    mats = from_a + [mid] + to_b
    steps = [step_between(x, y) for x, y in zip(mats, mats[1:])]
    return InterchangeTrace(start, steps, "pm")


def class_equality(R: Sequence[int], S: Sequence[int]) -> bool:
    """Does A(R,S) equal A^+-(R,S), i.e. no matrix with these margins has a -1?

    A -1 can be created exactly when some member of A(R,S) has a 0 sharing
    its row with another 0 and its column with another 0.  Read the zeros as
    a bipartite graph: every realization must then be a union of stars.  That
    holds for all realizations iff every row has at most one 0 or every column
    has at most one 0; with a row star and a column star present, swapping one
    leaf edge of each joins them into a path of length three.  Checking the
    zero pattern of a single realization is not enough.
    """
    a = realize_01(R, S)
    if a is None:
        raise DomainError("A(R,S) is empty")
    m, n = a.shape
    return min(R) >= n - 1 or min(S) >= m - 1


def class_equality_brute(R: Sequence[int], S: Sequence[int], max_cells: int | None = None) -> bool:
    if not gale_ryser(R, S):
        raise DomainError("A(R,S) is empty")
    return not any((M.entries < 0).any() for M in enumerate_pm_class(R, S, max_cells=max_cells))


def random_srm(m: int, n: int, rng: np.random.Generator, steps: int = 50) -> Srm:
    """A random m x n SRM: a uniform (0,1)-SRM pushed through random interchanges
    that keep it an SRM (the reverse of eliminating -1's)."""
    a = np.zeros((m, n), dtype=np.int64)
    for j in range(n):
        r = int(rng.integers(m + 1))
        if r < m:
            a[r, j] = 1
    if m < 2 or n < 2:
        return Srm._wrap(a)
    for _ in range(steps):
        i, k = sorted(rng.choice(m, 2, replace=False).tolist())
        j, l = sorted(rng.choice(n, 2, replace=False).tolist())
        step = InterchangeStep((i + 1, k + 1), (j + 1, l + 1), int(rng.choice((-1, 1))))
        b = a + step.delta(a.shape)
        if np.abs(b).max() <= 1 and validate_srm(b):
            a = b
    return Srm._wrap(a)
