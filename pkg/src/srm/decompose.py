"""Signed subpermutation decompositions and joint realizations.

Every SRM is a signed sum of pairwise disjoint subpermutation matrices: pad
it to a square (0,+-1)-matrix B with constant line sums p, split B + J into
permutation matrices by repeated perfect matchings, and cancel J.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .classes import gale_ryser
from .core import SignMatrix, as_array, require_srm
from .enumeration import enumerate_01_class
from .errors import DomainError, HypothesisError


def perfect_matching(support: np.ndarray) -> list[int] | None:
    """Row -> column perfect matching inside a square boolean support, by
    augmenting paths (rows in index order, columns tried in index order)."""
    k = support.shape[0]
    nbrs = [np.flatnonzero(support[i]).tolist() for i in range(k)]
    match_col = [-1] * k  # column -> row

    def augment(i: int, seen: list[bool]) -> bool:
        for j in nbrs[i]:
            if seen[j]:
                continue
            seen[j] = True
            if match_col[j] < 0 or augment(match_col[j], seen):
                match_col[j] = i
                return True
        return False

    # cheap greedy start, then augment the rest
    for i in range(k):
        for j in nbrs[i]:
            if match_col[j] < 0:
                match_col[j] = i
                break
    matched_rows = set(match_col) - {-1}
    for i in range(k):
        if i not in matched_rows and not augment(i, [False] * k):
            return None
    row_to_col = [0] * k
    for j, i in enumerate(match_col):
        row_to_col[i] = j
    return row_to_col


def permutation_decomposition(M: np.ndarray) -> list[np.ndarray]:
    """Split a nonnegative integer matrix with constant line sums into permutation matrices."""
    rest = np.array(M, dtype=np.int64)
    k = rest.shape[0]
    if rest.shape != (k, k) or (rest < 0).any():
        raise DomainError("need a square nonnegative matrix")
    sums = set(rest.sum(axis=0).tolist()) | set(rest.sum(axis=1).tolist())
    if len(sums) != 1:
        raise DomainError("line sums are not constant")
    perms = []
    while rest.any():
        match = perfect_matching(rest > 0)
        assert match is not None, "regular bipartite multigraph without perfect matching"
        P = np.zeros((k, k), dtype=np.int64)
        P[np.arange(k), match] = 1
        rest -= P
        perms.append(P)
    return perms


@dataclass
class SignedDecomposition:
    shape: tuple[int, int]
    terms: list[tuple[int, SignMatrix]]

    def total(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        for sign, P in self.terms:
            out += sign * P.entries
        return out

    def check(self, A) -> list[str]:
        """Problems with this decomposition of A (empty when it is valid)."""
        problems = []
        if not np.array_equal(self.total(), as_array(A)):
            problems.append("terms do not sum to the matrix")
        seen = np.zeros(self.shape, dtype=np.int64)
        for idx, (sign, P) in enumerate(self.terms):
            e = P.entries
            if sign not in (1, -1):
                problems.append(f"term {idx + 1} has sign {sign}")
            if not set(np.unique(e).tolist()) <= {0, 1} or (e.sum(axis=0) > 1).any() or (e.sum(axis=1) > 1).any():
                problems.append(f"term {idx + 1} is not a subpermutation matrix")
            seen += e
        if (seen > 1).any():
            problems.append("terms overlap")
        return problems

    def __len__(self):
        return len(self.terms)


def _square_padded(a: np.ndarray) -> tuple[np.ndarray, int]:
    # bottom row making every column sum 1, then a square shape
    a = np.vstack([a, 1 - a.sum(axis=0)])
    m, n = a.shape
    if m < n:
        a = np.vstack([a, np.zeros((n - m, n), dtype=a.dtype)])
    elif m > n:
        extra = np.zeros((m, m - n), dtype=a.dtype)
        sums = a.sum(axis=1).copy()
        for c in range(m - n):
            i = int(np.argmin(sums))
            extra[i, c] = 1
            sums[i] += 1
        a = np.hstack([a, extra])
    return a, a.shape[0]


def regular_extension(A) -> np.ndarray:
    """The square (0,+-1)-matrix B = [[A', A1], [A2, A3]] with all line sums p.

    A' is A with a completing bottom row, squared up; p is its largest row
    sum; A1 tops every row up to p with one 1 per column, A2 has one 1 per
    row and p-1 per column, A3 is the circulant with p-1 ones per line.
    """
    srm = require_srm(A)
    sq, N = _square_padded(srm.entries.astype(np.int64))
    r = sq.sum(axis=1)
    p = int(r.max())
    if p == 1:
        return sq
    K = N * (p - 1)
    a1 = np.zeros((N, K), dtype=np.int64)
    col = 0
    for i in range(N):
        for _ in range(p - int(r[i])):
            a1[i, col] = 1
            col += 1
    a2 = np.zeros((K, N), dtype=np.int64)
    a2[np.arange(K), np.arange(K) % N] = 1
    a3 = np.zeros((K, K), dtype=np.int64)
    for s in range(p - 1):
        a3[np.arange(K), (np.arange(K) + s) % K] = 1
    return np.block([[sq, a1], [a2, a3]])


def signed_subperm_decomposition(A) -> SignedDecomposition:
    """Disjoint subpermutation matrices P_i and signs with A = sum sign_i P_i.

    B + J splits into permutation matrices; each +1 of B lies under exactly
    two of them and is kept by the first only, while each -1 of B is taken
    from the circulant permutation of J passing through it.  Cutting back to
    the original block keeps supports disjoint and each piece a
    subpermutation matrix.
    """
    srm = require_srm(A)
    m, n = srm.shape
    B = regular_extension(srm)
    k = B.shape[0]
    perms = permutation_decomposition(B + 1)
    pos = B == 1
    taken = np.zeros_like(pos)
    terms: list[tuple[int, np.ndarray]] = []
    for P in perms:
        piece = (P == 1) & pos & ~taken
        taken |= piece
        terms.append((1, piece))
    assert np.array_equal(taken, pos)
    neg = B == -1
    for s in range(k):
        Q = np.zeros((k, k), dtype=bool)
        Q[np.arange(k), (np.arange(k) + s) % k] = True
        terms.append((-1, Q & neg))
    out = []
    for sign, piece in terms:
        block = piece[:m, :n]
        if block.any():
            out.append((sign, SignMatrix._wrap(block.astype(np.int8))))
    dec = SignedDecomposition((m, n), out)
    problems = dec.check(srm)
    assert not problems, problems
    return dec


def split_pm(A) -> tuple[SignMatrix, SignMatrix]:
    """Positive and negative parts: A = A1 - A2 with disjoint (0,1) supports."""
    a = as_array(A)
    if np.abs(a).max(initial=0) > 1:
        raise DomainError("entries must lie in {-1,0,1}")
    return SignMatrix._wrap((a == 1).astype(np.int8)), SignMatrix._wrap((a == -1).astype(np.int8))


@dataclass(frozen=True)
class JointRealization:
    B1: SignMatrix
    B2: SignMatrix

    def __post_init__(self):
        if self.B1.shape != self.B2.shape:
            raise DomainError("parts differ in shape")
        if ((self.B1.entries == 1) & (self.B2.entries == 1)).any():
            raise DomainError("parts overlap")
        if (self.B1.entries < 0).any() or (self.B2.entries < 0).any():
            raise DomainError("parts must be (0,1)-matrices")

    @property
    def B(self) -> SignMatrix:
        return SignMatrix._wrap(self.B1.entries + self.B2.entries)

    @property
    def difference(self) -> SignMatrix:
        return SignMatrix._wrap(self.B1.entries - self.B2.entries)

    def margins(self) -> tuple[tuple[int, ...], ...]:
        b1, b2 = self.B1.entries, self.B2.entries
        return (
            tuple(b1.sum(axis=1).tolist()),
            tuple(b1.sum(axis=0).tolist()),
            tuple(b2.sum(axis=1).tolist()),
            tuple(b2.sum(axis=0).tolist()),
        )


def find_joint_realization(
    R1: Sequence[int],
    S1: Sequence[int],
    R2: Sequence[int],
    S2: Sequence[int],
    m: int | None = None,
    n: int | None = None,
    max_cells: int | None = None,
) -> JointRealization | None:
    """Exhaustive search for disjoint B1 in A(R1,S1), B2 in A(R2,S2)."""
    m = len(R1) if m is None else m
    n = len(S1) if n is None else n
    if len(R1) != m or len(R2) != m or len(S1) != n or len(S2) != n:
        raise DomainError("margin vector lengths do not match the matrix shape")
    if sum(R1) != sum(S1) or sum(R2) != sum(S2):
        raise DomainError("row and column sums differ")
    for b1 in enumerate_01_class(R1, S1, max_cells=max_cells):
        for b2 in enumerate_01_class(R2, S2, max_cells=max_cells, allowed=b1 == 0):
            return JointRealization(SignMatrix._wrap(b1), SignMatrix._wrap(b2))
    return None


def check_anstee_condition(R: Sequence[int], R1: Sequence[int], S: Sequence[int], S1: Sequence[int]) -> bool:
    """Near-constant R1 criterion: a joint realization exists iff A(R,S) and
    A(R-R1, S-S1) are both nonempty."""
    if len(R) != len(R1) or len(S) != len(S1):
        raise DomainError("margin vector lengths differ")
    if not R1 or min(R1) < 0 or max(R1) - min(R1) > 1:
        raise HypothesisError("R1 must have all entries in {k, k+1} for some k >= 0")
    R2 = [r - x for r, x in zip(R, R1)]
    S2 = [s - x for s, x in zip(S, S1)]
    if min(R2, default=0) < 0 or min(S2, default=0) < 0:
        raise HypothesisError("R - R1 and S - S1 must be nonnegative")
    return gale_ryser(R, S) and gale_ryser(R2, S2)
