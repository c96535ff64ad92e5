"""Sign matrices, SRM validation, sum-matrices, margins and the extremal constructions.

All row/column positions reported by this package are 1-based, matching the
usual matrix notation a_{ij}.  Internally matrices are numpy arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "SignMatrix",
    "Srm",
    "Violation",
    "Verdict",
    "MarginPair",
    "Multichain",
    "as_array",
    "validate_srm",
    "is_srm",
    "require_srm",
    "sum_matrix",
    "inverse_sum_matrix",
    "margins",
    "realizable_margins",
    "canonical_staircase",
    "max_nonzeros",
    "extremal_column_counts",
    "extremal_srm",
    "multichain_of",
    "srm_of_multichain",
    "parse_matrix",
    "parse_matrices",
]


class SignMatrix:
    """Immutable m x n matrix with entries in {-1, 0, 1}.

    Equality and hashing depend only on the entries, so an ``Srm`` compares
    equal to a plain ``SignMatrix`` holding the same numbers.
    """

    __slots__ = ("_a", "_hash")

    def __init__(self, entries):
        try:
            a = np.array(entries, dtype=np.int64)
        except (ValueError, TypeError) as exc:
            raise DomainError(f"not a rectangular integer matrix: {exc}") from None
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise DomainError(f"expected a non-empty 2-d matrix, got shape {a.shape}")
        if np.any((a < -1) | (a > 1)):
            raise DomainError("entries must lie in {-1, 0, 1}")
        self._a = a.astype(np.int8)
        self._a.flags.writeable = False
        self._hash = None

    @classmethod
    def _wrap(cls, a: np.ndarray):
        # caller guarantees a is 2-d with entries in {-1,0,1}
        obj = cls.__new__(cls)
        arr = np.array(a, dtype=np.int8)
        arr.flags.writeable = False
        obj._a = arr
        obj._hash = None
        return obj

    @property
    def entries(self) -> np.ndarray:
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    def nonzeros(self) -> int:
        return int(np.count_nonzero(self._a))

    def count(self, value: int) -> int:
        return int(np.count_nonzero(self._a == value))

    def tolist(self) -> list[list[int]]:
        return self._a.astype(int).tolist()

    def key(self) -> tuple:
        """Hashable (shape, column-major entries) key; sorts in enumeration order."""
        return (self.shape, tuple(self._a.T.ravel().tolist()))

    def __eq__(self, other):
        if not isinstance(other, SignMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._a, other._a)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self._a.tobytes()))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.tolist()})"

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(int(v)) for v in row) for row in self._a]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.tolist()}

    def flat_label(self) -> str:
        """Row-major entries joined by commas, rows joined by semicolons."""
        return ";".join(",".join(str(int(v)) for v in row) for row in self._a)


class Srm(SignMatrix):
    """A sign matrix certified to satisfy both SRM prefix conditions.

    Only produced by :func:`validate_srm` and by constructions whose output is
    known to be an SRM; the optional ``c_bound`` records a row-sum cap.
    """

    __slots__ = ("c_bound",)

    @classmethod
    def _wrap(cls, a, c_bound=None):
        obj = super()._wrap(a)
        obj.c_bound = c_bound
        return obj


def as_array(M) -> np.ndarray:
    """Return a fresh int64 copy of ``M`` (SignMatrix or array-like)."""
    if isinstance(M, SignMatrix):
        return M.entries.astype(np.int64)
    a = np.array(M, dtype=np.int64)
    if a.ndim != 2:
        raise DomainError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class Violation:
    kind: str  # "column" or "row"
    row: int
    col: int
    value: int

    def __str__(self):
        index = self.col if self.kind == "column" else self.row
        return f"{self.kind} {index} prefix sum {self.value} at ({self.row},{self.col})"


@dataclass(frozen=True)
class Verdict:
    valid: bool
    srm: Srm | None = None
    violation: Violation | None = None

    def __bool__(self):
        return self.valid


def validate_srm(M) -> Verdict:
    """Check the column prefix sums lie in {0,1} and row prefix sums are >= 0.

    On failure the earliest violated prefix in row-major order is reported,
    the column condition being checked before the row condition at a cell.
    """
    if isinstance(M, SignMatrix):
        sm = M
    else:
        sm = SignMatrix(M)
    a = sm.entries.astype(np.int64)
    colpre = np.cumsum(a, axis=0)
    rowpre = np.cumsum(a, axis=1)
    bad_col = (colpre < 0) | (colpre > 1)
    bad_row = rowpre < 0
    bad = bad_col | bad_row
    if not bad.any():
        return Verdict(True, srm=Srm._wrap(sm.entries))
    i, j = np.argwhere(bad)[0]
    if bad_col[i, j]:
        v = Violation("column", int(i) + 1, int(j) + 1, int(colpre[i, j]))
    else:
        v = Violation("row", int(i) + 1, int(j) + 1, int(rowpre[i, j]))
    return Verdict(False, violation=v)


def is_srm(M) -> bool:
    try:
        return validate_srm(M).valid
    except DomainError:
        return False


def require_srm(M) -> Srm:
    if isinstance(M, Srm):
        return M
    verdict = validate_srm(M)
    if not verdict:
        raise DomainError(f"not an SRM: {verdict.violation}")
    return verdict.srm


def sum_matrix(M) -> np.ndarray:
    """Leading-submatrix sums: entry (i,j) is the sum of the top-left i x j block."""
    return np.cumsum(np.cumsum(as_array(M), axis=0), axis=1)


def inverse_sum_matrix(S) -> np.ndarray:
    """Second finite difference with a phantom zero row and column.

    Inverts :func:`sum_matrix` on all integer matrices; the result is an
    integer array that may fall outside {-1,0,1}.
    """
    s = as_array(S)
    padded = np.zeros((s.shape[0] + 1, s.shape[1] + 1), dtype=np.int64)
    padded[1:, 1:] = s
    return padded[1:, 1:] - padded[:-1, 1:] - padded[1:, :-1] + padded[:-1, :-1]


@dataclass(frozen=True)
class MarginPair:
    R: tuple[int, ...]
    S: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "R", tuple(int(x) for x in self.R))
        object.__setattr__(self, "S", tuple(int(x) for x in self.S))

    @property
    def m(self) -> int:
        return len(self.R)

    @property
    def n(self) -> int:
        return len(self.S)


def margins(M) -> MarginPair:
    a = as_array(M)
    return MarginPair(tuple(a.sum(axis=1).tolist()), tuple(a.sum(axis=0).tolist()))


def realizable_margins(R: Sequence[int], S: Sequence[int]) -> bool:
    """True iff some SRM has row sums R and column sums S.

    That is, S is a (0,1)-vector and the two vectors have the same total.
    """
    if any(r < 0 for r in R) or any(s < 0 for s in S):
        return False
    return all(s in (0, 1) for s in S) and sum(R) == sum(S)


def canonical_staircase(R: Sequence[int], S: Sequence[int]) -> Srm:
    """The unique (0,1)-SRM with margins (R,S) whose ones form a staircase.

    Skipping columns with s_j = 0, row 1 takes the first r_1 ones, row 2 the
    next r_2, and so on.
    """
    if not R or not S:
        raise DomainError("margin vectors must be non-empty")
    if not realizable_margins(R, S):
        raise DomainError(f"margins R={tuple(R)}, S={tuple(S)} are not realizable by an SRM")
    a = np.zeros((len(R), len(S)), dtype=np.int8)
    cols = iter([j for j, s in enumerate(S) if s == 1])
    for i, r in enumerate(R):
        for _ in range(r):
            a[i, next(cols)] = 1
    return Srm._wrap(a)


def max_nonzeros(m: int, n: int) -> int:
    """Maximum number of nonzeros in an m x n SRM.

    For m >= 2 and n at least ceil((m+1)/2) this is the closed form

        m even:  mn - m^2/4 - ceil((n - m/2 - 1)/2)
        m odd:   mn - (m^2-1)/4 - ceil((n - (m+1)/2)/2)

    For narrower matrices every column k can still be filled with 2k-1
    alternating nonzeros, giving n^2.  A single row holds n ones.
    """
    if m < 1 or n < 1:
        raise DomainError("dimensions must be positive")
    if m == 1:
        return n
    if n < (m + 2) // 2:
        return n * n
    if m % 2 == 0:
        x = n - m // 2 - 1
        return m * n - m * m // 4 - (-(-x // 2))
    x = n - (m + 1) // 2
    return m * n - (m * m - 1) // 4 - (-(-x // 2))


def _extremal_bands(m: int, n: int) -> list[tuple[int, int]]:
    # 0-based inclusive row range of the nonzero band in each column
    if m == 1:
        return [(0, 0)] * n
    center = m // 2  # 0-based; the (m//2 + 1)-th row
    ramp = (m + 2) // 2  # column index (1-based) where the band first spans m rows
    bands = []
    for k in range(1, n + 1):
        if k <= ramp:
            bands.append((max(0, center - (k - 1)), min(m - 1, center + (k - 1))))
        elif (k - ramp) % 2 == 1:
            bands.append((1, m - 1))
        else:
            bands.append((0, m - 1))
    return bands


def extremal_column_counts(m: int, n: int) -> list[int]:
    return [hi - lo + 1 for lo, hi in _extremal_bands(m, n)]


def extremal_srm(m: int, n: int) -> Srm:
    """An m x n SRM with :func:`max_nonzeros` nonzeros.

    Column 1 holds a single 1 in the middle row; each following column widens
    the alternating band by one row above and below until it spans all m rows,
    after which columns alternate between m-1 (rows 2..m) and m nonzeros.
    """
    if m < 1 or n < 1:
        raise DomainError("dimensions must be positive")
    a = np.zeros((m, n), dtype=np.int8)
    for j, (lo, hi) in enumerate(_extremal_bands(m, n)):
        for t, i in enumerate(range(lo, hi + 1)):
            a[i, j] = 1 if t % 2 == 0 else -1
    verdict = validate_srm(a)
    assert verdict, verdict.violation
    return verdict.srm


@dataclass(frozen=True)
class Multichain:
    """Weakly increasing subsets X_1 <= ... <= X_m of {1..n}, stored as bitsets.

    Bit j-1 of ``subsets[i-1]`` is set when column j belongs to X_i.
    """

    n: int
    subsets: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= 63:
            raise DomainError("multichains support 1 <= n <= 63")
        object.__setattr__(self, "subsets", tuple(int(x) for x in self.subsets))
        full = (1 << self.n) - 1
        prev = 0
        for x in self.subsets:
            if x & ~full:
                raise DomainError("subset mentions a column beyond n")
            if prev & ~x:
                raise DomainError("subsets are not weakly increasing")
            prev = x

    @property
    def length(self) -> int:
        return len(self.subsets)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "Multichain":
        return cls(n, tuple(sum(1 << (j - 1) for j in set(s)) for s in sets))

    def as_sets(self) -> list[set[int]]:
        return [{j + 1 for j in range(self.n) if x >> j & 1} for x in self.subsets]


def multichain_of(M) -> Multichain:
    """Multichain of an SRM without -1's: X_i = columns with a 1 in rows 1..i."""
    srm = require_srm(M)
    a = srm.entries
    if (a < 0).any():
        raise DomainError("multichain correspondence requires a matrix without -1 entries")
    pre = np.cumsum(a, axis=0)
    subsets = tuple(sum(1 << j for j in range(a.shape[1]) if pre[i, j]) for i in range(a.shape[0]))
    return Multichain(a.shape[1], subsets)


def srm_of_multichain(C: Multichain) -> Srm:
    if C.length < 1:
        raise DomainError("multichain must have length >= 1")
    a = np.zeros((C.length, C.n), dtype=np.int8)
    prev = 0
    for i, x in enumerate(C.subsets):
        new = x & ~prev
        for j in range(C.n):
            if new >> j & 1:
                a[i, j] = 1
        prev = x
    return Srm._wrap(a)


def parse_matrix(text: str) -> SignMatrix:
    """Parse one matrix from the canonical text format or the JSON format."""
    mats = parse_matrices(text)
    if len(mats) != 1:
        raise DomainError(f"expected exactly one matrix, found {len(mats)}")
    return mats[0]


def parse_matrices(text: str) -> list[SignMatrix]:
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        data = json.loads(stripped)
        items = data if isinstance(data, list) else [data]
        out = []
        for item in items:
            entries = item["entries"]
            sm = SignMatrix(entries)
            if sm.shape != (item["rows"], item["cols"]):
                raise DomainError("JSON rows/cols disagree with entries")
            out.append(sm)
        return out
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    out = []
    pos = 0
    while pos < len(lines):
        header = lines[pos].split()
        if len(header) != 2:
            raise DomainError(f"bad header line {lines[pos]!r}; expected 'm n'")
        m, n = (int(x) for x in header)
        body = lines[pos + 1 : pos + 1 + m]
        if len(body) != m:
            raise DomainError("matrix body shorter than declared row count")
        rows = []
        for ln in body:
            row = [int(x) for x in ln.split()]
            if len(row) != n:
                raise DomainError(f"row {ln!r} does not have {n} entries")
            rows.append(row)
        out.append(SignMatrix(rows))
        pos += 1 + m
    return out
