"""Exact-rational polytope checks: the c-SRM polytope and the A^+- hull.

The c-SRM polytope is cut out by
    row prefix sums >= 0,   0 <= column prefix sums <= 1,   row sums <= c,
and the hull of A^+-(R,S) (square matrices) by the margin equalities plus
-1 <= a_ij <= 1.  No floating point is used anywhere here.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import SignMatrix
from .enumeration import ClassFilter, check_cap, enumerate_srms
from .errors import DomainError

RationalMatrix = list[list[Fraction]]


def to_rational(X) -> RationalMatrix:
    if isinstance(X, SignMatrix):
        X = X.tolist()
    try:
        rows = [[Fraction(v) if not isinstance(v, str) else Fraction(v.strip()) for v in row] for row in X]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad rational entry: {exc}") from None
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise DomainError("matrix must be a nonempty rectangle")
    return rows


def parse_rational_matrix(text: str) -> RationalMatrix:
    """Same layout as integer matrices ("m n" header, then rows, or JSON), entries like 1/2."""
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        return to_rational(data["entries"])
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DomainError("empty matrix text")
    header = lines[0].split()
    try:
        m, n = int(header[0]), int(header[1])
    except (ValueError, IndexError):
        raise DomainError(f"bad header line {lines[0]!r}; expected 'm n'") from None
    rows = [ln.split() for ln in lines[1:]]
    if len(rows) != m or any(len(r) != n for r in rows):
        raise DomainError("matrix body does not match the declared shape")
    return to_rational(rows)


def format_rational(X: RationalMatrix) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in X)


@dataclass(frozen=True)
class Constraint:
    """sum(coef[cell] * x[cell]) <sense> rhs, cells as 0-based (i, j)."""

    label: str
    cells: tuple[tuple[int, int], ...]
    sense: str  # ">=", "<=", "=="
    rhs: int

    def value(self, X: RationalMatrix) -> Fraction:
        return sum((X[i][j] for i, j in self.cells), Fraction(0))

    def holds(self, X: RationalMatrix) -> bool:
        v = self.value(X)
        if self.sense == ">=":
            return v >= self.rhs
        if self.sense == "<=":
            return v <= self.rhs
        return v == self.rhs

    def tight(self, X: RationalMatrix) -> bool:
        return self.value(X) == self.rhs

    def __str__(self):
        return f"{self.label} {self.sense} {self.rhs}"


@dataclass(frozen=True)
class PolytopeSpec:
    m: int
    n: int
    c: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DomainError("dimensions must be positive")
        if self.c < 0:
            raise DomainError("c must be nonnegative")

    @property
    def shape(self):
        return (self.m, self.n)

    def constraints(self) -> list[Constraint]:
        out = []
        for i in range(self.m):
            for j in range(self.n):
                col = tuple((k, j) for k in range(i + 1))
                row = tuple((i, l) for l in range(j + 1))
                out.append(Constraint(f"column {j + 1} prefix sum to row {i + 1}", col, ">=", 0))
                out.append(Constraint(f"column {j + 1} prefix sum to row {i + 1}", col, "<=", 1))
                out.append(Constraint(f"row {i + 1} prefix sum to column {j + 1}", row, ">=", 0))
        for i in range(self.m):
            out.append(Constraint(f"row {i + 1} sum", tuple((i, l) for l in range(self.n)), "<=", self.c))
        return out


@dataclass(frozen=True)
class PmHullSpec:
    R: tuple[int, ...]
    S: tuple[int, ...]

    def __init__(self, R: Sequence[int], S: Sequence[int]):
        if len(R) != len(S):
            raise DomainError("the A^+- hull description is for square matrices")
        object.__setattr__(self, "R", tuple(int(r) for r in R))
        object.__setattr__(self, "S", tuple(int(s) for s in S))

    @property
    def shape(self):
        return (len(self.R), len(self.S))

    def constraints(self) -> list[Constraint]:
        m, n = self.shape
        out = []
        for i in range(m):
            for j in range(n):
                out.append(Constraint(f"entry ({i + 1},{j + 1})", ((i, j),), ">=", -1))
                out.append(Constraint(f"entry ({i + 1},{j + 1})", ((i, j),), "<=", 1))
        for i, r in enumerate(self.R):
            out.append(Constraint(f"row {i + 1} sum", tuple((i, l) for l in range(n)), "==", r))
        for j, s in enumerate(self.S):
            out.append(Constraint(f"column {j + 1} sum", tuple((k, j) for k in range(m)), "==", s))
        return out


@dataclass(frozen=True)
class Membership:
    inside: bool
    violated: Constraint | None = None
    value: Fraction | None = None

    def __bool__(self):
        return self.inside

    def __str__(self):
        if self.inside:
            return "inside"
        return f"violates {self.violated}: value {self.value}"


def polytope_contains(X, spec: PolytopeSpec | PmHullSpec) -> Membership:
    x = to_rational(X)
    if (len(x), len(x[0])) != spec.shape:
        raise DomainError(f"matrix is {len(x)}x{len(x[0])}, polytope is {spec.shape[0]}x{spec.shape[1]}")
    for con in spec.constraints():
        if not con.holds(x):
            return Membership(False, con, con.value(x))
    return Membership(True)


def pm_hull_contains(X, R: Sequence[int], S: Sequence[int]) -> Membership:
    return polytope_contains(X, PmHullSpec(R, S))


def rank(rows: list[list[Fraction]]) -> int:
    """Rank by exact Gaussian elimination."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return 0
    width = len(mat[0])
    r = 0
    for col in range(width):
        piv = next((k for k in range(r, len(mat)) if mat[k][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for k in range(len(mat)):
            if k != r and mat[k][col] != 0:
                f = mat[k][col] / mat[r][col]
                mat[k] = [a - f * b for a, b in zip(mat[k], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def solve_unique(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """The unique solution of A x = b, or None if there is none or many."""
    k = len(A[0])
    aug = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        lead = aug[r][col]
        aug[r] = [v / lead for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * c for a, c in zip(aug[i], aug[r])]
        r += 1
    if any(row[k] != 0 for row in aug[r:]):
        return None
    return [aug[i][k] for i in range(k)]


def is_vertex(A, spec: PolytopeSpec | PmHullSpec) -> bool:
    """Does the system of constraints tight at A pin A down uniquely?"""
    x = to_rational(A)
    mem = polytope_contains(x, spec)
    if not mem:
        raise DomainError(f"not a member of the polytope: {mem}")
    m, n = spec.shape
    rows = []
    for con in spec.constraints():
        if con.tight(x):
            v = [Fraction(0)] * (m * n)
            for i, j in con.cells:
                v[i * n + j] += 1
            rows.append(v)
    return rank(rows) == m * n


def in_convex_hull(x: Sequence, points: Sequence[Sequence]) -> list[Fraction] | None:
    """Exact test whether x is a convex combination of ``points``.

    By Caratheodory some affinely independent subset suffices, and then the
    weights are the unique solution of a square-or-tall linear system; every
    subset of size up to dim+1 is tried.  Returns the weights (aligned with
    ``points``) or None.
    """
    x = [Fraction(v) for v in x]
    pts = [[Fraction(v) for v in p] for p in points]
    dim = len(x)
    for size in range(1, min(dim + 1, len(pts)) + 1):
        for subset in itertools.combinations(range(len(pts)), size):
            A = [[pts[s][t] for s in subset] for t in range(dim)] + [[Fraction(1)] * size]
            lam = solve_unique(A, x + [Fraction(1)])
            if lam is not None and all(v >= 0 for v in lam):
                out = [Fraction(0)] * len(pts)
                for s, v in zip(subset, lam):
                    out[s] = v
                return out
    return None


def alternating_extreme_check(x: Sequence[int]) -> bool:
    """Is x nonzero with its nonzeros alternating 1, -1, 1, ... starting at 1?"""
    nz = [v for v in x if v != 0]
    if not nz or any(v not in (1, -1) for v in nz):
        return False
    return all(v == (1 if k % 2 == 0 else -1) for k, v in enumerate(nz))


def alternating_vectors(n: int) -> list[tuple[int, ...]]:
    """The set X_n: all nonzero alternating (0,+-1)-vectors of length n."""
    return [x for x in itertools.product((-1, 0, 1), repeat=n) if alternating_extreme_check(x)]


def extreme_in_alternating_hull(x: Sequence[int]) -> bool:
    """Is x an extreme point of conv(X_n), by exhaustive combination search?"""
    others = [y for y in alternating_vectors(len(x)) if tuple(y) != tuple(x)]
    return in_convex_hull(x, others) is None


def _integral_points(m: int, n: int, c: int):
    # every integral point of the c-SRM system; prefix bounds force entries into {-1,0,1}
    a = [[0] * n for _ in range(m)]
    colpre = [0] * n

    def rec(pos: int, rowpre: int):
        if pos == m * n:
            yield tuple(tuple(r) for r in a)
            return
        i, j = divmod(pos, n)
        if j == 0:
            rowpre = 0
        for v in (-1, 0, 1):
            cp, rp = colpre[j] + v, rowpre + v
            if not (0 <= cp <= 1 and rp >= 0):
                continue
            if j == n - 1 and rp > c:
                continue
            a[i][j] = v
            colpre[j] = cp
            yield from rec(pos + 1, rp)
            colpre[j] -= v
            a[i][j] = 0

    yield from rec(0, 0)


@dataclass
class PolytopeReport:
    m: int
    n: int
    c: int
    integral_points: int
    class_size: int
    same_set: bool
    all_vertices: bool
    full_class_equal: bool | None  # only checked when c >= n

    @property
    def ok(self) -> bool:
        return self.same_set and self.all_vertices and self.full_class_equal is not False

    def lines(self) -> list[str]:
        out = [
            f"c-SRM polytope m={self.m} n={self.n} c={self.c}",
            f"integral points of the system: {self.integral_points}",
            f"c-SRMs enumerated:             {self.class_size}",
            f"same set:                      {self.same_set}",
            f"all integral points vertices:  {self.all_vertices}",
        ]
        if self.full_class_equal is not None:
            out.append(f"equals full SRM class (c>=n):  {self.full_class_equal}")
        out.append("PASS" if self.ok else "FAIL")
        return out


def verify_polytope(m: int, n: int, c: int, max_cells: int | None = None) -> PolytopeReport:
    """Compare the integral points of the c-SRM system with the enumerated c-SRMs
    and check each is a vertex."""
    check_cap(m, n, max_cells)
    spec = PolytopeSpec(m, n, c)
    points = set(_integral_points(m, n, c))
    klass = {tuple(map(tuple, M.tolist())) for M in enumerate_srms(m, n, ClassFilter(c_bound=c), max_cells=max_cells)}
    all_vertices = all(is_vertex([list(r) for r in p], spec) for p in points)
    full = None
    if c >= n:
        full = klass == {tuple(map(tuple, M.tolist())) for M in enumerate_srms(m, n, max_cells=max_cells)}
    return PolytopeReport(m, n, c, len(points), len(klass), points == klass, all_vertices, full)

