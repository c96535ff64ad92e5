"""Bruhat order on SRMs: A <=_B B iff sum_matrix(A) >= sum_matrix(B) entrywise.

Meets and joins are computed on sum-matrices (entrywise max / min) and mapped
back; the nonnegative class is handled by the four-operation transformation
and its cover rules; Hasse diagrams and Birkhoff profiles are built by brute
force over an enumerated class.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache, reduce

import numpy as np

from .core import SignMatrix, Srm, as_array, inverse_sum_matrix, require_srm, sum_matrix, validate_srm
from .enumeration import ALL, PLUS, check_cap, enumerate_srms
from .errors import CapExceeded, DomainError

INTERCHANGE = "BruhatInterchange"
ZERO_TO_UNIT = "ZeroColumnToUnit"
RAISE_UNIT = "RaiseUnitColumn"
SWAP_ZERO = "SwapWithEarlierZeroColumn"
OP_KINDS = (INTERCHANGE, ZERO_TO_UNIT, RAISE_UNIT, SWAP_ZERO)


def _same_shape(A, B):
    if A.shape != B.shape:
        raise DomainError(f"dimension mismatch: {A.shape} vs {B.shape}")


def bruhat_leq(A, B) -> bool:
    a, b = as_array(A), as_array(B)
    _same_shape(a, b)
    return bool((sum_matrix(a) >= sum_matrix(b)).all())


def bruhat_meet(A, B) -> Srm:
    """Greatest lower bound: the SRM whose sum-matrix is max(sum(A), sum(B))."""
    a, b = require_srm(A), require_srm(B)
    _same_shape(a, b)
    c = inverse_sum_matrix(np.maximum(sum_matrix(a), sum_matrix(b)))
    verdict = validate_srm(c)
    if not verdict:
        raise AssertionError(f"meet reconstruction is not an SRM: {verdict.violation}")
    return verdict.srm


def _join_by_search(a: Srm, b: Srm) -> Srm:
    target = np.minimum(sum_matrix(a), sum_matrix(b))
    uppers = [X for X in enumerate_srms(*a.shape) if (sum_matrix(X) <= target).all()]
    for X in uppers:
        sx = sum_matrix(X)
        if all((sx >= sum_matrix(Y)).all() for Y in uppers):
            return X
    raise AssertionError("no least upper bound found")


def bruhat_join(A, B) -> Srm:
    """Least upper bound: reconstruct from min(sum(A), sum(B)).

    Should the reconstruction ever fail to be an SRM, the join is found by
    searching the enumerated class and the event is reported as a warning.
    """
    a, b = require_srm(A), require_srm(B)
    _same_shape(a, b)
    c = inverse_sum_matrix(np.minimum(sum_matrix(a), sum_matrix(b)))
    if np.abs(c).max(initial=0) <= 1:
        verdict = validate_srm(c)
        if verdict:
            return verdict.srm
    warnings.warn("join reconstruction from min of sum-matrices failed; using poset search")
    return _join_by_search(a, b)


def meet_all(mats) -> Srm:
    return reduce(bruhat_meet, mats)


def join_all(mats) -> Srm:
    return reduce(bruhat_join, mats)


def meet_irreducible_decomposition(A) -> list[Srm]:
    """m single-row (0,1)-SRMs whose meet is A.

    Factor i has its only nonzero row at i, with a 1 wherever row i of the
    sum-matrix of A increases (a phantom zero column in front).  A factor is
    meet-irreducible in the lattice only when its ones are consecutive; one
    with a gap, such as [1,0,1], is itself the meet of two larger elements.
    """
    srm = require_srm(A)
    s = sum_matrix(srm)
    m, n = s.shape
    out = []
    for i in range(m):
        row = np.diff(np.concatenate(([0], s[i])))
        a = np.zeros((m, n), dtype=np.int8)
        a[i] = row
        out.append(Srm._wrap(a))
    return out


def is_plus_sum_matrix(S) -> bool:
    """Is S the sum-matrix of an SRM without -1's?

    Conditions (phantom zero row and column):
      s[i,j-1] + s[i-1,j] - s[i-1,j-1] <= s[i,j]   for all i, j
      s[m,j] <= s[m,j-1] + 1                        for all j
    """
    s = as_array(S)
    if (s < 0).any():
        return False
    m, n = s.shape
    p = np.zeros((m + 1, n + 1), dtype=np.int64)
    p[1:, 1:] = s
    if (p[1:, :-1] + p[:-1, 1:] - p[:-1, :-1] > p[1:, 1:]).any():
        return False
    return bool((p[m, 1:] <= p[m, :-1] + 1).all())


@dataclass(frozen=True)
class BruhatOp:
    """One of the four order-decreasing moves on (0,1)-SRMs (1-based indices).

    BruhatInterchange          rows=(i,k), cols=(j,l): [[0,1],[1,0]] -> identity
    ZeroColumnToUnit           rows=(i,),  cols=(j,):  zero column j -> e_i
    RaiseUnitColumn            rows=(k,i), cols=(j,):  column e_k -> e_i, i<k
    SwapWithEarlierZeroColumn  rows=(),    cols=(j,l): swap zero column j with nonzero column l, j<l
    """

    kind: str
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in OP_KINDS:
            raise DomainError(f"unknown Bruhat operation {self.kind!r}")

    def __str__(self):
        r = ",".join(map(str, self.rows))
        c = ",".join(map(str, self.cols))
        return f"{self.kind} rows=({r}) cols=({c})"


def apply_bruhat_op(M, op: BruhatOp) -> SignMatrix:
    a = as_array(M)
    m, n = a.shape
    rows = [r - 1 for r in op.rows]
    cols = [c - 1 for c in op.cols]
    if any(not 0 <= r < m for r in rows) or any(not 0 <= c < n for c in cols):
        raise DomainError(f"{op} out of range for shape {a.shape}")
    b = a.copy()
    if op.kind == INTERCHANGE:
        (i, k), (j, l) = rows, cols
        if not (i < k and j < l) or [a[i, j], a[i, l], a[k, j], a[k, l]] != [0, 1, 1, 0]:
            raise DomainError(f"{op} is not applicable")
        b[i, j], b[i, l], b[k, j], b[k, l] = 1, 0, 0, 1
    elif op.kind == ZERO_TO_UNIT:
        (i,), (j,) = rows, cols
        if a[:, j].any():
            raise DomainError(f"{op}: column is not zero")
        b[i, j] = 1
    elif op.kind == RAISE_UNIT:
        (k, i), (j,) = rows, cols
        unit = np.zeros(m, dtype=np.int64)
        unit[k] = 1
        if not i < k or not np.array_equal(a[:, j], unit):
            raise DomainError(f"{op} is not applicable")
        b[k, j], b[i, j] = 0, 1
    else:
        (j, l) = cols
        if not j < l or a[:, j].any() or not a[:, l].any():
            raise DomainError(f"{op} is not applicable")
        b[:, [j, l]] = a[:, [l, j]]
    return SignMatrix._wrap(b)


def _is_column_class(a: np.ndarray) -> bool:
    return set(np.unique(a).tolist()) <= {0, 1} and (a.sum(axis=0) == 1).all()


def _swapped(cur: np.ndarray, j: int, j2: int) -> np.ndarray:
    new = cur.copy()
    new[:, [j, j2]] = cur[:, [j2, j]]
    return new


def _undo_step(cur: np.ndarray, c: np.ndarray, sc: np.ndarray):
    s = sum_matrix(cur)
    k, l = (int(x) for x in np.argwhere(s != sc)[0])
    assert cur[k, l] == 1 and c[k, l] == 0
    t = next(j for j in range(l + 1, cur.shape[1]) if cur[k, j] == 0 and c[k, j] == 1)
    dr, dc = min(np.argwhere(cur[k + 1 :, l + 1 : t + 1] == 1).tolist())
    new = _swapped(cur, l, l + 1 + dc)
    if (sum_matrix(new) >= sc).all():
        return new, l, l + 1 + dc
    rows = cur.argmax(axis=0)
    n = cur.shape[1]
    for j in range(n):
        for j2 in range(j + 1, n):
            if rows[j] < rows[j2]:
                new = _swapped(cur, j, j2)
                if (sum_matrix(new) >= sc).all():
                    return new, j, j2
    raise AssertionError("no dominance-preserving inverse interchange")


def bruhat_interchange_sequence(C, A) -> list[BruhatOp]:
    """Bruhat interchanges turning C into A, for (0,1)-matrices with all
    column sums 1, equal row sums, and sum(A) >= sum(C).

    Works backwards from A: locate the first row k and column l where the
    sum-matrices differ, the first later column t where C has its 1 in row k,
    and the uppermost (then leftmost) 1 of A below row k in columns l+1..t;
    swapping its column with column l undoes one Bruhat interchange.  That
    swap can push the sum-matrix below that of C (e.g. A = [[1,1,0,0],
    [0,0,0,1],[0,0,1,0]], C = [[0,0,1,1],[1,0,0,0],[0,1,0,0]]); then the
    first column pair, in lex order, whose swap keeps dominance is used.
    """
    c, a = as_array(C), as_array(A)
    _same_shape(a, c)
    if not (_is_column_class(a) and _is_column_class(c)):
        raise DomainError("matrices must be (0,1) with every column sum equal to 1")
    if not np.array_equal(a.sum(axis=1), c.sum(axis=1)):
        raise DomainError("row sums differ")
    sc = sum_matrix(c)
    if not (sum_matrix(a) >= sc).all():
        raise DomainError("sum_matrix(A) >= sum_matrix(C) fails")
    cur = a.copy()
    backwards = []
    while not np.array_equal(cur, c):
        new, l, l2 = _undo_step(cur, c, sc)
        rows = cur.argmax(axis=0)
        backwards.append(BruhatOp(INTERCHANGE, (int(rows[l]) + 1, int(rows[l2]) + 1), (l + 1, l2 + 1)))
        cur = new
    return list(reversed(backwards))


def _require_plus(M) -> Srm:
    srm = require_srm(M)
    if (srm.entries < 0).any():
        raise DomainError("matrix must have no -1 entries")
    return srm


def _pad_units(x: np.ndarray, deficits: np.ndarray, extra: int) -> np.ndarray:
    # append `extra` unit columns, each row taking the earliest free ones in turn
    y = np.zeros((x.shape[0], x.shape[1] + extra), dtype=np.int64)
    y[:, : x.shape[1]] = x
    col = x.shape[1]
    for i, d in enumerate(deficits):
        for _ in range(int(d)):
            y[i, col] = 1
            col += 1
    return y


def bruhat_op_sequence(C, A) -> list[BruhatOp]:
    """The four-operation sequence turning C into A, for A <=_B C in S+.

    Both matrices get an extra bottom row making every column sum 1, then
    unit columns on the right equalising the row sums; the Bruhat
    interchanges between the padded matrices are read back as operations on
    the original block according to which padding blocks they touch.
    """
    c, a = _require_plus(C), _require_plus(A)
    _same_shape(a, c)
    if not bruhat_leq(a, c):
        raise DomainError("A <=_B C does not hold")
    m, n = a.shape
    ae = np.vstack([a.entries, 1 - a.entries.sum(axis=0)]).astype(np.int64)
    ce = np.vstack([c.entries, 1 - c.entries.sum(axis=0)]).astype(np.int64)
    p, q = ae.sum(axis=1), ce.sum(axis=1)
    target = np.maximum(p, q)
    extra = int((target - p).sum())
    a2 = _pad_units(ae, target - p, extra)
    c2 = _pad_units(ce, target - q, extra)
    ops = []
    for step in bruhat_interchange_sequence(c2, a2):
        (i, k), (j, l) = step.rows, step.cols
        if j > n:
            continue
        if k <= m and l <= n:
            ops.append(step)
        elif k == m + 1 and l > n:
            ops.append(BruhatOp(ZERO_TO_UNIT, (i,), (j,)))
        elif k <= m and l > n:
            ops.append(BruhatOp(RAISE_UNIT, (k, i), (j,)))
        else:
            ops.append(BruhatOp(SWAP_ZERO, (), (j, l)))
    cur = c
    for op in ops:
        cur = apply_bruhat_op(cur, op)
    assert cur == a
    return ops


def lower_cover_moves(A) -> list[tuple[BruhatOp, SignMatrix]]:
    """Local moves from A that raise the total of the sum-matrix by exactly 1.

    Bruhat interchanges inside consecutive rows and columns; in the last
    column, a zero column becoming e_m or e_j becoming e_{j-1}; and swapping
    a column whose 1 sits in the last row with a zero column just before it.
    Each result is covered by A in (S+, <=_B), but not every cover arises
    this way: in S+ a cover can raise the total by more than 1 (for example
    [[0,1],[1,0]] <_B [[0,1],[0,0]]).
    """
    srm = _require_plus(A)
    a = srm.entries
    m, n = a.shape
    moves = []
    for i in range(m - 1):
        for j in range(n - 1):
            if [a[i, j], a[i, j + 1], a[i + 1, j], a[i + 1, j + 1]] == [0, 1, 1, 0]:
                moves.append(BruhatOp(INTERCHANGE, (i + 1, i + 2), (j + 1, j + 2)))
    last = a[:, n - 1]
    if not last.any():
        moves.append(BruhatOp(ZERO_TO_UNIT, (m,), (n,)))
    else:
        r = int(np.argmax(last))
        if r > 0:
            moves.append(BruhatOp(RAISE_UNIT, (r + 1, r), (n,)))
    for j in range(1, n):
        if a[m - 1, j] == 1 and not a[:, j - 1].any():
            moves.append(BruhatOp(SWAP_ZERO, (), (j, j + 1)))
    return [(op, apply_bruhat_op(srm, op)) for op in moves]


def covers(A, B, max_cells: int | None = None) -> bool:
    """Does B cover A in (S+_{m,n}, <=_B)?  Decided against the enumerated class."""
    a, b = _require_plus(A), _require_plus(B)
    _same_shape(a, b)
    if a == b or not bruhat_leq(a, b):
        return False
    sa, sb = sum_matrix(a), sum_matrix(b)
    for Z in enumerate_srms(*a.shape, PLUS, max_cells=max_cells):
        if Z == a or Z == b:
            continue
        sz = sum_matrix(Z)
        if (sa >= sz).all() and (sz >= sb).all():
            return False
    return True


@dataclass
class HasseDiagram:
    nodes: list[Srm]
    edges: list[tuple[int, int]]  # (lower, upper) node indices
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {M: i for i, M in enumerate(self.nodes)}

    def index(self, M) -> int:
        return self._index[M if isinstance(M, SignMatrix) else SignMatrix(M)]

    def lower_covers(self, i: int) -> list[int]:
        return [lo for lo, up in self.edges if up == i]

    def upper_covers(self, i: int) -> list[int]:
        return [up for lo, up in self.edges if lo == i]

    def join_irreducibles(self) -> list[int]:
        return [i for i in range(len(self.nodes)) if len(self.lower_covers(i)) == 1]

    def meet_irreducibles(self) -> list[int]:
        return [i for i in range(len(self.nodes)) if len(self.upper_covers(i)) == 1]

    def edge_set(self) -> set[tuple[SignMatrix, SignMatrix]]:
        return {(self.nodes[lo], self.nodes[up]) for lo, up in self.edges}

    def to_dot(self, name: str = "bruhat") -> str:
        lines = [f"digraph {name} {{"]
        for i, M in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{M.flat_label()}"];')
        for lo, up in self.edges:
            lines.append(f"  n{lo} -> n{up};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def leq_matrix(nodes) -> np.ndarray:
    """Boolean matrix L with L[x,y] = nodes[x] <=_B nodes[y]."""
    sums = np.array([sum_matrix(M).ravel() for M in nodes])
    return (sums[:, None, :] >= sums[None, :, :]).all(axis=2)


def hasse_diagram(m: int, n: int, plus_only: bool = False, max_cells: int | None = None, max_nodes: int = 5000) -> HasseDiagram:
    """Cover relation of the enumerated class, by transitive reduction of <=_B."""
    return _hasse(m, n, plus_only, max_cells, max_nodes)


@lru_cache(maxsize=16)
def _hasse(m, n, plus_only, max_cells, max_nodes) -> HasseDiagram:
    check_cap(m, n, max_cells)
    nodes = []
    for M in enumerate_srms(m, n, PLUS if plus_only else ALL, max_cells=max_cells):
        nodes.append(M)
        if len(nodes) > max_nodes:
            raise CapExceeded(f"class has more than {max_nodes} elements")
    leq = leq_matrix(nodes)
    strict = leq & ~np.eye(len(nodes), dtype=bool)
    s = strict.astype(np.float64)
    through = (s @ s) > 0.5
    cover = strict & ~through
    edges = [(int(x), int(y)) for x, y in np.argwhere(cover)]
    return HasseDiagram(nodes, edges)


@dataclass(frozen=True)
class IrreducibleProfile:
    join_irreducibles: tuple[Srm, ...]
    below: tuple[int, ...]
    meet_irreducibles: tuple[Srm, ...]
    above: tuple[int, ...]


def irreducible_profile(A, m: int | None = None, n: int | None = None, max_cells: int | None = None) -> IrreducibleProfile:
    """Birkhoff representation row of A in the lattice (S_{m,n}, <=_B).

    ``below`` flags the join-irreducibles u <=_B A, ``above`` the
    meet-irreducibles u >=_B A; both follow the diagram's node order.
    """
    srm = require_srm(A)
    m = srm.rows if m is None else m
    n = srm.cols if n is None else n
    if srm.shape != (m, n):
        raise DomainError("matrix shape does not match (m, n)")
    h = hasse_diagram(m, n, plus_only=False, max_cells=max_cells)
    ji = [h.nodes[i] for i in h.join_irreducibles()]
    mi = [h.nodes[i] for i in h.meet_irreducibles()]
    return IrreducibleProfile(
        tuple(ji),
        tuple(int(bruhat_leq(u, srm)) for u in ji),
        tuple(mi),
        tuple(int(bruhat_leq(srm, u)) for u in mi),
    )
