"""Generalized incidence matrices of digraphs with loops, and SRM orderings.

A digraph D on vertices 1..n, with a loop at each vertex of S, has an SRM
incidence matrix (loop unit columns first) under some row/column order iff
D is acyclic and every vertex has indegree - outdegree <= 1, with equality
only at vertices of S.  The ordering is built by peeling longest paths.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

import numpy as np

from .core import SignMatrix, Srm, validate_srm
from .errors import DomainError


@dataclass(frozen=True)
class LoopedDigraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    loops: frozenset[int] = frozenset()
    allow_parallel: bool = False

    def __init__(self, n: int, edges, loops=(), allow_parallel: bool = False):
        edges = tuple((int(u), int(v)) for u, v in edges)
        loops = frozenset(int(v) for v in loops)
        if n < 1:
            raise DomainError("a digraph needs at least one vertex")
        for u, v in edges:
            if u == v:
                raise DomainError(f"self-pair ({u},{v}) is not an edge; use the loop set")
            if not (1 <= u <= n and 1 <= v <= n):
                raise DomainError(f"edge ({u},{v}) has a vertex outside 1..{n}")
        if not allow_parallel and len(set(edges)) != len(edges):
            raise DomainError("duplicate edges")
        if any(not 1 <= v <= n for v in loops):
            raise DomainError("loop vertex outside 1..n")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "loops", loops)
        object.__setattr__(self, "allow_parallel", allow_parallel)

    def out_degree(self, v: int) -> int:
        return sum(1 for u, _ in self.edges if u == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, w in self.edges if w == v)

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.edges]
        lines.append("loops: " + " ".join(map(str, sorted(self.loops))))
        return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> LoopedDigraph:
    """Read "n", then "i j" edge lines, then "loops: i1 i2 ..." ('#' starts a comment)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DomainError("empty digraph description")
    try:
        n = int(lines[0])
        edges, loops = [], []
        for ln in lines[1:]:
            if ln.lower().startswith("loops:"):
                loops.extend(int(x) for x in ln.split(":", 1)[1].split())
            else:
                u, v = ln.split()
                edges.append((int(u), int(v)))
    except ValueError as exc:
        raise DomainError(f"malformed digraph description: {exc}") from None
    return LoopedDigraph(n, edges, loops)


def generalized_incidence(D: LoopedDigraph, vertex_order=None, edge_order=None) -> SignMatrix:
    """Loop unit columns (in vertex order) followed by one column per edge,
    +1 at the tail row and -1 at the head row."""
    vertex_order = list(range(1, D.n + 1)) if vertex_order is None else [int(v) for v in vertex_order]
    edge_order = list(D.edges) if edge_order is None else [tuple(e) for e in edge_order]
    if sorted(vertex_order) != list(range(1, D.n + 1)):
        raise DomainError("vertex order is not a permutation of the vertices")
    if sorted(edge_order) != sorted(D.edges):
        raise DomainError("edge order is not a permutation of the edges")
    row = {v: i for i, v in enumerate(vertex_order)}
    loop_rows = [row[v] for v in vertex_order if v in D.loops]
    a = np.zeros((D.n, len(loop_rows) + len(edge_order)), dtype=np.int8)
    for c, r in enumerate(loop_rows):
        a[r, c] = 1
    for c, (u, v) in enumerate(edge_order, start=len(loop_rows)):
        a[row[u], c] = 1
        a[row[v], c] = -1
    return SignMatrix._wrap(a)


def topological_order(D: LoopedDigraph) -> list[int] | None:
    """Repeated removal of the smallest-index source; None if D has a cycle."""
    indeg = {v: 0 for v in range(1, D.n + 1)}
    succ: dict[int, list[int]] = {v: [] for v in indeg}
    for u, v in D.edges:
        indeg[v] += 1
        succ[u].append(v)
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    return order if len(order) == D.n else None


def orderability_failure(D: LoopedDigraph) -> str | None:
    """Reason D has no SRM ordering, or None when it has one."""
    if not D.edges:
        raise DomainError("the digraph must have at least one edge")
    if topological_order(D) is None:
        return "condition (i) fails: the digraph has a directed cycle"
    for v in range(1, D.n + 1):
        gap = D.in_degree(v) - D.out_degree(v)
        if gap > 1:
            return f"condition (ii) fails: vertex {v} has indegree - outdegree = {gap} > 1"
        if gap == 1 and v not in D.loops:
            return f"condition (ii) fails: vertex {v} has indegree = outdegree + 1 but no loop"
    return None


def srm_orderable(D: LoopedDigraph) -> bool:
    return orderability_failure(D) is None


def _longest_path_to(target: int, order: list[int], edges) -> list[int]:
    # longest path ending at target; ties go to the lexicographically smallest vertex sequence
    best: dict[int, list[int]] = {}
    for v in order:
        cands = [best[u] + [v] for u, w in edges if w == v]
        best[v] = min(cands, key=lambda p: (-len(p), p)) if cands else [v]
        if v == target:
            return best[v]
    raise AssertionError("target not in order")


def srm_ordering(D: LoopedDigraph) -> tuple[list[int], list[tuple[int, int]], Srm]:
    """Vertex order, edge order and the resulting SRM incidence matrix.

    Vertices go in topological order.  Edges are peeled off path by path: take
    the latest vertex (in that order) with outdegree 0 and indegree 1, a
    longest path ending there, and list its edges from the last one back to
    the first; delete them and repeat.
    """
    reason = orderability_failure(D)
    if reason is not None:
        raise DomainError(reason)
    order = topological_order(D)
    pos = {v: i for i, v in enumerate(order)}
    remaining = list(D.edges)
    edge_order: list[tuple[int, int]] = []
    while remaining:
        outd = {v: 0 for v in order}
        ind = {v: 0 for v in order}
        for u, v in remaining:
            outd[u] += 1
            ind[v] += 1
        vj = max((v for v in order if outd[v] == 0 and ind[v] == 1), key=pos.__getitem__)
        path = _longest_path_to(vj, order, remaining)
        peeled = [(path[i], path[i + 1]) for i in range(len(path) - 2, -1, -1)]
        edge_order.extend(peeled)
        for e in peeled:
            remaining.remove(e)
    verdict = validate_srm(generalized_incidence(D, order, edge_order))
    assert verdict, verdict.violation
    return order, edge_order, verdict.srm


def exists_srm_ordering(D: LoopedDigraph) -> bool:
    """Exhaustive search over vertex and edge orders (tiny digraphs only).

    An edge column meets the column condition iff its tail row comes first,
    so only vertex orders with every edge pointing down are tried; edge orders
    are then extended one column at a time while all row prefixes stay >= 0.
    Any order found is confirmed with validate_srm.
    """
    edges = list(D.edges)
    for vo in itertools.permutations(range(1, D.n + 1)):
        row = {v: i for i, v in enumerate(vo)}
        if any(row[u] > row[v] for u, v in edges):
            continue
        start = [1 if v in D.loops else 0 for v in vo]
        found = _extend_edges(start, edges, [], row)
        if found is not None:
            assert validate_srm(generalized_incidence(D, vo, found))
            return True
    return False


def _extend_edges(prefix, left, chosen, row):
    if not left:
        return list(chosen)
    for idx, (u, v) in enumerate(left):
        if prefix[row[v]] == 0:
            continue
        prefix[row[u]] += 1
        prefix[row[v]] -= 1
        chosen.append((u, v))
        got = _extend_edges(prefix, left[:idx] + left[idx + 1 :], chosen, row)
        chosen.pop()
        prefix[row[u]] -= 1
        prefix[row[v]] += 1
        if got is not None:
            return got
    return None
