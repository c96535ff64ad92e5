"""Desk-scale verification suites, one per checked result, for `srm verify-all`."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bruhat, core, decompose, digraph, enumeration, interchange, polytope
from .core import Srm

# the ten elements of S_{2,2} under their customary letters
LETTERS_2X2 = {
    "a": [[0, 0], [0, 0]],
    "b": [[1, 0], [0, 0]],
    "c": [[0, 1], [0, 0]],
    "d": [[0, 0], [1, 0]],
    "e": [[0, 0], [0, 1]],
    "f": [[1, 0], [0, 1]],
    "g": [[0, 1], [1, 0]],
    "h": [[1, 1], [0, 0]],
    "i": [[0, 0], [1, 1]],
    "p": [[0, 1], [1, -1]],
}


def letter(x: str) -> Srm:
    return Srm(LETTERS_2X2[x])


def name_of(M) -> str:
    for k, v in LETTERS_2X2.items():
        if M.tolist() == v:
            return k
    raise KeyError(M)


@dataclass
class SuiteResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float


class _Fail(Exception):
    pass


def _need(cond, msg):
    if not cond:
        raise _Fail(msg)


def suite_max_nonzeros():
    _need(core.max_nonzeros(6, 8) == 37, "max_nonzeros(6,8) != 37")
    _need(core.max_nonzeros(9, 11) == 76, "max_nonzeros(9,11) != 76")
    for m, n in [(6, 8), (9, 11)]:
        E = core.extremal_srm(m, n)
        _need(E.nonzeros() == core.max_nonzeros(m, n), f"extremal {m}x{n} has {E.nonzeros()} nonzeros")
    for m in range(1, 5):
        for n in range(1, 6):
            if m * n <= enumeration.DEFAULT_MAX_CELLS:
                _need(enumeration.brute_force_max_nonzeros(m, n) == core.max_nonzeros(m, n), f"brute force differs at {m}x{n}")
    return "formula, extremal matrices and brute force agree"


def suite_class_counts():
    _need(enumeration.count_srms(2, 2) == 10, "|S_22| != 10")
    _need(enumeration.count_srms(2, 2, enumeration.PLUS) == 9, "|S+_22| != 9")
    for m in range(1, 5):
        for n in range(1, 5):
            _need(enumeration.count_srms(m, n, enumeration.PLUS) == (m + 1) ** n, f"|S+_{m}{n}| wrong")
    return "counts of S+ are (m+1)^n for m,n <= 4"


def suite_elimination():
    total = 0
    for m in range(1, 4):
        for n in range(1, 4):
            for A in enumeration.enumerate_srms(m, n):
                P, trace = interchange.eliminate_minus_ones(A)
                _need(len(trace) == A.count(-1), f"trace length wrong for {A.tolist()}")
                _need(trace.verify() and P.count(-1) == 0, f"bad trace for {A.tolist()}")
                total += 1
    A = Srm([[0, 1, 1], [1, -1, 0], [0, 1, -1], [0, 0, 1]])
    P, trace = interchange.eliminate_minus_ones(A)
    _need([str(s) for s in trace.steps] == ["(1,2)x(1,2) +", "(1,3)x(2,3) +"], "worked example trace differs")
    _need(P.tolist() == [[1, 1, 0], [0, 0, 0], [0, 0, 0], [0, 0, 1]], "worked example end differs")
    return f"{total} SRMs cleared of -1's through SRMs"


def suite_lattice():
    _need(bruhat.bruhat_meet(letter("c"), letter("d")) == letter("p"), "meet(c,d) != p")
    _need(bruhat.bruhat_join(letter("b"), letter("g")) == letter("p"), "join(b,g) != p")
    for m, n in [(2, 2), (2, 3), (3, 2)]:
        els = list(enumeration.enumerate_srms(m, n))
        leq = bruhat.leq_matrix(els)
        idx = {M: i for i, M in enumerate(els)}
        meet = {}
        join = {}
        for x, y in itertools.product(range(len(els)), repeat=2):
            mt, jn = idx[bruhat.bruhat_meet(els[x], els[y])], idx[bruhat.bruhat_join(els[x], els[y])]
            lower = leq[:, x] & leq[:, y]
            upper = leq[x, :] & leq[y, :]
            _need(lower[mt] and (leq[:, mt] | ~lower).all(), f"meet wrong at {m}x{n}")
            _need(upper[jn] and (leq[jn, :] | ~upper).all(), f"join wrong at {m}x{n}")
            meet[x, y], join[x, y] = mt, jn
        for x, y, z in itertools.product(range(len(els)), repeat=3):
            _need(meet[x, join[y, z]] == join[meet[x, y], meet[x, z]], f"distributivity fails at {m}x{n}")
        for A in els:
            _need(bruhat.meet_all(bruhat.meet_irreducible_decomposition(A)) == A, "meet-irreducible decomposition")
    return "meets, joins and distributivity on S_22, S_23, S_32"


def suite_hasse():
    plus = bruhat.hasse_diagram(2, 2, plus_only=True)
    got = {(name_of(a), name_of(b)) for a, b in plus.edge_set()}
    want = {("h", "f"), ("f", "b"), ("b", "c"), ("d", "e"), ("e", "a"), ("g", "i"), ("i", "d"), ("f", "g"), ("c", "e"), ("g", "c"), ("b", "d")}
    _need(got == want, "S+_22 cover edges differ")
    full = bruhat.hasse_diagram(2, 2)
    got = {(name_of(a), name_of(b)) for a, b in full.edge_set()}
    want = {("h", "f"), ("f", "b"), ("f", "g"), ("b", "p"), ("g", "p"), ("g", "i"), ("p", "c"), ("p", "d"), ("i", "d"), ("c", "e"), ("d", "e"), ("e", "a")}
    _need(got == want, "S_22 cover edges differ")
    _need({name_of(full.nodes[i]) for i in full.join_irreducibles()} == set("abcfgi"), "join-irreducibles")
    _need({name_of(full.nodes[i]) for i in full.meet_irreducibles()} == set("bcdehi"), "meet-irreducibles")
    prof = bruhat.irreducible_profile(letter("p"))
    _need({name_of(u) for u, b in zip(prof.join_irreducibles, prof.below) if b} == set("bfg"), "profile of p")
    return "cover relations and irreducibles of the 2x2 lattices"


def suite_transformation():
    for m, n in [(2, 2), (2, 3)]:
        els = list(enumeration.enumerate_srms(m, n, enumeration.PLUS))
        for A, C in itertools.product(els, repeat=2):
            leq = bruhat.bruhat_leq(A, C)
            try:
                ops = bruhat.bruhat_op_sequence(C, A)
            except core.DomainError:
                _need(not leq, "sequence refused for comparable pair")
                continue
            _need(leq, "sequence produced for incomparable pair")
            cur = C
            for op in ops:
                cur = bruhat.apply_bruhat_op(cur, op)
            _need(cur == A, "replay does not reach A")
        for A in els:
            for _, B in bruhat.lower_cover_moves(A):
                _need(core.sum_matrix(B).sum() == core.sum_matrix(A).sum() + 1, "local move changes the total by != 1")
    return "four-operation sequences exist exactly for comparable pairs"


def suite_incidence():
    D = digraph.LoopedDigraph(4, [(1, 2), (2, 3), (2, 4)], {3, 4})
    _need(digraph.srm_orderable(D), "example digraph not orderable")
    digraph.srm_ordering(D)
    checked = 0
    for n in range(2, 5):
        pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
        for k in range(1, 5):
            for E in itertools.combinations(pairs, k):
                for r in range(n + 1):
                    for S in itertools.combinations(range(1, n + 1), r):
                        G = digraph.LoopedDigraph(n, E, S)
                        _need(digraph.srm_orderable(G) == digraph.exists_srm_ordering(G), f"disagreement on {E} loops {S}")
                        checked += 1
    return f"{checked} digraphs: conditions match exhaustive search"


def suite_polytope():
    for m in range(1, 4):
        for n in range(1, 4):
            for c in sorted({1, 2, n}):
                rep = polytope.verify_polytope(m, n, c)
                _need(rep.ok, f"polytope check failed at {m}x{n} c={c}")
    for R in itertools.product(range(-2, 3), repeat=2):
        for S in itertools.product(range(-2, 3), repeat=2):
            if sum(R) != sum(S):
                continue
            spec = polytope.PmHullSpec(R, S)
            pts = {
                tuple(x)
                for x in itertools.product((-1, 0, 1), repeat=4)
                if polytope.polytope_contains([list(x[:2]), list(x[2:])], spec)
            }
            cls = {tuple(M.entries.ravel().tolist()) for M in enumeration.enumerate_pm_class(R, S)}
            _need(pts == cls, f"A+- hull integral points differ for {R},{S}")
    return "integral points and vertices match the classes"


def suite_decomposition():
    count = 0
    for m in range(1, 4):
        for n in range(1, 4):
            for A in enumeration.enumerate_srms(m, n):
                decompose.signed_subperm_decomposition(A)
                count += 1
    rng = np.random.default_rng(2024)
    for _ in range(500):
        m, n = int(rng.integers(4, 9)), int(rng.integers(4, 9))
        decompose.signed_subperm_decomposition(interchange.random_srm(m, n, rng))
        count += 1
    return f"{count} SRMs decomposed"


def _margin_tuples(m, n):
    for R in itertools.product(range(n + 1), repeat=m):
        for S in itertools.product(range(m + 1), repeat=n):
            if sum(R) != sum(S):
                continue
            for R1 in itertools.product(range(n + 1), repeat=m):
                if max(R1) - min(R1) > 1 or any(a > b for a, b in zip(R1, R)):
                    continue
                for S1 in itertools.product(range(m + 1), repeat=n):
                    if sum(S1) == sum(R1) and all(a <= b for a, b in zip(S1, S)):
                        yield R, S, R1, S1


def suite_joint():
    count = 0
    for m, n in [(2, 2), (2, 3)]:
        for R, S, R1, S1 in _margin_tuples(m, n):
            R2 = [a - b for a, b in zip(R, R1)]
            S2 = [a - b for a, b in zip(S, S1)]
            found = decompose.find_joint_realization(R1, S1, R2, S2)
            _need(decompose.check_anstee_condition(R, R1, S, S1) == (found is not None), f"criterion disagrees at {R},{S},{R1},{S1}")
            if found is not None:
                mp = core.margins(found.difference)
                want = (tuple(a - b for a, b in zip(R1, R2)), tuple(a - b for a, b in zip(S1, S2)))
                _need((mp.R, mp.S) == want, "difference of a joint realization has the wrong margins")
            count += 1
        for R in itertools.product(range(-n, n + 1), repeat=m):
            for S in itertools.product(range(-m, m + 1), repeat=n):
                if sum(R) != sum(S):
                    continue
                for A in enumeration.enumerate_pm_class(R, S):
                    A1, A2 = decompose.split_pm(A)
                    jr = decompose.JointRealization(A1, A2)
                    _need(jr.difference == A, "split does not invert")
    return f"{count} margin tuples agree with exhaustive search"


def suite_nonempty():
    _need(interchange.pm_nonempty((2, 0), (2, 0)), "R=S=(2,0) should be nonempty")
    count = 0
    for m, n in [(2, 2), (2, 3)]:
        for R in itertools.product(range(-n, n + 1), repeat=m):
            for S in itertools.product(range(-m, m + 1), repeat=n):
                if sum(R) != sum(S):
                    continue
                brute = next(iter(enumeration.enumerate_pm_class(R, S)), None) is not None
                _need(interchange.pm_nonempty(R, S) == brute, f"disagreement at R={R} S={S}")
                count += 1
    return f"{count} margin pairs agree with enumeration"


SUITES: list[tuple[str, str, Callable[[], str]]] = [
    ("zeta", "maximum number of nonzeros", suite_max_nonzeros),
    ("counts", "class counts", suite_class_counts),
    ("eliminate", "elimination of -1's by interchanges", suite_elimination),
    ("lattice", "Bruhat lattice operations", suite_lattice),
    ("hasse", "Hasse diagrams and irreducibles", suite_hasse),
    ("transform", "four-operation Bruhat transformation", suite_transformation),
    ("incidence", "SRM orderings of digraph incidence matrices", suite_incidence),
    ("polytope", "polytope integral points and vertices", suite_polytope),
    ("decompose", "signed subpermutation decomposition", suite_decomposition),
    ("joint", "joint realizations", suite_joint),
    ("nonempty", "nonemptiness of (0,+-1) classes", suite_nonempty),
]


def run_all(keys=None) -> list[SuiteResult]:
    out = []
    for key, title, fn in SUITES:
        if keys and key not in keys:
            continue
        t0 = time.perf_counter()
        try:
            detail = fn()
            ok = True
        except (_Fail, AssertionError, core.DomainError) as exc:
            detail, ok = f"{type(exc).__name__}: {exc}", False
        out.append(SuiteResult(key, title, ok, detail, time.perf_counter() - t0))
    return out
