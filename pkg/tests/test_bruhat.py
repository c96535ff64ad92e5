import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from srm import bruhat as br
from srm.core import Srm, sum_matrix
from srm.enumeration import PLUS, enumerate_srms
from srm.errors import DomainError

from conftest import L2, as_tuple, naive_covers, naive_leq, naive_srms, naive_sum

S = {k: Srm(v) for k, v in L2.items()}

FIG_LEFT = {("h", "f"), ("f", "b"), ("b", "c"), ("d", "e"), ("e", "a"), ("g", "i"), ("i", "d"), ("f", "g"), ("c", "e"), ("g", "c"), ("b", "d")}
FIG_RIGHT = {
    ("h", "f"), ("f", "b"), ("f", "g"), ("b", "p"), ("g", "p"), ("g", "i"),
    ("p", "c"), ("p", "d"), ("i", "d"), ("c", "e"), ("d", "e"), ("e", "a"),
}  # fmt: skip

FEATURED = [
    [0, 1, 0, 1, 1, 0],
    [0, 0, 1, -1, 0, 1],
    [1, 0, -1, 1, 0, -1],
    [0, 0, 1, 0, -1, 1],
    [0, 0, 0, 0, 1, -1],
    [0, 0, 0, 0, 0, 1],
]
FEATURED_ROWS = [
    [0, 1, 0, 1, 1, 0],
    [0, 1, 1, 0, 1, 1],
    [1, 1, 0, 1, 1, 0],
    [1, 1, 1, 1, 0, 1],
    [1, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 1, 1],
]


def name(M):
    t = as_tuple(M)
    return next(k for k, v in L2.items() if v == t)


def test_meet_and_join_of_letters():
    assert br.bruhat_meet(S["c"], S["d"]) == S["p"]
    assert br.bruhat_join(S["b"], S["g"]) == S["p"]
    assert br.bruhat_leq(S["h"], S["a"]) and not br.bruhat_leq(S["a"], S["h"])


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 2)])
def test_leq_matches_oracle(m, n):
    mats = naive_srms(m, n)
    for A, B in itertools.product(mats, repeat=2):
        assert br.bruhat_leq(A, B) == naive_leq(A, B)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 2)])
def test_meet_join_are_glb_lub(m, n):
    mats = naive_srms(m, n)
    for A, B in itertools.product(mats, repeat=2):
        mt, jn = as_tuple(br.bruhat_meet(A, B)), as_tuple(br.bruhat_join(A, B))
        lower = [Z for Z in mats if naive_leq(Z, A) and naive_leq(Z, B)]
        upper = [Z for Z in mats if naive_leq(A, Z) and naive_leq(B, Z)]
        assert mt in lower and all(naive_leq(Z, mt) for Z in lower)
        assert jn in upper and all(naive_leq(jn, Z) for Z in upper)


def test_distributive_on_two_by_two():
    mats = [Srm(v) for v in L2.values()]
    for x, y, z in itertools.product(mats, repeat=3):
        assert br.bruhat_meet(x, br.bruhat_join(y, z)) == br.bruhat_join(br.bruhat_meet(x, y), br.bruhat_meet(x, z))


def test_featured_meet_irreducible_rows():
    factors = br.meet_irreducible_decomposition(FEATURED)
    assert [F.entries[i].tolist() for i, F in enumerate(factors)] == FEATURED_ROWS
    assert all(F.count(-1) == 0 and np.count_nonzero(F.entries.any(axis=1)) <= 1 for F in factors)
    assert br.meet_all(factors) == Srm(FEATURED)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 3)])
def test_meet_decomposition_everywhere(m, n):
    for A in enumerate_srms(m, n):
        assert br.meet_all(br.meet_irreducible_decomposition(A)) == A


def test_plus_sum_matrix_characterization():
    for m, n in [(2, 2), (2, 3), (3, 2)]:
        plus = {naive_sum(A) for A in naive_srms(m, n, plus=True)}
        for A in naive_srms(m, n):
            assert br.is_plus_sum_matrix(np.array(naive_sum(A))) == (naive_sum(A) in plus)


def test_figure_left_hasse():
    h = br.hasse_diagram(2, 2, plus_only=True)
    assert {(name(x), name(y)) for x, y in h.edge_set()} == FIG_LEFT
    assert {(name(x), name(y)) for x, y in h.edge_set()} == {
        (name(Srm(x)), name(Srm(y))) for x, y in naive_covers(naive_srms(2, 2, plus=True))
    }


def test_figure_right_hasse():
    h = br.hasse_diagram(2, 2)
    assert {(name(x), name(y)) for x, y in h.edge_set()} == FIG_RIGHT
    assert len(h.nodes) == 10


@pytest.mark.parametrize("m,n,plus", [(2, 3, False), (3, 2, True), (3, 3, True)])
def test_hasse_matches_naive_covers(m, n, plus):
    h = br.hasse_diagram(m, n, plus_only=plus)
    want = naive_covers(naive_srms(m, n, plus=plus))
    assert {(as_tuple(x), as_tuple(y)) for x, y in h.edge_set()} == want


def test_irreducibles_and_profiles():
    h = br.hasse_diagram(2, 2)
    assert {name(h.nodes[i]) for i in h.join_irreducibles()} == set("abcfgi")
    assert {name(h.nodes[i]) for i in h.meet_irreducibles()} == set("bcdehi")
    prof = br.irreducible_profile(S["p"])
    below = {name(u) for u, f in zip(prof.join_irreducibles, prof.below) if f}
    assert below == {"b", "f", "g"}
    above = {name(u) for u, f in zip(prof.meet_irreducibles, prof.above) if f}
    assert above == {"c", "d", "e"}
    prof_e = br.irreducible_profile(S["e"])
    assert {name(u) for u, f in zip(prof_e.meet_irreducibles, prof_e.above) if f} == {"e"}


def test_dot_output():
    dot = br.hasse_diagram(2, 2, plus_only=True).to_dot()
    assert dot.startswith("digraph bruhat {") and dot.count("->") == 11
    assert '[label="0,0;0,0"]' in dot


def _one_row_block(M):
    # (0,1), a single nonzero row, its ones consecutive
    if M.count(-1) or not M.nonzeros() or np.count_nonzero(M.entries.any(axis=1)) != 1:
        return False
    idx = np.flatnonzero(M.entries.any(axis=0))
    return idx[-1] - idx[0] + 1 == len(idx)


@pytest.mark.parametrize("m,n", [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4)])
def test_meet_irreducibles_are_one_row_blocks(m, n):
    h = br.hasse_diagram(m, n)
    got = {h.nodes[i] for i in h.meet_irreducibles()}
    assert got == {M for M in h.nodes if _one_row_block(M)}


def test_single_row_with_gap_is_reducible():
    x = Srm([[1, 0, 1], [0, 0, 0]])
    assert br.bruhat_meet(Srm([[0, 1, 1], [0, 0, 0]]), Srm([[1, 0, 0], [0, 0, 1]])) == x


def test_interchange_sequence_square():
    anti = np.fliplr(np.eye(3, dtype=int))
    ops = br.bruhat_interchange_sequence(anti, np.eye(3, dtype=int))
    M = anti
    for op in ops:
        M = br.apply_bruhat_op(M, op)
    assert M.tolist() == np.eye(3, dtype=int).tolist() and len(ops) == 3


def test_interchange_sequence_pivot_fallback():
    A = [[1, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    C = [[0, 0, 1, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    ops = br.bruhat_interchange_sequence(C, A)
    M = np.array(C)
    for op in ops:
        M = br.apply_bruhat_op(M, op)
        assert (sum_matrix(M) >= sum_matrix(C)).all()
    assert M.tolist() == A


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_op_sequence_iff_leq(m, n):
    mats = list(enumerate_srms(m, n, PLUS))
    for A, C in itertools.product(mats, repeat=2):
        if br.bruhat_leq(A, C):
            ops = br.bruhat_op_sequence(C, A)
            M = C
            for op in ops:
                M = br.apply_bruhat_op(M, op)
            assert M == A
        else:
            with pytest.raises(DomainError):
                br.bruhat_op_sequence(C, A)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_op_sequence_random(m, n, data):
    cols_a = data.draw(st.lists(st.integers(0, m), min_size=n, max_size=n))
    A = np.zeros((m, n), dtype=int)
    for j, r in enumerate(cols_a):
        if r < m:
            A[r, j] = 1
    # the zero matrix is the top element, so every (0,1)-SRM is reachable from it
    Z = np.zeros((m, n), dtype=int)
    ops = br.bruhat_op_sequence(Z, A)
    M = Z
    for op in ops:
        M = br.apply_bruhat_op(M, op)
    assert M.tolist() == A.tolist()


def test_apply_op_rejects_illegal():
    with pytest.raises(DomainError):
        br.apply_bruhat_op([[1, 0], [0, 1]], br.BruhatOp(br.INTERCHANGE, (1, 2), (1, 2)))
    with pytest.raises(DomainError):
        br.apply_bruhat_op([[1, 0], [0, 0]], br.BruhatOp(br.ZERO_TO_UNIT, (1,), (1,)))
    with pytest.raises(DomainError):
        br.apply_bruhat_op([[0, 0], [1, 0]], br.BruhatOp(br.RAISE_UNIT, (1, 2), (1,)))
    with pytest.raises(DomainError):
        br.BruhatOp("Teleport", (), ())


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3)])
def test_cover_moves_are_sound_and_unit(m, n):
    h = br.hasse_diagram(m, n, plus_only=True)
    edges = {(h.nodes.index(x), h.nodes.index(y)) for x, y in h.edge_set()}
    for A in h.nodes:
        total = int(sum_matrix(A).sum())
        for op, B in br.lower_cover_moves(A):
            assert int(sum_matrix(B).sum()) == total + 1
            assert (h.index(B), h.index(A)) in edges


def test_cover_moves_incomplete():
    # c covers g in S+_{2,2}, yet their sum-matrices differ by 2 in total
    assert br.covers(S["g"], S["c"])
    assert int(sum_matrix(S["g"]).sum() - sum_matrix(S["c"]).sum()) == 2
    assert all(B != S["g"] for _, B in br.lower_cover_moves(S["c"]))


def test_covers_agrees_with_hasse():
    h = br.hasse_diagram(2, 3, plus_only=True)
    edges = h.edge_set()
    for x, y in itertools.product(h.nodes, repeat=2):
        assert br.covers(x, y) == ((x, y) in edges)
