import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from srm import decompose as dc
from srm.classes import gale_ryser, realize_01
from srm.core import Srm, extremal_srm
from srm.enumeration import enumerate_pm_class, enumerate_srms
from srm.errors import DomainError, HypothesisError
from srm.interchange import random_srm


def independent_check(A, dec):
    # own reading of "signed sum of disjoint subpermutation matrices"
    a = np.array(A.tolist() if hasattr(A, "tolist") else A)
    total = np.zeros_like(a)
    cover = np.zeros_like(a)
    for sign, P in dec.terms:
        p = np.array(P.tolist())
        assert sign in (1, -1)
        assert set(np.unique(p)) <= {0, 1}
        assert p.sum(axis=0).max() <= 1 and p.sum(axis=1).max() <= 1
        total += sign * p
        cover += p
    assert (total == a).all()
    assert cover.max(initial=0) <= 1


@pytest.mark.parametrize("m,n", [(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_every_small_srm(m, n):
    for A in enumerate_srms(m, n):
        independent_check(A, dc.signed_subperm_decomposition(A))


@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_random_srms(m, n, seed):
    A = random_srm(m, n, np.random.default_rng(seed))
    dec = dc.signed_subperm_decomposition(A)
    independent_check(A, dec)
    assert dec.check(A) == []


@pytest.mark.parametrize("m,n", [(4, 4), (6, 8), (7, 7), (3, 9)])
def test_extremal_srms(m, n):
    E = extremal_srm(m, n)
    independent_check(E, dc.signed_subperm_decomposition(E))


def test_regular_extension_line_sums():
    for A in [[[1, 1], [0, 0]], [[0, 1, 1], [1, -1, 0], [0, 1, -1], [0, 0, 1]], [[1]]]:
        B = dc.regular_extension(A)
        k = B.shape[0]
        assert B.shape == (k, k)
        sums = set(B.sum(axis=0).tolist()) | set(B.sum(axis=1).tolist())
        assert len(sums) == 1
        a = np.array(A)
        assert (B[: a.shape[0], : a.shape[1]] == a).all()


def test_permutation_decomposition():
    M = np.array([[2, 1, 0], [0, 1, 2], [1, 1, 1]])
    perms = dc.permutation_decomposition(M)
    assert len(perms) == 3 and (sum(perms) == M).all()
    for P in perms:
        assert (P.sum(axis=0) == 1).all() and (P.sum(axis=1) == 1).all()
    with pytest.raises(DomainError):
        dc.permutation_decomposition(np.array([[1, 0], [1, 1]]))
    assert dc.perfect_matching(np.array([[True, True], [True, False]])) == [1, 0]
    assert dc.perfect_matching(np.array([[True, False], [True, False]])) is None


def test_check_reports_problems():
    dec = dc.SignedDecomposition((1, 2), [(1, Srm([[1, 1]]))])
    assert "term 1 is not a subpermutation matrix" in dec.check([[1, 1]])
    dec = dc.SignedDecomposition((1, 1), [(1, Srm([[1]])), (1, Srm([[1]])), (-1, Srm([[1]]))])
    assert dec.check([[1]]) == ["terms overlap"]


def test_non_srm_rejected():
    with pytest.raises(DomainError):
        dc.signed_subperm_decomposition([[-1]])


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3)])
def test_split_pm_is_a_bijection(m, n):
    for R in itertools.product(range(-n, n + 1), repeat=m):
        for S in itertools.product(range(-m, m + 1), repeat=n):
            if sum(R) != sum(S):
                continue
            seen = set()
            for A in enumerate_pm_class(R, S):
                A1, A2 = dc.split_pm(A)
                assert not (A1.entries & A2.entries).any()
                assert (A1.entries.astype(int) - A2.entries == A.entries).all()
                key = (A1, A2)
                assert key not in seen
                seen.add(key)


def test_joint_realization_small():
    J = dc.find_joint_realization((1, 1), (1, 1), (1, 1), (1, 1))
    assert J is not None
    assert J.margins() == ((1, 1), (1, 1), (1, 1), (1, 1))
    assert J.B.tolist() == [[1, 1], [1, 1]]
    assert dc.find_joint_realization((2, 0), (1, 1), (0, 2), (1, 1)) is not None
    assert dc.find_joint_realization((2, 0), (1, 1), (1, 1), (1, 1)) is None
    with pytest.raises(DomainError):
        dc.find_joint_realization((1,), (1,), (2,), (1,))
    with pytest.raises(DomainError):
        dc.JointRealization(Srm([[1]]), Srm([[1]]))


def naive_joint(R1, S1, R2, S2):
    m, n = len(R1), len(S1)
    for f in itertools.product((0, 1, 2), repeat=m * n):
        b1 = np.array([[int(v == 1) for v in f[i * n : (i + 1) * n]] for i in range(m)])
        b2 = np.array([[int(v == 2) for v in f[i * n : (i + 1) * n]] for i in range(m)])
        if (
            tuple(b1.sum(1)) == tuple(R1)
            and tuple(b1.sum(0)) == tuple(S1)
            and tuple(b2.sum(1)) == tuple(R2)
            and tuple(b2.sum(0)) == tuple(S2)
        ):
            return True
    return False


def test_joint_search_against_naive():
    m, n = 2, 2
    for R1 in itertools.product(range(n + 1), repeat=m):
        for S1 in itertools.product(range(m + 1), repeat=n):
            if sum(R1) != sum(S1):
                continue
            for R2 in itertools.product(range(n + 1), repeat=m):
                for S2 in itertools.product(range(m + 1), repeat=n):
                    if sum(R2) != sum(S2):
                        continue
                    got = dc.find_joint_realization(R1, S1, R2, S2) is not None
                    assert got == naive_joint(R1, S1, R2, S2), (R1, S1, R2, S2)


def test_anstee_condition_hypothesis():
    with pytest.raises(HypothesisError):
        dc.check_anstee_condition((2, 2), (0, 2), (2, 2), (1, 1))
    with pytest.raises(HypothesisError):
        dc.check_anstee_condition((1, 1), (2, 2), (2, 2), (1, 1))
    assert dc.check_anstee_condition((2, 2), (1, 1), (2, 2), (1, 1))


def test_gale_ryser_against_realizer():
    for R in itertools.product(range(4), repeat=3):
        for S in itertools.product(range(4), repeat=3):
            if sum(R) != sum(S):
                continue
            a = realize_01(R, S)
            assert gale_ryser(R, S) == (a is not None)
            if a is not None:
                assert tuple(a.sum(1)) == R and tuple(a.sum(0)) == S
