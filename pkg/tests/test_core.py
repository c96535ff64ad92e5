import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from srm import core
from srm.core import Srm, SignMatrix
from srm.errors import DomainError

from conftest import all_sign_matrices, naive_is_srm, naive_sum

sign_mats = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.sampled_from((-1, 0, 1)), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def test_validate_examples():
    assert core.validate_srm([[0, 1], [1, -1]])
    assert core.validate_srm(np.zeros((3, 2), dtype=int))
    assert core.validate_srm(np.eye(4, dtype=int))
    assert core.is_srm([[0, 1, 1], [1, -1, 0], [0, 1, -1], [0, 0, 1]])


def test_violation_messages():
    v = core.validate_srm([[-1]])
    assert not v and str(v.violation) == "column 1 prefix sum -1 at (1,1)"
    v = core.validate_srm([[1, 0], [0, 0], [1, 0]])
    assert str(v.violation) == "column 1 prefix sum 2 at (3,1)"
    v = core.validate_srm([[0, 1], [1, 0], [0, 1]])
    assert str(v.violation) == "column 2 prefix sum 2 at (3,2)"
    v = core.validate_srm([[1, 0], [-1, 1], [0, 0]])
    assert str(v.violation) == "row 2 prefix sum -1 at (2,1)"


def test_entries_outside_sign_set_rejected():
    with pytest.raises(DomainError):
        SignMatrix([[2]])
    with pytest.raises(DomainError):
        core.validate_srm([[1, 0], [1]])
    assert not core.is_srm([[3]])


@pytest.mark.parametrize("m,n", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_validator_matches_definition(m, n):
    for A in all_sign_matrices(m, n):
        assert bool(core.validate_srm(A)) == naive_is_srm(A)


@given(sign_mats)
def test_sum_matrix_round_trip(rows):
    s = core.sum_matrix(rows)
    assert s.tolist() == [list(r) for r in naive_sum(rows)]
    assert core.inverse_sum_matrix(s).tolist() == rows


def test_signmatrix_value_semantics():
    a = SignMatrix([[1, 0], [0, 1]])
    b = Srm([[1, 0], [0, 1]])
    assert a == b and hash(a) == hash(b)
    with pytest.raises(ValueError):
        a.entries[0, 0] = 0
    assert a.nonzeros() == 2 and a.count(1) == 2 and a.count(-1) == 0
    assert a.flat_label() == "1,0;0,1"


def test_text_and_json_round_trip():
    A = Srm([[0, 1, 1], [1, -1, 0]])
    assert core.parse_matrix(A.to_text()) == A
    assert core.parse_matrix(json.dumps(A.to_json())) == A
    assert A.to_json() == {"rows": 2, "cols": 3, "entries": [[0, 1, 1], [1, -1, 0]]}
    text = "# two matrices\n1 1\n1\n\n2 1\n0\n1\n"
    assert [M.tolist() for M in core.parse_matrices(text)] == [[[1]], [[0], [1]]]
    with pytest.raises(DomainError):
        core.parse_matrix("2 2\n1 0\n")
    with pytest.raises(DomainError):
        core.parse_matrix("1 2\n1 0 0\n")


def test_margins_and_realizability():
    A = Srm([[0, 1, 1], [1, -1, 0], [0, 1, -1], [0, 0, 1]])
    mp = core.margins(A)
    assert mp.R == (2, 0, 0, 1) and mp.S == (1, 1, 1)
    assert core.realizable_margins((2, 0, 0, 1), (1, 1, 1))
    assert not core.realizable_margins((1, 1), (2, 0))
    assert not core.realizable_margins((1,), (1, 1))


def test_staircase_worked_example():
    assert core.canonical_staircase((2, 0, 0, 1), (1, 1, 1)).tolist() == [[1, 1, 0], [0, 0, 0], [0, 0, 0], [0, 0, 1]]
    assert core.canonical_staircase((1, 1), (1, 0, 1)).tolist() == [[1, 0, 0], [0, 0, 1]]
    with pytest.raises(DomainError):
        core.canonical_staircase((1, 1), (2, 0))


def test_max_nonzeros_worked_values():
    assert core.max_nonzeros(6, 8) == 37
    assert core.max_nonzeros(9, 11) == 76


def test_max_nonzeros_small_cases():
    # single row: all ones; narrow matrices: full alternating bands of 1,3,5,... nonzeros
    assert [core.max_nonzeros(1, n) for n in range(1, 6)] == [1, 2, 3, 4, 5]
    assert core.max_nonzeros(6, 1) == 1
    assert core.max_nonzeros(5, 2) == 4
    assert core.max_nonzeros(7, 3) == 9
    with pytest.raises(DomainError):
        core.max_nonzeros(0, 3)


@pytest.mark.parametrize("m,n", [(1, 4), (2, 5), (3, 3), (4, 6), (5, 2), (6, 8), (7, 7), (9, 11), (10, 4)])
def test_extremal_srm_attains_max(m, n):
    E = core.extremal_srm(m, n)
    assert naive_is_srm(E.tolist())
    assert E.nonzeros() == core.max_nonzeros(m, n) == sum(core.extremal_column_counts(m, n))


def test_extremal_first_column_single_one():
    for m in range(1, 8):
        col = core.extremal_srm(m, 4).entries[:, 0]
        assert col.tolist().count(1) == 1 and not (col < 0).any()


def test_multichain_bijection():
    A = Srm([[0, 1, 0], [1, 0, 0], [0, 0, 0], [0, 0, 1]])
    C = core.multichain_of(A)
    assert C.as_sets() == [{2}, {1, 2}, {1, 2}, {1, 2, 3}]
    assert core.srm_of_multichain(C) == A
    with pytest.raises(DomainError):
        core.multichain_of([[1, 1], [0, -1]])
    with pytest.raises(DomainError):
        core.Multichain.from_sets(3, [{1, 2}, {1}])


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_multichain_round_trip(m, n, data):
    rows = []
    for _ in range(m):
        rows.append(data.draw(st.sets(st.integers(1, n))))
    chain = []
    acc = set()
    for r in rows:
        acc |= r
        chain.append(set(acc))
    C = core.Multichain.from_sets(n, chain)
    A = core.srm_of_multichain(C)
    assert naive_is_srm(A.tolist()) and A.count(-1) == 0
    assert core.multichain_of(A) == C
