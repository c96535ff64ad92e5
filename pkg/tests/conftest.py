"""Independent reference implementations used as test oracles.

Nothing here calls into the package; these are the slow, obvious versions.
"""

from __future__ import annotations

import itertools

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# the ten 2x2 SRMs under their customary letters
L2 = {
    "a": ((0, 0), (0, 0)),
    "b": ((1, 0), (0, 0)),
    "c": ((0, 1), (0, 0)),
    "d": ((0, 0), (1, 0)),
    "e": ((0, 0), (0, 1)),
    "f": ((1, 0), (0, 1)),
    "g": ((0, 1), (1, 0)),
    "h": ((1, 1), (0, 0)),
    "i": ((0, 0), (1, 1)),
    "p": ((0, 1), (1, -1)),
}


def naive_is_srm(rows) -> bool:
    m, n = len(rows), len(rows[0])
    for j in range(n):
        s = 0
        for i in range(m):
            s += rows[i][j]
            if s not in (0, 1):
                return False
    for i in range(m):
        s = 0
        for j in range(n):
            s += rows[i][j]
            if s < 0:
                return False
    return True


def all_sign_matrices(m, n):
    for flat in itertools.product((-1, 0, 1), repeat=m * n):
        yield tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(m))


def naive_srms(m, n, plus=False):
    return [A for A in all_sign_matrices(m, n) if naive_is_srm(A) and (not plus or min(min(r) for r in A) >= 0)]


def naive_sum(rows):
    m, n = len(rows), len(rows[0])
    return tuple(tuple(sum(rows[k][l] for k in range(i + 1) for l in range(j + 1)) for j in range(n)) for i in range(m))


def naive_leq(A, B) -> bool:
    sa, sb = naive_sum(A), naive_sum(B)
    return all(x >= y for ra, rb in zip(sa, sb) for x, y in zip(ra, rb))


def naive_covers(elements):
    """(lower, upper) pairs of the cover relation, by the definition."""
    out = set()
    for x in elements:
        for y in elements:
            if x == y or not naive_leq(x, y):
                continue
            if not any(z != x and z != y and naive_leq(x, z) and naive_leq(z, y) for z in elements):
                out.add((x, y))
    return out


def as_tuple(M):
    return tuple(tuple(int(v) for v in row) for row in M.tolist())


@pytest.fixture
def letters():
    return L2


# acceptance criterion -> (title, passed, seconds); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[str, bool, float]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, secs = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f}s)")
