import numpy as np
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from pdgschur.linalg import (RowSpace, inverse, left_nullspace, mm, nullspace, rank, rref,
                             solve_left)

P = 5
mats = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(lambda n: arrays(np.int64, (m, n), elements=st.integers(0, P - 1))))



def brute_rank(a, p):
    """Rank over F_p by counting the row space (tiny matrices only)."""
    m, n = a.shape
    seen = set()
    for coeffs in np.ndindex(*(p,) * m):
        seen.add(tuple(mm(np.array(coeffs), a, p)))
    return int(round(np.log(len(seen)) / np.log(p)))


@given(arrays(np.int64, (3, 3), elements=st.integers(0, 2)))
def test_rank_against_brute_force(a):
    assert rank(a, 3) == brute_rank(a, 3)


@given(mats)
def test_nullspace_annihilates_and_has_right_size(a):
    ns = nullspace(a, P)
    assert not mm(a, ns.T, P).any()
    assert ns.shape[0] == a.shape[1] - rank(a, P)
    lns = left_nullspace(a, P)
    assert not mm(lns, a, P).any()


@given(mats)
def test_rref_is_reduced(a):
    r, piv = rref(a, P)
    for i, c in enumerate(piv):
        col = r[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1


@given(arrays(np.int64, (4, 4), elements=st.integers(0, P - 1)))
def test_inverse(a):
    if rank(a, P) == 4:
        assert np.array_equal(mm(a, inverse(a, P), P), np.eye(4, dtype=np.int64))


@given(mats, st.data())
def test_solve_left_recovers_combination(a, data):
    c = data.draw(arrays(np.int64, (2, a.shape[0]), elements=st.integers(0, P - 1)))
    b = mm(c, a, P)
    x = solve_left(a, b, P)
    assert np.array_equal(mm(x, a, P), b)


def test_solve_left_inconsistent():
    import pytest
    with pytest.raises(ValueError):
        solve_left(np.array([[1, 0]]), np.array([0, 1]), P)


@given(mats, mats)
def test_rowspace_intersection_dimension(a, b):
    if a.shape[1] != b.shape[1]:
        return
    A, B = RowSpace(a, P), RowSpace(b, P)
    assert A.intersect(B).dim == A.dim + B.dim - A.sum(B).dim
    assert A.contains(A.intersect(B).rows) and B.contains(A.intersect(B).rows)


def test_float_path_matches_integer_path():
    rng = np.random.default_rng(1)
    a = rng.integers(0, 10007, (20, 30))
    b = rng.integers(0, 10007, (30, 10))
    exact = (a.astype(object) @ b.astype(object)) % 10007
    assert np.array_equal(mm(a, b, 10007), exact.astype(np.int64))
