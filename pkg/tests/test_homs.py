import numpy as np
import pytest

from pdgschur.coeff import Laurent, quantum_binom
from pdgschur.combinatorics import TwoBlockShape, enumerate_multipartitions
from pdgschur.homs import (PathAlgebra, basic_two_tensor, cellular_schur_count,
                           double_centralizer_check, end_algebra, hom_space,
                           indecomposability_certificate, path_algebra_realization,
                           positivity_report, schur_algebra, standard_module,
                           stratification_filtration, truncation_report, two_tensor_schur)
from pdgschur.linalg import nullspace
from pdgschur.modules import G_of, span_right_ideal, specht, truncated_G, zero_module
from pdgschur.nilhecke import build_rep


@pytest.fixture(scope="module")
def nh23():
    return build_rep(2, 3, 3)


def commutant_dim(M, N):
    """dim of {F : act_M(g) F = F act_N(g)} by solving the linear system directly."""
    p, m, n = M.p, M.dim, N.dim
    if m == 0 or n == 0:
        return 0
    blocks = []
    for g in M.act:
        A, B = M.act[g], N.act[g]
        # vec(A F) - vec(F B) with F flattened row-major
        blocks.append((np.kron(A, np.eye(n, dtype=np.int64)) - np.kron(np.eye(m, dtype=np.int64), B.T)) % p)
    return nullspace(np.concatenate(blocks), p).shape[0]


def test_hom_examples(nh23):
    G110, G011 = G_of(nh23, (1, 1, 0)), G_of(nh23, (0, 1, 1))
    assert hom_space(G110, G110).dim == 1
    assert hom_space(G011, G011).dim == 6
    assert hom_space(G011, zero_module(nh23)).dim == 0


@pytest.mark.parametrize("n, l", [(1, 2), (1, 3), (2, 3), (2, 4)])
def test_hom_dims_against_commutant(n, l):
    rep = build_rep(n, l, 3)
    mods = [G_of(rep, lam) for lam in enumerate_multipartitions(n, l)]
    for M in mods:
        for N in mods:
            assert hom_space(M, N).dim == commutant_dim(M, N)


def test_hom_maps_are_module_maps(nh23):
    M, N = G_of(nh23, (1, 0, 1)), G_of(nh23, (0, 1, 1))
    H = hom_space(M, N)
    for F in H.maps:
        for g in M.act:
            assert not ((M.act[g] @ F - F @ N.act[g]) % 3).any()


def test_hom_characters_symmetric(nh23):
    mods = [G_of(nh23, lam) for lam in enumerate_multipartitions(2, 3)]
    for M in mods:
        for N in mods:
            assert hom_space(M, N).graded_dims() == hom_space(N, M).graded_dims()


def test_end_of_specht(nh23):
    S = specht(nh23, (1, 0, 1))
    assert end_algebra([S]).dim == 1
    assert end_algebra([]).dim == 0


@pytest.mark.parametrize("n, l", [(0, 2), (1, 2), (1, 3), (2, 3), (2, 4)])
def test_schur_algebra_structure(n, l):
    S = schur_algebra(n, l, 3)
    assert S.dim == cellular_schur_count(n, l)
    assert S.check_associative()
    assert S.check_leibniz(60)
    assert S.dp_zero()
    one = S.one()
    x = np.random.default_rng(0).integers(0, 3, S.dim)
    assert np.array_equal(S.mult(one, x), x % 3) and np.array_equal(S.mult(x, one), x % 3)


def test_small_schur_dims():
    assert schur_algebra(1, 2, 3).dim == 5
    assert schur_algebra(0, 3, 3).dim == 1
    assert two_tensor_schur(0, 2, 1, 3).dim == 1


@pytest.mark.parametrize("l", [2, 3, 4])
def test_s1_is_the_path_algebra(l):
    S = schur_algebra(1, l, 3)
    checks = path_algebra_realization(S, l)
    assert checks["ok"], checks
    assert PathAlgebra(l, 3).dim == S.dim


def test_path_algebra_dims():
    assert PathAlgebra(2, 3).graded_dim() == Laurent({0: 2, 1: 2, 2: 1})
    assert PathAlgebra(3, 5).dim == schur_algebra(1, 3, 5).dim


def test_two_tensor_s2_21():
    S = two_tensor_schur(2, 2, 1, 3)
    assert S.dim == 11
    assert sorted(int(v.at_one()) for v in S.block_dims().values()) == [1, 2, 2, 6]


@pytest.mark.parametrize("n, l", [(1, 2), (1, 3), (2, 3), (2, 4)])
def test_grassmannian_case(n, l):
    S = two_tensor_schur(n, l, 0, 3)
    assert S.is_commutative()
    assert S.graded_dim() == quantum_binom(l, n).shift(n * (l - n))


def test_indecomposability_examples(nh23):
    assert indecomposability_certificate(G_of(nh23, (1, 1, 0)))
    assert indecomposability_certificate(truncated_G(nh23, TwoBlockShape(1, 0, 0, 2)))
    assert not indecomposability_certificate(G_of(nh23, (0, 1, 1)))


@pytest.mark.parametrize("n, r, s", [(2, 2, 1), (1, 2, 1), (2, 1, 2), (0, 2, 1), (2, 3, 0)])
def test_double_centralizer(n, r, s):
    ok, cent, nh, act = double_centralizer_check(n, r, s, 3)
    assert ok and cent == nh == act


@pytest.mark.parametrize("n, r, s", [(n, r, s) for r, s in [(2, 1), (1, 2), (2, 2)]
                                     for n in range(0, 4) if n <= r + s])
def test_basic_algebra_positivity(n, r, s):
    A = basic_two_tensor(n, r, s, 3)
    rep = positivity_report(A)
    assert rep["ok"], rep


@pytest.mark.parametrize("n, vertices, deltas", [(1, (2, 3), [4, 1]), (2, (1, 3), [2, 2])])
def test_truncation_examples(n, vertices, deltas):
    rep = truncation_report(n, 2, 1, vertices, 3)
    assert rep["isomorphic"]
    assert rep["graded_dim"] == rep["truncation_graded_dim"]
    got = [v["standard"] for v in rep["standard_modules"].values()]
    assert sorted(got, reverse=True) == sorted(deltas, reverse=True)


def test_standard_module_of_top_shape_is_projective():
    A = basic_two_tensor(2, 2, 1, 3)
    D = standard_module(A, 0)
    assert D.sub.dim == 0 and D.dim == D.P.dim
    P, chain = stratification_filtration(A, len(A.shapes) - 1)
    assert all(step["stable"] for step in chain)
    assert [step["dim"] for step in chain] == sorted(step["dim"] for step in chain)


def test_unstable_summand_rejected():
    rep = build_rep(2, 2, 3)
    M = span_right_ideal(rep, rep.element_from_word("p1 y1"))
    with pytest.raises(ValueError):
        end_algebra([M])
