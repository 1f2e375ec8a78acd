from math import factorial

import numpy as np
import pytest

from pdgschur.coeff import Laurent, ZERO, quantum_binom
from pdgschur.combinatorics import (TwoBlockShape, enumerate_multipartitions, tab_lambda,
                                    truncated_dimension, two_block_shapes)
from pdgschur.modules import (G_basis_check, G_of, G_shift, filtration_terms, is_partial_stable,
                              palindromic, regular_module, span_right_ideal, specht,
                              specht_filtration_check, truncated_G, y_lambda, zero_module)
from pdgschur.nilhecke import build_rep, cellular_basis, idempotent_e

SIZES = [(n, l) for l in range(1, 5) for n in range(0, min(l, 3) + 1)]


@pytest.fixture(scope="module")
def nh23():
    return build_rep(2, 3, 3)


def test_span_right_ideal_examples(nh23):
    g = nh23.element_from_word("y1^2 y2")
    M = span_right_ideal(nh23, g)
    assert M.dim == 2
    expected = np.stack([g.coords, nh23.element_from_word("y1^2 y2 p1").coords])
    from pdgschur.linalg import RowSpace
    assert RowSpace(M.ambient_rows(), 3).sum(RowSpace(expected, 3)).dim == 2
    assert span_right_ideal(nh23, nh23.one()).dim == 12
    assert span_right_ideal(nh23, nh23.zero()).dim == 0


def test_G_examples(nh23):
    assert G_of(nh23, (0, 1, 1)).dim == 8
    assert G_of(nh23, (1, 0, 1)).dim == 4
    assert G_of(nh23, (1, 1, 0)).dim == 2


def test_G_110_unshifted_character(nh23):
    G = G_of(nh23, (1, 1, 0))
    assert G.char().shift(-G.shift) == Laurent({6: 1, 4: 1})


@pytest.mark.parametrize("n, l", SIZES)
def test_G_dimension_matches_tableau_count(n, l):
    rep = build_rep(n, l, 3)
    for lam in enumerate_multipartitions(n, l):
        count = sum(len(tab_lambda(lam, mu)) for mu in enumerate_multipartitions(n, l))
        G = G_of(rep, lam)
        assert G.dim == count * factorial(n)
        assert palindromic(G.char())
        assert is_partial_stable(G)


@pytest.mark.parametrize("n, l", [(2, 3), (2, 4), (3, 4)])
def test_G_tableau_basis(n, l):
    rep = build_rep(n, l, 3)
    for lam in enumerate_multipartitions(n, l):
        assert G_basis_check(rep, lam)


def test_maximal_G_is_a_shifted_specht(nh23):
    lam = (1, 1, 0)
    G = G_of(nh23, lam)
    S = specht(nh23, lam)
    assert G.dim == factorial(2)
    k = G.char().min_degree() - S.char().min_degree()
    assert G.char() == S.char().shift(k)


@pytest.mark.parametrize("l", range(1, 5))
def test_truncated_dimension_formula(l):
    for r in range(l + 1):
        s = l - r
        for n in range(0, min(l, 3) + 1):
            rep = build_rep(n, l, 3)
            for sh in two_block_shapes(n, r, s):
                M = truncated_G(rep, sh)
                assert M.dim == truncated_dimension(sh) == M.char().at_one()
                assert is_partial_stable(M)


def test_truncated_example(nh23):
    assert truncated_G(nh23, TwoBlockShape(1, 0, 0, 2)).dim == 6
    with pytest.raises(ValueError):
        truncated_G(nh23, TwoBlockShape(1, 0, 0, 1))


def test_complement_of_truncation_matches_G110(nh23):
    lam = (0, 1, 1)
    e2 = idempotent_e(nh23, (2,))
    comp = span_right_ideal(nh23, (nh23.one() - e2) * y_lambda(nh23, lam), G_shift(lam))
    assert comp.dim == 2
    assert comp.char() == G_of(nh23, (1, 1, 0)).char()
    assert comp.char() == Laurent({3: 1, 1: 1})


def test_specht_modules(nh23):
    cells = cellular_basis(nh23)
    chars = []
    for mu in enumerate_multipartitions(2, 3):
        S = specht(nh23, mu, cells)
        assert S.dim == 2
        assert is_partial_stable(S)
        chars.append(S.char())
    for c in chars:
        k = c.min_degree() - chars[0].min_degree()
        assert c == chars[0].shift(k)


def test_unstable_ideal():
    rep = build_rep(2, 2, 3)
    M = span_right_ideal(rep, rep.element_from_word("p1 y1"))
    assert M.dim == 2
    assert not is_partial_stable(M)
    assert is_partial_stable(regular_module(rep))


def test_zero_module_character(nh23):
    assert zero_module(nh23).char() == ZERO


@pytest.mark.parametrize("n, l", SIZES)
def test_specht_filtration(n, l):
    rep = build_rep(n, l, 3)
    cells = cellular_basis(rep)
    for lam in enumerate_multipartitions(n, l):
        assert specht_filtration_check(rep, lam, cells)


def test_filtration_terms_example():
    assert len(filtration_terms((0, 1, 1))) == 4
    assert len(filtration_terms((1, 1, 0))) == 1


@pytest.mark.parametrize("c, d", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_a_zero_truncation_character(c, d):
    """With a = 0 the character is [d]! times a Grassmannian q-binomial, up to a shift."""
    sh = TwoBlockShape(0, 0, c, d)
    rep = build_rep(d, c + d, 3)
    ch = truncated_G(rep, sh).char()
    want = quantum_binom(c + d, d)
    from pdgschur.coeff import quantum_factorial
    want = want * quantum_factorial(d)
    assert palindromic(ch)
    assert ch.at_one() == want.at_one()
    assert ch == want.shift(ch.min_degree() - want.min_degree())
