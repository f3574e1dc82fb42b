import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import analyzed, x2_relations
from schemedual import EXACT
from schemedual.duality import (OrderingError, check_sigma, classify_all_orderings, duality_report,
                                inverse, is_formally_self_dual, is_numerically_self_dual, orderings,
                                permutation_matrix, reorder)
from schemedual.group_scheme import group_scheme_data
from schemedual.fixtures import binary_group, hamming
from schemedual.numerics import first_mismatch
from schemedual.scheme import verify_scheme


@pytest.fixture(scope="module")
def x2():
    return analyzed(verify_scheme(x2_relations()))


@pytest.fixture(scope="module")
def h3():
    return analyzed(hamming(3))


def test_reorder_moves_rows_columns_and_tensor(x2):
    _, sp, q = x2
    sigma = (0, 2, 1, 3)
    new, q2 = reorder(sp, q, sigma)
    for i in range(4):
        assert (new.P[i] == sp.P[sigma[i]]).all()
        assert (new.Q[:, i] == sp.Q[:, sigma[i]]).all()
        assert new.m[i] == sp.m[sigma[i]]
    for h, i, j in itertools.product(range(4), repeat=3):
        assert q2[h, i, j] == q[sigma[h], sigma[i], sigma[j]]


def test_reorder_equals_permutation_matrix_conjugation(h3):
    _, sp, _ = h3
    sigma = (0, 3, 1, 2)
    T = permutation_matrix(sigma).astype(object)
    new, _ = reorder(sp, np.zeros((4, 4, 4), dtype=object), sigma)
    assert (T.dot(sp.P) == new.P).all()
    assert (sp.Q.dot(T.T) == new.Q).all()


def test_identity_ordering_of_x2_is_self_dual(x2):
    s, sp, q = x2
    rep = duality_report(s.params, sp, q, (0, 1, 2, 3))
    assert rep.formally_self_dual and rep.numerically_self_dual
    assert rep.first_P_Q_mismatch is None and rep.first_pq_mismatch is None


def test_swapping_last_two_characters_of_x2():
    # character-indexed order: E_x belongs to the character y -> (-1)^<x,y>
    data = group_scheme_data(2)
    s, sp, q = data.scheme, data.spectral, data.krein
    fsd, bad = is_formally_self_dual(sp, (0, 1, 3, 2))
    assert not fsd and bad == (1, 2)
    nsd, _ = is_numerically_self_dual(s.params, q, (0, 1, 3, 2), EXACT)
    assert nsd


def test_classify_x2(x2):
    s, sp, q = x2
    summary = classify_all_orderings(s.params, sp, q).summary()
    assert summary == {"orderings": 6, "fsd": 4, "nsd": 6, "nsd_not_fsd": 2}


def test_hamming_three_has_non_nsd_ordering(h3):
    s, sp, q = h3
    rep = duality_report(s.params, sp, q, (0, 2, 1, 3))
    assert not rep.numerically_self_dual
    h, i, j = rep.first_pq_mismatch
    assert s.p[h, i, j] != q[[0, 2, 1, 3][h], [0, 2, 1, 3][i], [0, 2, 1, 3][j]]


def test_formal_implies_numerical():
    for s in (hamming(3), binary_group(2), hamming(4)):
        s, sp, q = analyzed(s)
        for r in classify_all_orderings(s.params, sp, q).reports:
            assert r.numerically_self_dual or not r.formally_self_dual


def test_orderings_fix_zero():
    got = list(orderings(3))
    assert len(got) == 6 and all(o[0] == 0 for o in got)
    assert got == sorted(got)


@pytest.mark.parametrize("sigma", [(1, 0, 2), (0, 1, 1), (0, 1), (0, 1, 3)])
def test_bad_orderings_rejected(sigma):
    with pytest.raises(OrderingError):
        check_sigma(sigma, 2)


@given(st.permutations(range(1, 7)))
def test_inverse_composes_to_identity(tail):
    sigma = (0,) + tuple(tail)
    inv = inverse(sigma)
    assert tuple(sigma[inv[i]] for i in range(7)) == tuple(range(7))


def test_reorder_then_inverse_restores(h3):
    _, sp, q = h3
    rng = random.Random(7)
    for _ in range(5):
        sigma = (0,) + tuple(rng.sample(range(1, 4), 3))
        once, q1 = reorder(sp, q, sigma)
        back, q2 = reorder(once, q1, inverse(sigma))
        assert first_mismatch(back.P, sp.P, EXACT) is None
        assert first_mismatch(q2, q, EXACT) is None
