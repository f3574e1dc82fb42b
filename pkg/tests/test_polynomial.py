from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import analyzed
from oracles import triangle_ok
from schemedual import APPROX, EXACT
from schemedual.fixtures import binary_group, cycle, hamming
from schemedual.polynomial import (NotPolynomial, build_polynomials, check_askey_wilson,
                                   check_lemma_pij, evaluate, is_p_polynomial,
                                   is_q_polynomial_ordering, triangle_check, tridiagonal_params,
                                   verify_theorem_main2, verify_theorem_main4)


@pytest.mark.parametrize("make, expected", [
    (lambda: hamming(3), True), (lambda: hamming(4), True), (lambda: cycle(6), True),
    (lambda: cycle(7), True), (lambda: binary_group(1), True), (lambda: binary_group(2), False),
    (lambda: binary_group(3), False),
], ids=["H3", "H4", "C6", "C7", "X1", "X2", "X3"])
def test_p_polynomial_against_oracle(make, expected):
    s = make()
    assert bool(is_p_polynomial(s.params)) == expected == triangle_ok(s.p.tolist())


def test_witness_points_at_a_violation():
    s = binary_group(2)
    check = is_p_polynomial(s.params)
    h, i, j = check.witness
    a, b, c = sorted((h, i, j))
    assert (c > a + b and s.p[h, i, j] != 0) or (c == a + b and s.p[h, i, j] == 0)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=27, max_size=27))
def test_triangle_check_matches_oracle(values):
    t = np.array(values, dtype=np.int64).reshape(3, 3, 3)
    assert bool(triangle_check(t.astype(object), EXACT)) == triangle_ok(t.tolist())


def test_approx_triangle_flags_ambiguous_values():
    t = np.zeros((2, 2, 2))
    t[0, 0, 0] = t[1, 0, 1] = t[1, 1, 0] = t[0, 1, 1] = 1.0
    t[1, 1, 1] = 5e-9   # between eps and 100 eps
    check = triangle_check(t, APPROX)
    assert check.ok and check.ambiguous == []  # (1,1,1) is unconstrained
    t[0, 0, 1] = 5e-9   # 1 > 0 + 0 must vanish
    check = triangle_check(t, APPROX)
    assert not check.ok and (0, 0, 1) in check.ambiguous


def test_hamming_three_polynomials():
    s, sp, q = analyzed(hamming(3))
    tp = tridiagonal_params(s.params, sp, q)
    u = build_polynomials(tp)
    assert u[1] == [0, Fraction(1, 3)]
    for j, poly in enumerate(u):
        assert evaluate(poly, tp.theta[0]) == 1
    assert check_lemma_pij(sp, s.params, u) == (True, None)
    ustar = build_polynomials(tp, starred=True)
    assert check_lemma_pij(sp, s.params, ustar, dual=True) == (True, None)
    assert tp.c[1:] == [1, 2, 3] and tp.b == [3, 2, 1]


@pytest.mark.parametrize("make, tol", [
    (lambda: hamming(3), EXACT), (lambda: hamming(4), EXACT), (lambda: cycle(6), EXACT),
    (lambda: cycle(5), APPROX), (lambda: cycle(7), APPROX),
], ids=["H3", "H4", "C6", "C5-approx", "C7-approx"])
def test_askey_wilson_duality(make, tol):
    s, sp, q = analyzed(make(), tol)
    res = check_askey_wilson(s.params, sp, q)
    if tol is EXACT:
        assert res == 0
    else:
        assert res <= 1e-9


@pytest.mark.parametrize("make, count", [
    (lambda: hamming(3), 6), (lambda: hamming(4), 24), (lambda: binary_group(1), 1),
], ids=["H3", "H4", "X1"])
def test_nsd_iff_fsd_for_p_polynomial_schemes(make, count):
    s, sp, q = analyzed(make())
    rep = verify_theorem_main2(s.params, sp, q)
    assert rep.verified and rep.orderings_checked == count
    assert rep.q_polynomial_orderings >= 1


def test_refusals():
    s, sp, q = analyzed(binary_group(2))
    with pytest.raises(NotPolynomial):
        check_askey_wilson(s.params, sp, q)
    with pytest.raises(NotPolynomial):
        verify_theorem_main2(s.params, sp, q)
    # the Q-side tally needs no P-polynomial hypothesis
    assert verify_theorem_main4(s.params, sp, q).verified


def test_intersection_array_of_x2_breaks_the_recurrence():
    s, sp, q = analyzed(binary_group(2))
    with pytest.raises(NotPolynomial, match="b_1 = 0"):
        build_polynomials(tridiagonal_params(s.params, sp, q))
