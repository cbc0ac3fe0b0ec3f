"""Interval degree vectors, scaling limits, and membership predicates."""

import itertools
import random
from fractions import Fraction

import pytest

from shuffleforge.polyring import D, Q, LaurentPoly, Param, X, XI, cross_multiply_equal
from shuffleforge.shuffle import AlgebraConfig, ShuffleElement, monomial_generator, star
from shuffleforge.limits import (
    Interval,
    interval_degree_vector,
    limit_infinity,
    limit_zero,
    membership_A,
    s_interval_mono,
    scaled,
    slope_zero_membership,
    _limit_direct,
    _limit_of_scaled,
)
from shuffleforge.subalg import gen_F_k, gen_F_k_mu, gen_K_m, gen_L_k


def test_interval_degree_vectors():
    assert interval_degree_vector(3, 0, 4) == (2, 2, 1)
    assert interval_degree_vector(3, 2, 2) == (0, 0, 1)
    assert interval_degree_vector(3, -1, 1) == (1, 1, 1)


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(2, 1)


def test_scaled_identity_and_full(c3):
    F = gen_F_k_mu(c3, 1, Param("mu1"))
    sc0 = scaled(F, (0, 0, 0))
    assert cross_multiply_equal(sc0, F.as_ratfunc())
    # full scaling of a degree-zero element: xi cancels entirely
    full = scaled(F, (1, 1, 1))
    assert cross_multiply_equal(full, F.as_ratfunc())


def test_scaled_star_example(c3):
    # e(0,0) * e(1,0) scaled in the first color equals
    # (d^-1 xi x01 - q x11)/(xi x01 - x11) by cross multiplication
    P = star(monomial_generator(c3, 0, 0), monomial_generator(c3, 1, 0))
    sc = scaled(P, (1, 0, 0))
    raw_num = LaurentPoly.monomial(1, ((D, -1), (XI, 1), (X(0, 1), 1))) - LaurentPoly.monomial(
        1, ((Q, 1), (X(1, 1), 1))
    )
    raw_den = LaurentPoly.monomial(1, ((XI, 1), (X(0, 1), 1))) - LaurentPoly.var(X(1, 1))
    assert sc.num * raw_den == raw_num * sc.den_poly()
    assert len(sc.den) == 1


def test_limit_examples_adjacent_product(c3):
    P = star(monomial_generator(c3, 0, 0), monomial_generator(c3, 1, 0))
    li = limit_infinity(P, (1, 0, 0))
    lz = limit_zero(P, (1, 0, 0))
    assert li.exists and lz.exists
    assert cross_multiply_equal(li.value, RatFunc_const_mono((D, -1)))
    assert cross_multiply_equal(lz.value, RatFunc_const_mono((Q, 1)))


def RatFunc_const_mono(pair):
    from shuffleforge.polyring import RatFunc

    return RatFunc(LaurentPoly.monomial(1, (pair,)))


def test_limit_trivial_vector(c3):
    F = gen_F_k_mu(c3, 1, Param("mu1"))
    li = limit_infinity(F, (0, 0, 0))
    assert li.exists and cross_multiply_equal(li.value, F.as_ratfunc())


def test_direct_limits_match_substitution(c3, c1):
    battery = [
        gen_F_k_mu(c3, 1, Param("mu1")),
        gen_F_k(c3, 1),
        gen_L_k(c3, 2),
        monomial_generator(c3, 0, 0),
        gen_K_m(2),
        star(gen_F_k_mu(c3, 1, Param("mu1")), gen_F_k_mu(c3, 1, Param("nu1"))),
    ]
    for el in battery:
        for lv in itertools.product(*[range(k + 1) for k in el.deg]):
            for inf in (True, False):
                a = _limit_direct(el, lv, inf)
                b = _limit_of_scaled(scaled(el, lv), inf)
                assert a.exists == b.exists, (el.deg, lv, inf)
                if a.exists:
                    assert cross_multiply_equal(a.value, b.value), (el.deg, lv, inf)


def test_membership_trivial_and_generators(c3):
    assert membership_A(ShuffleElement.unit(c3)).ok
    for k in (1, 2):
        rep = membership_A(gen_F_k_mu(c3, k, Param("mu1")))
        assert rep.ok
        assert rep.intervals_checked == 9 * k


def test_membership_off_lattice_fails(c3):
    rep = membership_A(monomial_generator(c3, 0, 0))
    assert not rep.ok
    first = rep.first_violation()
    assert (first["a"], first["b"]) == (0, 0)


def test_membership_interval_ratio_explicit(c3):
    # for the k=1 generator the interval [0,0] limits differ exactly by s_0
    F = gen_F_k_mu(c3, 1, Param("mu1"))
    li = limit_infinity(F, interval_degree_vector(3, 0, 0))
    lz = limit_zero(F, interval_degree_vector(3, 0, 0))
    assert li.exists and lz.exists
    smono = s_interval_mono(3, 0, 0)
    assert cross_multiply_equal(li.value, lz.value.scale_mono(Fraction(1), smono))


def test_shift_invariance_of_intervals(c3):
    F = gen_F_k_mu(c3, 2, Param("mu1"))
    for a, b in ((0, 1), (1, 3), (2, 4)):
        lv1 = interval_degree_vector(3, a, b)
        lv2 = interval_degree_vector(3, a + 3, b + 3)
        assert lv1 == lv2
        assert s_interval_mono(3, a, b) == s_interval_mono(3, a + 3, b + 3)
        l1 = limit_infinity(F, lv1)
        l2 = limit_infinity(F, lv2)
        assert l1.exists == l2.exists
        if l1.exists:
            assert cross_multiply_equal(l1.value, l2.value)


def test_one_color_small_membership(c1):
    K2 = gen_K_m(2)
    assert membership_A(K2).ok
    for k in range(3):
        li = limit_infinity(K2, (k,))
        lz = limit_zero(K2, (k,))
        assert li.exists and lz.exists
        assert cross_multiply_equal(li.value, lz.value)


def test_slope_zero_examples(c3):
    assert slope_zero_membership(ShuffleElement.unit(c3))[0]
    for k in (1, 2):
        assert slope_zero_membership(gen_F_k_mu(c3, k, Param("mu1")))[0]
    ok, witness = slope_zero_membership(monomial_generator(c3, 0, 1))
    assert not ok and witness == "tot_deg"
