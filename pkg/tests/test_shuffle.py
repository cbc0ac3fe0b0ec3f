"""Star product, kernel matrix, pole form, wheels, and mode-level relations."""

import random
from fractions import Fraction

import pytest

from shuffleforge.polyring import (
    D,
    Q,
    BinomialForm,
    LaurentPoly,
    RatFunc,
    X,
    cross_multiply_equal,
    mono_inv,
    poly_prod,
)
from shuffleforge.shuffle import (
    AlgebraConfig,
    NotSymmetric,
    PoleViolation,
    ShuffleElement,
    Inhomogeneous,
    kernel_reflection_holds,
    monomial_generator,
    normalize_to_pole_form,
    omega,
    omega_factors,
    pole_denominator,
    serre_cubic,
    serre_quartic,
    star,
    star_reference,
    tot_deg,
    wheel_check,
)
from shuffleforge.subalg import gen_F_k_mu, gen_K_m
from shuffleforge.polyring import Param


def test_omega_entries_match_table(c3):
    # omega_{0,1}(z) = (d^-1 z - q)/(z - 1), carried as z = u/v
    u, v = X(0, 1), X(0, 2)
    om = omega(c3, 0, 1)
    want_num = LaurentPoly.monomial(1, ((D, -1), (u, 1))) - LaurentPoly.monomial(1, ((Q, 1), (v, 1)))
    b, _, _ = BinomialForm.make(u, v, 1)
    assert cross_multiply_equal(om, RatFunc(want_num, (b,)))
    # omega_{0,2} = omega_{0,-1}: (z - q d^-1)/(z - 1)
    om2 = omega(c3, 0, 2)
    want2 = LaurentPoly.var(u) - LaurentPoly.monomial(1, ((Q, 1), (D, -1), (v, 1)))
    assert cross_multiply_equal(om2, RatFunc(want2, (b,)))


def test_omega_eval_example(c3):
    om = omega(c3, 0, 0)
    val = om.evaluate({X(0, 1): Fraction(2), X(0, 2): Fraction(1), Q: Fraction(3)})
    assert val == Fraction(17, 9)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_kernel_reflection_all_pairs(n):
    cfg = AlgebraConfig(n)
    for i in range(n):
        for j in range(n):
            assert kernel_reflection_holds(cfg, i, j)


def test_unit_laws(c3, c1, rng):
    for cfg in (c3, c1):
        one = ShuffleElement.unit(cfg)
        for _ in range(5):
            F = monomial_generator(cfg, rng.randrange(cfg.n), rng.randint(-2, 2))
            assert star(one, F) == F
            assert star(F, one) == F


def test_star_adjacent_single_modes(c3):
    # e(0,0) * e(1,0) is the single kernel factor omega_{0,1}(x01/x11)
    P = star(monomial_generator(c3, 0, 0), monomial_generator(c3, 1, 0))
    assert P.deg == (1, 1, 0)
    want = LaurentPoly.monomial(1, ((D, -1), (X(0, 1), 1))) - LaurentPoly.monomial(
        1, ((Q, 1), (X(1, 1), 1))
    )
    assert P.numerator == want


def test_star_one_color_pair_matches_sym_expansion(c1):
    # star(x^0, x^0) = lambda(x1/x2) + lambda(x2/x1)
    K1 = monomial_generator(c1, 0, 0)
    got = star(K1, K1)

    def lam(u, v):
        nums, dens = omega_factors(1, 0, 0, u, v)
        num = poly_prod(nums)
        forms = []
        for f, mn, mm in dens:
            forms.append(f)
            num = num.scale_mono(1 / mn, mono_inv(mm))
        return RatFunc(num, forms)

    direct = lam(X(0, 1), X(0, 2)) + lam(X(0, 2), X(0, 1))
    assert cross_multiply_equal(got.as_ratfunc(), direct)


def test_engine_star_matches_reference(rng):
    cases = []
    for n in (1, 2, 3):
        cfg = AlgebraConfig(n)
        for _ in range(5):
            F = monomial_generator(cfg, rng.randrange(n), rng.randint(-2, 2))
            G = monomial_generator(cfg, rng.randrange(n), rng.randint(-2, 2))
            cases.append((F, G))
    c3 = AlgebraConfig(3)
    cases.append((gen_F_k_mu(c3, 1, Param("mu1")), gen_F_k_mu(c3, 1, Param("nu1"))))
    cases.append((gen_K_m(2), gen_K_m(1)))
    for F, G in cases:
        assert star(F, G) == star_reference(F, G)


def test_normalize_multiply_through(c3):
    # (x01+x11)(x01-x11)/(x01-x11) in degree (1,1,0) keeps the factor implicit
    b, _, _ = BinomialForm.make(X(0, 1), X(1, 1), 1)
    num = (LaurentPoly.var(X(0, 1)) + LaurentPoly.var(X(1, 1))) * b.as_poly()
    raw = RatFunc(num, (b,))
    elem = normalize_to_pole_form(raw, c3, (1, 1, 0))
    assert cross_multiply_equal(elem.as_ratfunc(), raw)
    assert elem.numerator == num


def test_normalize_pole_violation_nonadjacent():
    # colors 0 and 2 are only non-adjacent from four colors up
    c4 = AlgebraConfig(4)
    b, _, _ = BinomialForm.make(X(0, 1), X(2, 1), 1)
    raw = RatFunc(LaurentPoly.one(), (b,))
    with pytest.raises(PoleViolation):
        normalize_to_pole_form(raw, c4, (1, 0, 1, 0))


def test_normalize_cyclic_adjacency_three_colors(c3):
    # with three colors the pair (2, 0) is adjacent, so the same fraction
    # is already in pole form up to orientation
    b, _, _ = BinomialForm.make(X(0, 1), X(2, 1), 1)
    raw = RatFunc(LaurentPoly.one(), (b,))
    elem = normalize_to_pole_form(raw, c3, (1, 0, 1))
    assert cross_multiply_equal(elem.as_ratfunc(), raw)


def test_normalize_rejects_asymmetric(c3):
    raw = RatFunc(LaurentPoly.var(X(0, 1)))
    with pytest.raises(NotSymmetric):
        normalize_to_pole_form(raw, c3, (2, 0, 0))


def test_monomial_generator_examples(c3, c1):
    e = monomial_generator(c3, 0, 0)
    assert e.deg == (1, 0, 0) and e.numerator == LaurentPoly.one()
    e2 = monomial_generator(c3, 1, -2)
    assert e2.numerator == LaurentPoly.var(X(1, 1), -2)
    e3 = monomial_generator(c1, 0, 3)
    assert e3.deg == (1,) and e3.numerator == LaurentPoly.var(X(0, 1), 3)


def test_tot_deg_examples(c3):
    assert tot_deg(ShuffleElement.unit(c3)) == 0
    assert tot_deg(monomial_generator(c3, 0, 5)) == 5
    for k in (1, 2):
        assert tot_deg(gen_F_k_mu(c3, k, Param("mu1"))) == 0
    bad = monomial_generator(c3, 0, 0) + monomial_generator(c3, 0, 1)
    with pytest.raises(Inhomogeneous):
        tot_deg(bad)


def test_wheel_vacuous_and_generators(c3):
    assert wheel_check(monomial_generator(c3, 0, 4))
    assert wheel_check(gen_F_k_mu(c3, 1, Param("mu1")))
    assert wheel_check(gen_F_k_mu(c3, 2, Param("mu1")))


def test_wheel_closure_of_products(c3, c1):
    P = star(
        monomial_generator(c3, 0, 0),
        star(monomial_generator(c3, 0, 1), monomial_generator(c3, 1, 0)),
    )
    assert wheel_check(P)
    K2 = gen_K_m(2)
    assert wheel_check(star(K2, monomial_generator(c1, 0, 0)))


def test_wheel_detects_violation(c3):
    # a symmetric numerator with no zero at the wheel pattern must fail
    bad = ShuffleElement(c3, (2, 1, 0), LaurentPoly.one())
    assert not wheel_check(bad)


def test_serre_cubic_and_quartic(c3, c2):
    assert serre_cubic(c3, 1, 2, (0, 0, 0)).is_zero()
    assert serre_cubic(c3, 1, 0, (1, 0, 0)).is_zero()
    assert serre_quartic(c2, 0, (0, 0, 0, 0)).is_zero()
    # sanity: the cubic bracket without symmetrization is not zero
    e = monomial_generator(c3, 1, 0)
    w = monomial_generator(c3, 2, 0)
    assert not (star(star(e, e), w) - star(w, star(e, e))).is_zero()


def test_distant_colors_commute_n4():
    c4 = AlgebraConfig(4)
    a = monomial_generator(c4, 0, 2)
    b = monomial_generator(c4, 2, -1)
    assert (star(a, b) - star(b, a)).is_zero()


def test_associativity_random(rng):
    checked = 0
    for n in (1, 2, 3):
        cfg = AlgebraConfig(n)
        pool = [monomial_generator(cfg, i, k) for i in range(n) for k in (-1, 0, 1, 2)]
        for _ in range(7):
            F, G, H = (rng.choice(pool) for _ in range(3))
            assert star(star(F, G), H) == star(F, star(G, H))
            checked += 1
    assert checked >= 20


def test_grading_additivity(rng, c3):
    pool = [monomial_generator(c3, i, k) for i in range(3) for k in (0, 1, 2)]
    pool.append(gen_F_k_mu(c3, 1, Param("mu1")))
    for _ in range(8):
        F, G = rng.choice(pool), rng.choice(pool)
        P = star(F, G)
        assert P.deg == tuple(a + b for a, b in zip(F.deg, G.deg))
        if not P.is_zero():
            assert tot_deg(P) == tot_deg(F) + tot_deg(G)


def test_pole_denominator_shapes():
    assert len(pole_denominator(3, (1, 1, 1))) == 3
    assert len(pole_denominator(2, (1, 1))) == 2  # squared factor
    assert len(pole_denominator(1, (3,))) == 6  # three pairs, squared


def test_element_json_roundtrip(c3):
    F = gen_F_k_mu(c3, 1, Param("mu1"))
    back = ShuffleElement.from_json(F.to_json())
    assert back == F
