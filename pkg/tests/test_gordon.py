"""Partition enumeration, specialization maps, and vanishing-factor products."""

import itertools

import pytest

from shuffleforge.polyring import (
    D,
    Q,
    LaurentPoly,
    Param,
    X,
    Y,
    Y2,
    cross_multiply_equal,
    mono_make,
    poly_prod,
)
from shuffleforge.shuffle import AlgebraConfig, ShuffleElement, monomial_generator, star
from shuffleforge.limits import Interval, interval_degree_vector
from shuffleforge.gordon import (
    PartitionL,
    Q_L,
    Q_L_factors,
    divide_by_linear_form,
    enumerate_partitions,
    phi_L,
    phi_L_divisible_by_Q,
    phi_lambda,
    young_transpose,
)
from shuffleforge.subalg import gen_F_k_mu, s_prefix_mono


def brute_force_partitions(n, kbar):
    """Independent enumeration: all interval multisets with left ends in [0, n)."""
    total = sum(kbar)
    singles = [
        (a, a + ln - 1)
        for ln in range(1, total + 1)
        for a in range(n)
        if all(c <= k for c, k in zip(interval_degree_vector(n, a, a + ln - 1), kbar))
    ]
    found = set()

    def rec(start, remaining, acc):
        if not any(remaining):
            found.add(tuple(sorted(acc, key=lambda iv: (-(iv[1] - iv[0]), iv[0]))))
            return
        for idx in range(start, len(singles)):
            a, b = singles[idx]
            dv = interval_degree_vector(n, a, b)
            if all(d <= r for d, r in zip(dv, remaining)):
                rec(idx, [r - d for r, d in zip(remaining, dv)], acc + [(a, b)])

    rec(0, list(kbar), [])
    return found


@pytest.mark.parametrize(
    "kbar", [(1, 0, 0), (1, 1, 0), (1, 1, 1), (2, 1, 1), (2, 2, 2)]
)
def test_enumeration_matches_brute_force(kbar):
    got = {
        tuple((iv.a, iv.b) for iv in L.intervals) for L in enumerate_partitions(3, kbar)
    }
    assert got == brute_force_partitions(3, kbar)


def test_enumeration_examples():
    assert [L.describe() for L in enumerate_partitions(3, (1, 0, 0))] == ["0-0"]
    assert [L.describe() for L in enumerate_partitions(3, (1, 1, 0))] == [
        "0-1",
        "0-0;1-1",
    ]
    delta_classes = [L.describe() for L in enumerate_partitions(3, (1, 1, 1))]
    assert delta_classes == [
        "0-2",
        "1-3",
        "2-4",
        "0-1;2-2",
        "1-2;0-0",
        "2-3;1-1",
        "0-0;1-1;2-2",
    ]


def test_partition_order():
    assert PartitionL.parse("0-2") > PartitionL.parse("0-1;2-2")
    assert PartitionL.parse("0-1;2-2") > PartitionL.parse("0-0;1-1;2-2")


def test_phi_L_single_box(c3):
    e = monomial_generator(c3, 0, 0)
    assert phi_L(e, PartitionL.parse("0-0")) == LaurentPoly.one()


def test_phi_L_kernel_zero_on_chain(c3):
    # the adjacent-pair product vanishes under the connected interval [0,1]
    P = star(monomial_generator(c3, 0, 0), monomial_generator(c3, 1, 0))
    assert phi_L(P, PartitionL.parse("0-1")).is_zero()


def test_phi_L_linearity(c3):
    mu, nu = Param("mu1"), Param("nu1")
    F = gen_F_k_mu(c3, 1, mu)
    G = gen_F_k_mu(c3, 1, nu)
    L = PartitionL.parse("0-2")
    lhs = phi_L(F + G.scale(3), L)
    assert lhs == phi_L(F, L) + phi_L(G, L) * 3


def test_phi_L_well_defined_under_variable_splits(c3):
    # both intervals of 0-2;0-2 draw one variable per color; swapping the draw
    # must not change the image because the numerator is color-symmetric
    F = gen_F_k_mu(c3, 2, Param("mu1"))
    L = PartitionL.parse("0-2;0-2")
    standard = phi_L(F, L)
    swap = {}
    for i in range(3):
        swap[X(i, 1)] = X(i, 2)
        swap[X(i, 2)] = X(i, 1)
    assert phi_L(ShuffleElement(c3, F.deg, F.numerator.relabel(swap)), L) == standard


def test_Q_L_examples():
    assert Q_L(3, PartitionL.parse("0-2")) == LaurentPoly.one()
    got = Q_L(3, PartitionL.parse("0-0;1-1"))
    want = LaurentPoly.monomial(1, ((Q, -1), (D, -1), (Y(1), 1))) - LaurentPoly.monomial(
        1, ((Q, -1), (D, -1), (Y(2), 1))
    )
    assert got == want


@pytest.mark.parametrize(
    "intervals", ["0-2;0-2", "0-5;0-0", "0-1;1-2", "0-3;2-2;1-1"]
)
def test_Q_L_degree_formulas(intervals):
    n = 3
    L = PartitionL.parse(intervals)
    kbar = L.degree_vector(n)
    ql = Q_L(n, L)
    lvecs = [
        interval_degree_vector(n, iv.a, iv.b) for iv in L.intervals
    ]
    # per-variable degree
    for t, lv in enumerate(lvecs, start=1):
        want = sum(
            lv[i] * (kbar[(i - 1) % n] + kbar[(i + 1) % n]) - 2 * lv[i] * lv[(i + 1) % n]
            for i in range(n)
        )
        assert ql.exp_range(Y(t))[1] == want
    # total degree over all pairs
    want_tot = sum(
        lvecs[u][i] * (lvecs[v][(i + 1) % n] + lvecs[v][(i - 1) % n])
        for u in range(len(lvecs))
        for v in range(u + 1, len(lvecs))
        for i in range(n)
    )
    deg = {sum(e for v, e in m if v.kind != "p") for m in ql.terms}
    assert deg == {want_tot}


def test_phi_lambda_single_box_relabeling(c3):
    F = gen_F_k_mu(c3, 1, Param("mu1"))
    got = phi_lambda(F, (1,))
    sub = {X(i, 1): LaurentPoly.monomial(1, ((Q, 2), (Y2(i, 1), 1))) for i in range(3)}
    want = F.as_ratfunc().substitute(sub)
    assert cross_multiply_equal(got, want)


def test_phi_lambda_column_kills_row_pattern(c3):
    assert phi_lambda(gen_F_k_mu(c3, 2, Param("mu1")), (2,)).is_zero()


def test_phi_lambda_shape(c3):
    mu = Param("mu1")
    F2m = gen_F_k_mu(c3, 2, mu)
    shape = LaurentPoly.one()
    for i in range(3):
        yi = mono_make(((Y2(i, 1), 1), (Y2(i, 2), 1)))
        yn = mono_make(((Y2((i + 1) % 3, 1), 1), (Y2((i + 1) % 3, 2), 1)))
        lead = LaurentPoly.monomial(1, mono_make(list(s_prefix_mono(3, i)) + list(yi)))
        shape = shape * (lead - LaurentPoly.monomial(1, mono_make([(mu, 1)] + list(yn))))
    carrier = ShuffleElement(
        c3,
        (2, 2, 2),
        poly_prod(
            [
                LaurentPoly.var(X(i, j))
                - LaurentPoly.monomial(1, ((Q, -2), (X(i, jp), 1)))
                for i in range(3)
                for j in (1, 2)
                for jp in (1, 2)
                if j != jp
            ]
        ),
    )
    common = phi_lambda(carrier, (1, 1))
    target = common * shape.scale_mono(1, mono_make(((Q, 12),)))
    assert cross_multiply_equal(phi_lambda(F2m, (1, 1)), target)


def test_phi_lambda_rejects_one_color(c1):
    from shuffleforge.subalg import gen_K_m

    with pytest.raises(ValueError):
        phi_lambda(gen_K_m(2), (2,))


def test_divisibility_gated_on_upper_classes(c3):
    F1m = gen_F_k_mu(c3, 1, Param("mu1"))
    classes = enumerate_partitions(3, (1, 1, 1))
    checked = 0
    for L in classes:
        larger = [Lp for Lp in classes if Lp > L]
        if all(phi_L(F1m, Lp).is_zero() for Lp in larger):
            ok, _ = phi_L_divisible_by_Q(F1m, L)
            assert ok, L.describe()
            checked += 1
    assert checked == 3  # the three maximal single-interval classes


def _is_extension(f):
    for m in f.terms:
        exps = dict(m)
        if exps.get(Q, 0) != exps.get(D, 0):
            return False
    return True


@pytest.mark.parametrize(
    "kind,intervals,n,wheel_count",
    [
        ("K3", "0-1;0-0", 1, 2),
        ("F2mu", "0-2;0-2", 3, 4),
        ("F1mu_star_e00", "0-2;0-0", 3, 1),
    ],
)
def test_wheel_factors_divide_images(kind, intervals, n, wheel_count):
    # wheel-type factors of Q_L divide images of wheel-satisfying elements
    from shuffleforge.subalg import gen_K_m

    cfg = AlgebraConfig(n)
    if kind == "K3":
        elem = gen_K_m(3)
    elif kind == "F2mu":
        elem = gen_F_k_mu(cfg, 2, Param("mu1"))
    else:
        elem = star(gen_F_k_mu(cfg, 1, Param("mu1")), monomial_generator(cfg, 0, 0))
    L = PartitionL.parse(intervals)
    img = phi_L(elem, L)
    assert not img.is_zero()
    wheel_part = [f for f in Q_L_factors(n, L) if not _is_extension(f)]
    assert len(wheel_part) == wheel_count
    quotient = img
    for f in wheel_part:
        quotient = divide_by_linear_form(quotient, f)
    assert not quotient.is_zero()


def test_young_transpose():
    assert young_transpose((2,)) == (1, 1)
    assert young_transpose((1, 1)) == (2,)
    assert young_transpose((3, 1)) == (2, 1, 1)
    with pytest.raises(ValueError):
        young_transpose((1, 2))
