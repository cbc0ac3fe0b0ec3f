"""Named verification suites with deterministic reports.

Each check returns (ok, details) where details holds only reproducible data
(term counts, interval counts, verdicts); wall-clock timings are reported
separately so that reports are byte-stable for a fixed seed.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

from .polyring import (
    BinomialForm,
    D,
    LaurentPoly,
    Param,
    Q,
    RatFunc,
    X,
    cross_multiply_equal,
    mono_make,
    poly_prod,
)
from .shuffle import (
    AlgebraConfig,
    ShuffleElement,
    deg_add,
    kernel_reflection_holds,
    monomial_generator,
    serre_cubic,
    serre_quartic,
    star,
    tot_deg,
    wheel_check,
)
from .shuffle import _relabel_ratfunc
from .limits import (
    interval_degree_vector,
    limit_infinity,
    limit_zero,
    membership_A,
    slope_zero_membership,
)
from .subalg import (
    SpanProbe,
    commutator,
    commutes,
    dim_R,
    gen_F_k,
    gen_F_k_mu,
    gen_Gamma0,
    gen_K_m,
    gen_L_k,
    mu_params,
    product_basis,
    rank_of_span,
)
from .gordon import (
    PartitionL,
    Q_L_factors,
    divide_by_linear_form,
    enumerate_partitions,
    phi_L,
    phi_L_divisible_by_Q,
    phi_lambda,
)
from .polyring import NotDivisible, Y2
from .subalg import s_prefix_mono

DEFAULT_SEED = 20260810


class SuiteContext:
    def __init__(self, seed: int, long: bool):
        self.seed = seed
        self.long = long
        self.rng = random.Random(seed)
        self.products = []  # materialized star products, wheel-checked in C11

    def record(self, elem):
        self.products.append(elem)
        return elem


def check_kernel_reflection(ctx):
    cfg = AlgebraConfig(3)
    pairs = {}
    for i in range(3):
        for j in range(3):
            pairs[f"{i},{j}"] = kernel_reflection_holds(cfg, i, j)
    return all(pairs.values()), {"pairs": pairs}


def check_serre_vanishing(ctx):
    c3 = AlgebraConfig(3)
    c2 = AlgebraConfig(2)
    results = {}
    for i, j in ((1, 2), (1, 0)):
        for modes in ((0, 0, 0), (1, 0, 0)):
            z = serre_cubic(c3, i, j, modes)
            results[f"cubic:i={i},j={j},modes={modes}"] = z.is_zero()
    for i in (0, 1):
        z = serre_quartic(c2, i, (0, 0, 0, 0))
        results[f"quartic:i={i},modes=(0,0,0,0)"] = z.is_zero()
    return all(results.values()), {"relations": results}


def check_interval_membership(ctx):
    c3 = AlgebraConfig(3)
    mu = Param("mu1")
    details = {}
    ok = True
    for k in (1, 2):
        rep = membership_A(gen_F_k_mu(c3, k, mu))
        details[f"k={k}"] = {
            "ok": rep.ok,
            "intervals": rep.intervals_checked,
            "violations": rep.violations,
        }
        ok = ok and rep.ok
    return ok, details


def check_commutativity(ctx):
    nu1, nu2 = Param("nu1"), Param("nu2")
    details = {}
    ok = True
    shapes = [(1, 1), (1, 2)]
    if ctx.long:
        shapes.append((2, 2))
    for n in (3, 2):
        cfg = AlgebraConfig(n)
        for m1, m2 in shapes:
            verdict = commutes(gen_F_k_mu(cfg, m1, nu1), gen_F_k_mu(cfg, m2, nu2))
            details[f"n={n},({m1},{m2})"] = verdict
            ok = ok and verdict
    return ok, details


def check_dimension_certificate(ctx):
    c3 = AlgebraConfig(3)
    mus = mu_params(3)
    details = {}
    ok = True
    ks = [1, 2] + ([3] if ctx.long else [])
    for k in ks:
        basis = [ctx.record(b) for b in product_basis(c3, k, mus)]
        want = dim_R(3, k)
        got = rank_of_span(SpanProbe(basis, seed=ctx.seed))
        details[f"k={k}"] = {"rank": got, "dim_R": want, "basis": len(basis)}
        ok = ok and got == want == len(basis)
    return ok, details


def check_off_lattice(ctx):
    c3 = AlgebraConfig(3)
    rep = membership_A(monomial_generator(c3, 0, 0))
    return (not rep.ok), {
        "ok": rep.ok,
        "violations": rep.violations,
    }


def check_slope_zero_limits(ctx):
    c3 = AlgebraConfig(3)
    F1 = gen_F_k(c3, 1)
    F2 = gen_F_k(c3, 2)
    L2 = gen_L_k(c3, 2)
    details = {}
    offdiag = True
    for lv in itertools.product(range(3), repeat=3):
        li = limit_infinity(F2, lv)
        if lv in ((0, 0, 0), (1, 1, 1), (2, 2, 2)):
            offdiag = offdiag and li.exists and not li.is_zero()
        else:
            offdiag = offdiag and li.exists and li.is_zero()
    details["F2_offdiagonal_zero"] = offdiag

    rf1 = F1.as_ratfunc()
    num2, den2 = _relabel_ratfunc(rf1.num, rf1.den, {X(i, 1): X(i, 2) for i in range(3)})
    plain = rf1 * RatFunc(num2, den2)
    li = limit_infinity(F2, (1, 1, 1))
    details["F2_delta_is_F1xF1"] = li.exists and cross_multiply_equal(li.value, plain)
    for lv, name in (((0, 0, 0), "zero"), ((2, 2, 2), "full")):
        li = limit_infinity(F2, lv)
        details[f"F2_{name}_is_F2"] = li.exists and cross_multiply_equal(
            li.value, F2.as_ratfunc()
        )

    lzero = True
    for lv in itertools.product(range(3), repeat=3):
        if lv == (0, 0, 0) or lv == (2, 2, 2):
            continue
        li = limit_infinity(L2, lv)
        lzero = lzero and li.exists and li.is_zero()
    details["L2_strictly_between_zero"] = lzero
    ok = all(v for v in details.values())
    return ok, details


def check_gamma_family(ctx):
    c3 = AlgebraConfig(3)
    gs = [gen_Gamma0(c3, p, 1) for p in range(3)]
    details = {}
    ok = True
    for p in range(3):
        for q in range(p + 1, 3):
            com = commutator(gs[p], gs[q])
            ctx.record(star(gs[p], gs[q]))
            details[f"p={p},q={q}"] = com.is_zero()
            ok = ok and com.is_zero()
    return ok, details


def check_one_color(ctx):
    c1 = AlgebraConfig(1)
    details = {}
    ok = True
    for a in range(1, 4):
        for b in range(a, 4):
            verdict = commutes(gen_K_m(a), gen_K_m(b))
            details[f"[K{a},K{b}]"] = verdict
            ok = ok and verdict
    K2 = gen_K_m(2)
    for k in range(3):
        li = limit_infinity(K2, (k,))
        lz = limit_zero(K2, (k,))
        same = li.exists and lz.exists and cross_multiply_equal(li.value, lz.value)
        details[f"K2_limits_k={k}"] = same
        ok = ok and same
    for N in (1, 2) + ((3,) if ctx.long else ()):
        got = gen_Gamma0(c1, 0, N)
        want = gen_K_m(N).scale(1, ((Q, -N * (N - 1)),))
        match = got == want or cross_multiply_equal(got.as_ratfunc(), want.as_ratfunc())
        details[f"Gamma0_vs_K{N}"] = match
        ok = ok and match
    return ok, details


def check_gordon_maps(ctx):
    c3 = AlgebraConfig(3)
    mu = Param("mu1")
    F2m = gen_F_k_mu(c3, 2, mu)
    details = {}
    details["phi_2_vanishes"] = phi_lambda(F2m, (2,)).is_zero()

    # phi_(1,1) image must equal (common factor) * prod(s_0..s_i Y_i - mu Y_{i+1})
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
                LaurentPoly.var(X(i, j)) - LaurentPoly.monomial(1, ((Q, -2), (X(i, jp), 1)))
                for i in range(3)
                for j in (1, 2)
                for jp in (1, 2)
                if j != jp
            ]
        ),
    )
    common = phi_lambda(carrier, (1, 1))
    target = common * shape.scale_mono(Fraction(1), mono_make(((Q, 12),)))
    details["phi_11_shape"] = cross_multiply_equal(phi_lambda(F2m, (1, 1)), target)

    # full Q_L divisibility over the delta classes, gated on upper-class vanishing
    F1m = gen_F_k_mu(c3, 1, mu)
    classes = enumerate_partitions(3, (1, 1, 1))
    gated = {}
    top_checked = 0
    for L in classes:
        larger = [Lp for Lp in classes if Lp > L]
        if all(phi_L(F1m, Lp).is_zero() for Lp in larger):
            divisible, _ = phi_L_divisible_by_Q(F1m, L)
            gated[L.describe()] = divisible
            top_checked += 1
        else:
            gated[L.describe()] = "skipped: upper classes do not vanish"
    details["delta_classes"] = gated
    details["delta_classes_checked"] = top_checked

    # wheel-type factors (those carrying a q/d asymmetry, unlike the pure
    # qd-power extension factors) divide images of wheel-satisfying elements
    def _is_extension_form(f):
        for m in f.terms:
            exps = dict(m)
            if exps.get(Q, 0) != exps.get(D, 0):
                return False
        return True

    def _wheel_divides(elem, n, intervals):
        L = PartitionL.parse(intervals)
        img = phi_L(elem, L)
        wheel_part = [f for f in Q_L_factors(n, L) if not _is_extension_form(f)]
        if img.is_zero() or not wheel_part:
            return False
        try:
            for f in wheel_part:
                img = divide_by_linear_form(img, f)
        except NotDivisible:
            return False
        return not img.is_zero()

    prod = ctx.record(star(F1m, monomial_generator(c3, 0, 0)))
    details["wheel_factors_divide_F2"] = _wheel_divides(F2m, 3, "0-2;0-2")
    details["wheel_factors_divide_product"] = _wheel_divides(prod, 3, "0-2;0-0")
    ok = (
        details["phi_2_vanishes"]
        and details["phi_11_shape"]
        and top_checked >= 3
        and all(v is True for v in gated.values() if isinstance(v, bool))
        and details["wheel_factors_divide_F2"]
        and details["wheel_factors_divide_product"]
    )
    return ok, details


def check_algebra_laws(ctx):
    rng = random.Random(ctx.seed ^ 0x5EED)
    details = {}
    unit_ok = True
    grading_ok = True
    assoc_ok = True
    triples = 0
    for n in (1, 2, 3):
        cfg = AlgebraConfig(n)
        one = ShuffleElement.unit(cfg)
        pool = [monomial_generator(cfg, i, k) for i in range(n) for k in (-1, 0, 1, 2)]
        if n == 3:
            pool.append(gen_F_k_mu(cfg, 1, Param("mu1")))
        if n == 1:
            pool.append(gen_K_m(2))
        for F in pool:
            unit_ok = unit_ok and star(one, F) == F and star(F, one) == F
        rounds = 7 if n == 3 else (7 if n == 2 else 6)
        for _ in range(rounds):
            F, G, H = (rng.choice(pool) for _ in range(3))
            left = star(star(F, G), H)
            right = star(F, star(G, H))
            assoc_ok = assoc_ok and left == right
            triples += 1
            P = ctx.record(star(F, G))
            if P.deg != deg_add(F.deg, G.deg):
                grading_ok = False
            try:
                if not P.is_zero() and tot_deg(P) != tot_deg(F) + tot_deg(G):
                    grading_ok = False
            except Exception:
                grading_ok = False
    details["unit"] = unit_ok
    details["associativity_triples"] = triples
    details["associativity"] = assoc_ok
    details["grading"] = grading_ok
    wheels = all(wheel_check(p) for p in ctx.products)
    details["wheel_closure_products"] = len(ctx.products)
    details["wheel_closure"] = wheels
    ok = unit_ok and assoc_ok and grading_ok and wheels and triples >= 20
    return ok, details


CHECKS = [
    ("C01_kernel_reflection", check_kernel_reflection),
    ("C02_serre_vanishing", check_serre_vanishing),
    ("C03_interval_membership", check_interval_membership),
    ("C04_commutativity", check_commutativity),
    ("C05_dimension_certificate", check_dimension_certificate),
    ("C06_off_lattice_vanishing", check_off_lattice),
    ("C07_slope_zero_limits", check_slope_zero_limits),
    ("C08_gamma_family", check_gamma_family),
    ("C09_one_color_algebra", check_one_color),
    ("C10_gordon_maps", check_gordon_maps),
    ("C11_algebra_laws", check_algebra_laws),
]

SUITES = {
    "desk": [name for name, _ in CHECKS],
    "long": [name for name, _ in CHECKS],
}


def run_suite(suite: str = "desk", seed: int = DEFAULT_SEED, long: bool = None, progress=None):
    """Run a named suite; returns (report, timings) with a deterministic report."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    if long is None:
        long = suite == "long"
    ctx = SuiteContext(seed=seed, long=long)
    table = dict(CHECKS)
    checks = []
    timings = {}
    all_ok = True
    for name in SUITES[suite]:
        t0 = time.monotonic()
        ok, details = table[name](ctx)
        timings[name] = time.monotonic() - t0
        checks.append({"name": name, "ok": ok, "details": details})
        all_ok = all_ok and ok
        if progress is not None:
            progress(name, ok, timings[name])
    report = {
        "suite": suite,
        "seed": seed,
        "long": long,
        "ok": all_ok,
        "checks": checks,
    }
    return report, timings
