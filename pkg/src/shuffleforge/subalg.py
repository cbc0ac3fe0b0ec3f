"""Named generator families, commutators, product bases, and rank certificates.

The commutative-family generators are built straight from their defining
fractions and renormalized into pole form.  The constraint s_0...s_{n-1} = 1
is enforced structurally: s_0 never appears, every prefix product
s_0...s_i is the monomial (s_{i+1}...s_{n-1})^{-1}.

The square root of ``d`` appearing in scalar prefactors is the parameter
``h`` with h^2 = d (kept canonical by the polynomial kernel).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .polyring import (
    MONO_ONE,
    ONE,
    BinomialForm,
    D,
    DivisionByZero,
    H,
    LaurentPoly,
    Param,
    Q,
    RatFunc,
    VarId,
    X,
    mono_make,
    poly_prod,
    random_rational,
)
from .shuffle import (
    AlgebraConfig,
    ShuffleElement,
    delta,
    monomial_generator,
    normalize_to_pole_form,
    star,
)
from .limits import s_param


# -- generator specifications ---------------------------------------------------

_SPEC_RE = re.compile(
    r"""^\s*(?:
        e\((?P<ei>-?\d+),(?P<ek>-?\d+)\) |
        F\((?P<fk>\d+);(?P<fmu>[A-Za-z_][A-Za-z0-9_]*|-?\d+(?:/\d+)?)\) |
        K\((?P<km>\d+)\) |
        Fk\((?P<fkk>\d+)\) |
        Lk\((?P<lkk>\d+)\) |
        Gamma0\((?P<gp>\d+),(?P<gn>\d+)\)
    )\s*$""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class GeneratorSpec:
    """Symbolic description of a named element, e.g. F(2;mu1) or Gamma0(1,2)."""

    family: str
    indices: tuple
    parameter: str | None = None

    @staticmethod
    def parse(text: str) -> "GeneratorSpec":
        m = _SPEC_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse generator spec {text!r}")
        g = m.groupdict()
        if g["ei"] is not None:
            return GeneratorSpec("Monomial", (int(g["ei"]), int(g["ek"])))
        if g["fk"] is not None:
            return GeneratorSpec("Fmu", (int(g["fk"]),), g["fmu"])
        if g["km"] is not None:
            return GeneratorSpec("Km", (int(g["km"]),))
        if g["fkk"] is not None:
            return GeneratorSpec("Fk", (int(g["fkk"]),))
        if g["lkk"] is not None:
            return GeneratorSpec("Lk", (int(g["lkk"]),))
        return GeneratorSpec("Gamma0", (int(g["gp"]), int(g["gn"])))

    def format(self) -> str:
        if self.family == "Monomial":
            return "e(%d,%d)" % self.indices
        if self.family == "Fmu":
            return "F(%d;%s)" % (self.indices[0], self.parameter)
        if self.family == "Km":
            return "K(%d)" % self.indices
        if self.family == "Fk":
            return "Fk(%d)" % self.indices
        if self.family == "Lk":
            return "Lk(%d)" % self.indices
        return "Gamma0(%d,%d)" % self.indices

    def build(self, config: AlgebraConfig) -> ShuffleElement:
        if self.family == "Monomial":
            return monomial_generator(config, *self.indices)
        if self.family == "Fmu":
            mu = self.parameter
            value = Param(mu) if not re.match(r"^-?\d", mu) else Fraction(mu)
            return gen_F_k_mu(config, self.indices[0], value)
        if self.family == "Km":
            if config.n != 1:
                raise ValueError("K(m) lives in the one-color algebra")
            return gen_K_m(self.indices[0])
        if self.family == "Fk":
            return gen_F_k(config, self.indices[0])
        if self.family == "Lk":
            return gen_L_k(config, self.indices[0])
        return gen_Gamma0(config, *self.indices)


def build_element(config: AlgebraConfig, text: str) -> ShuffleElement:
    return GeneratorSpec.parse(text).build(config)


# -- shared pieces ----------------------------------------------------------------


def s_prefix_mono(n: int, i: int) -> tuple:
    """The prefix product s_0...s_i as a monomial, with s_0 eliminated."""
    return mono_make((s_param(t), -1) for t in range(i + 1, n))


def _xvar(i, j):
    return LaurentPoly.var(X(i, j))


def _qq_factor(i, j, jp) -> LaurentPoly:
    # x(i,j) - q^-2 x(i,j')
    return _xvar(i, j) - LaurentPoly.monomial(1, ((Q, -2), (X(i, jp), 1)))


def _adjacent_denominator(n: int, k: int):
    """Paper-oriented factors (x(i,j) - x(i+1,j')) for a k*delta degree."""
    dens = []
    for i in range(n):
        ip = (i + 1) % n
        for j in range(1, k + 1):
            for jp in range(1, k + 1):
                dens.append(BinomialForm.make(X(i, j), X(ip, jp), 1))
    return dens


def _ratfunc_from_factors(num: LaurentPoly, dens) -> RatFunc:
    from .polyring import mono_inv

    forms = []
    for form, mn, mm in dens:
        forms.append(form)
        num = num.scale_mono(1 / mn, mono_inv(mm))
    return RatFunc(num, forms)


# -- generator families -------------------------------------------------------------


def gen_F_k_mu(config: AlgebraConfig, k: int, mu) -> ShuffleElement:
    """Degree k*delta generator of the interval-membership family.

    Numerator: prod_i prod_{j != j'} (x(i,j) - q^-2 x(i,j')) times
    prod_i (s_0...s_i prod_j x(i,j) - mu prod_j x(i+1,j)), over the adjacent
    pole denominator.  ``mu`` may be a parameter or an exact rational.
    """
    n = config.n
    if n < 2:
        raise ValueError("this family needs at least two colors")
    if k < 1:
        raise ValueError("k must be >= 1")
    if isinstance(mu, VarId):
        mu_coeff, mu_mono = ONE, ((mu, 1),)
    else:
        mu_coeff, mu_mono = Fraction(mu), MONO_ONE
    factors = []
    for i in range(n):
        for j in range(1, k + 1):
            for jp in range(1, k + 1):
                if j != jp:
                    factors.append(_qq_factor(i, j, jp))
    for i in range(n):
        ip = (i + 1) % n
        xs = mono_make([(X(i, j), 1) for j in range(1, k + 1)])
        xs_next = mono_make([(X(ip, j), 1) for j in range(1, k + 1)])
        lead = LaurentPoly.monomial(1, mono_make(list(s_prefix_mono(n, i)) + list(xs)))
        trail = LaurentPoly.monomial(mu_coeff, mono_make(list(mu_mono) + list(xs_next)))
        factors.append(lead - trail)
    num = poly_prod(factors)
    raw = _ratfunc_from_factors(num, _adjacent_denominator(n, k))
    return normalize_to_pole_form(raw, config, tuple(k for _ in range(n)))


def gen_F_k(config: AlgebraConfig, k: int) -> ShuffleElement:
    """The slope-zero family: F_0 = 1 and for k > 0 the closed-form fraction."""
    n = config.n
    if n < 2:
        raise ValueError("this family needs at least two colors")
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return ShuffleElement.unit(config)
    factors = []
    for i in range(n):
        for j in range(1, k + 1):
            for jp in range(1, k + 1):
                if j != jp:
                    # q^-1 x(i,j) - q x(i,j')
                    factors.append(
                        LaurentPoly.monomial(1, ((Q, -1), (X(i, j), 1)))
                        - LaurentPoly.monomial(1, ((Q, 1), (X(i, jp), 1)))
                    )
    xall = mono_make([(X(i, j), 1) for i in range(n) for j in range(1, k + 1)])
    num = poly_prod(factors) * LaurentPoly.monomial(1, xall) if factors else LaurentPoly.monomial(1, xall)
    dens = []
    for i in range(n):
        ip = (i + 1) % n
        for j in range(1, k + 1):
            for jp in range(1, k + 1):
                # x(i+1,j') - x(i,j)
                dens.append(BinomialForm.make(X(ip, jp), X(i, j), 1))
    raw = _ratfunc_from_factors(num, dens)
    return normalize_to_pole_form(raw, config, tuple(k for _ in range(n)))


_L_CACHE: dict = {}


def _compositions(k: int, parts: int):
    if parts == 1:
        yield (k,)
        return
    for head in range(1, k - parts + 2):
        for rest in _compositions(k - head, parts - 1):
            yield (head,) + rest


def _twist_scale(n: int, e: int):
    """Scalar t^e with t = d^(-n), the per-color-pair limit twist."""
    return Fraction(1), mono_make(((D, -n * e),))


def gen_L_k(config: AlgebraConfig, k: int) -> ShuffleElement:
    """Logarithms of the F-family, primitive for the scaling limits.

    The scaling limit of a star product of delta-degree blocks a and b picks
    up the kernel twist d^(-n*a*b) (one kernel limit per cross-block color
    pair), so the formal logarithm is taken for the rescaled family
    d^(-n*k(k-1)/2) F_k and the rescaling is pulled back out at the end:
    L_1 = F_1 and L_2 = F_2 - (d^n/2) F_1 * F_1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = config.n
    key = (n, k)
    if key in _L_CACHE:
        return _L_CACHE[key]
    import math

    def hat_F(j):
        c, m = _twist_scale(n, j * (j - 1) // 2)
        return gen_F_k(config, j).scale(c, m)

    hat_cache = _L_CACHE.setdefault(("hat", n), {})

    def hat_L(j):
        if j in hat_cache:
            return hat_cache[j]
        out = hat_F(j)
        for parts in range(2, j + 1):
            coeff = Fraction(1, math.factorial(parts))
            for comp in _compositions(j, parts):
                prod = None
                for c in comp:
                    li = hat_L(c)
                    prod = li if prod is None else star(prod, li)
                out = out - prod.scale(coeff)
        hat_cache[j] = out
        return out

    c, m = _twist_scale(n, -(k * (k - 1) // 2))
    result = hat_L(k).scale(c, m)
    _L_CACHE[key] = result
    return result


def gen_K_m(m: int) -> ShuffleElement:
    """One-color commuting family: K_1 = x^0, K_2 the quadratic kernel, K_m pairwise."""
    if m < 1:
        raise ValueError("m must be >= 1")
    config = AlgebraConfig(1)
    if m == 1:
        return ShuffleElement(config, (1,), LaurentPoly.one())
    factors = []
    dens = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            # (x_i - q^2 x_j)(x_j - q^2 x_i) / (x_i - x_j)^2  with q_1 = q^2
            factors.append(_xvar(0, i) - LaurentPoly.monomial(1, ((Q, 2), (X(0, j), 1))))
            factors.append(_xvar(0, j) - LaurentPoly.monomial(1, ((Q, 2), (X(0, i), 1))))
            f, _, _ = BinomialForm.make(X(0, i), X(0, j), 1)
            dens.append((f, ONE, MONO_ONE))
            dens.append((f, ONE, MONO_ONE))
    raw = _ratfunc_from_factors(poly_prod(factors), dens)
    return normalize_to_pole_form(raw, config, (m,))


def gen_Gamma0(config: AlgebraConfig, p: int, N: int) -> ShuffleElement:
    """Transfer-matrix family member of degree N*delta for the color shift p."""
    n = config.n
    if not 0 <= p < n:
        raise ValueError("p must be a color")
    if N < 0:
        raise ValueError("N must be >= 0")
    if N == 0:
        return ShuffleElement.unit(config)
    if n == 1:
        # scalar * prod_{i != j} (x_i - q^-2 x_j) over the one-color pole form;
        # equals q^{-N(N-1)} K_N (see the acceptance suite).
        sign = -1 if (N * (N - 1) // 2) % 2 else 1
        factors = [
            _xvar(0, i) - LaurentPoly.monomial(1, ((Q, -2), (X(0, j), 1)))
            for i in range(1, N + 1)
            for j in range(1, N + 1)
            if i != j
        ]
        num = (poly_prod(factors) if factors else LaurentPoly.one()).scale_mono(
            sign, ((Q, N * (N - 1)),)
        )
        dens = []
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                if i != j:
                    dens.append(BinomialForm.make(X(0, i), X(0, j), 1))
        raw = _ratfunc_from_factors(num, dens)
        return normalize_to_pole_form(raw, config, (N,))
    # scalar (1-q^-2)^{nN} (-q^n d^{-n/2})^{N^2}, with d^{1/2} carried by h
    scalar = (LaurentPoly.one() - LaurentPoly.monomial(1, ((Q, -2),))) ** (n * N)
    sign = -1 if N % 2 else 1  # (-1)^(N^2) = (-1)^N
    scalar = scalar.scale_mono(sign, mono_make(((Q, n * N * N), (H, -n * N * N))))
    prefactor = mono_make(
        [(X(0, j), 1) for j in range(1, N + 1)] + [(X(p, j), -1) for j in range(1, N + 1)]
    )
    factors = []
    for i in range(n):
        for j in range(1, N + 1):
            for jp in range(1, N + 1):
                if j != jp:
                    factors.append(_qq_factor(i, j, jp))
    xall = mono_make([(X(i, j), 1) for i in range(n) for j in range(1, N + 1)])
    num = poly_prod(factors) if factors else LaurentPoly.one()
    num = num * scalar
    num = num.scale_mono(1, mono_make(list(prefactor) + list(xall)))
    raw = _ratfunc_from_factors(num, _adjacent_denominator(n, N))
    return normalize_to_pole_form(raw, config, tuple(N for _ in range(n)))


# -- theorem-level tooling -----------------------------------------------------------


def commutator(F: ShuffleElement, G: ShuffleElement) -> ShuffleElement:
    """F * G - G * F in pole form (materializes both products)."""
    return star(F, G) - star(G, F)


def commutes(F: ShuffleElement, G: ShuffleElement) -> bool:
    """Exact verdict on F * G == G * F without materializing the products.

    Compares the signed symmetrization tables of the two coset sums; agrees
    with commutator(F, G).is_zero() wherever the latter is feasible.
    """
    from ._symstream import star_commutes

    return star_commutes(F, G)


def mu_params(count: int, prefix: str = "mu"):
    return [Param(f"{prefix}{i}") for i in range(1, count + 1)]


def dim_R(n: int, k: int) -> int:
    """Coefficient of t^k in prod_{m>=1} (1 - t^m)^{-n}."""
    if k < 0:
        raise ValueError("k must be >= 0")
    dp = [0] * (k + 1)
    dp[0] = 1
    for m in range(1, k + 1):
        for _ in range(n):
            for i in range(m, k + 1):
                dp[i] += dp[i - m]
    return dp[k]


def _partitions_desc(k: int):
    """Weakly decreasing positive compositions of k."""

    def rec(remaining, maxpart):
        if remaining == 0:
            yield ()
            return
        for head in range(min(remaining, maxpart), 0, -1):
            for rest in rec(remaining - head, head):
                yield (head,) + rest

    return rec(k, k)


def product_basis(config: AlgebraConfig, k: int, mus=None) -> list:
    """Canonical spanning products F_{k_1}^{mu_{i_1}} * ... with k_1 >= ... >= k_r.

    Exactly dim_R(n, k) elements: one per multiset of (part, mu-index) pairs.
    """
    n = config.n
    if mus is None:
        mus = mu_params(n)
    out = []
    for parts in _partitions_desc(k):
        groups = []
        for size, count in sorted(
            ((s, len(list(g))) for s, g in itertools.groupby(parts)), reverse=True
        ):
            groups.append((size, count))
        index_choices = [
            list(itertools.combinations_with_replacement(range(len(mus)), count))
            for _, count in groups
        ]
        for combo in itertools.product(*index_choices):
            factors = []
            for (size, _), idxs in zip(groups, combo):
                for ix in idxs:
                    factors.append((size, ix))
            prod = None
            for size, ix in factors:
                f = gen_F_k_mu(config, size, mus[ix])
                prod = f if prod is None else star(prod, f)
            out.append(prod)
    expected = dim_R(n, k)
    if len(out) != expected:
        raise AssertionError(f"basis size {len(out)} != dim_R {expected}")
    return out


@dataclass
class SpanProbe:
    """Evaluation-rank probe: elements of equal degree plus a seed."""

    elements: list
    seed: int
    extra_points: int = 2
    retry_budget: int = 32


def _matrix_rank(rows) -> int:
    """Exact rank of a list of Fraction rows by Gaussian elimination."""
    mat = [list(r) for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    row = 0
    for col in range(cols):
        pivot = None
        for r in range(row, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        pv = mat[row][col]
        for r in range(row + 1, len(mat)):
            if mat[r][col]:
                factor = mat[r][col] / pv
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[row])]
        row += 1
        rank += 1
        if row == len(mat):
            break
    return rank


def rank_of_span(probe: SpanProbe) -> int:
    """Exact evaluation rank of the span; a lower bound on its dimension.

    Parameters are fixed at one seeded random rational point; each matrix
    column evaluates every element at a fresh point of distinct x-values.
    """
    import random

    elements = probe.elements
    if not elements:
        return 0
    rfs = [e.as_ratfunc() for e in elements]
    rng = random.Random(probe.seed)
    variables = set()
    for rf in rfs:
        variables |= rf.num.variables()
        for b in rf.den:
            variables.add(b.lhs)
            variables.add(b.rhs)
            variables.update(v for v, _ in b.cmono)
    xvars = sorted((v for v in variables if v.kind != "p"), key=lambda v: v.key)
    pvars = sorted((v for v in variables if v.kind == "p"), key=lambda v: v.key)

    def draw():
        # small integer sample values keep the exact evaluations cheap
        val = 0
        while not val:
            val = rng.randint(-99, 99)
        return Fraction(val)

    point_base = {}
    for v in pvars:
        point_base[v] = draw()
    if H in point_base:
        point_base[D] = point_base[H] ** 2
    npoints = len(elements) + probe.extra_points
    columns = []
    for _ in range(npoints):
        for attempt in range(probe.retry_budget + 1):
            values = set()
            point = dict(point_base)
            for v in xvars:
                val = draw()
                while val in values:
                    val = draw()
                values.add(val)
                point[v] = val
            try:
                columns.append([rf.evaluate(point) for rf in rfs])
                break
            except DivisionByZero:
                if attempt == probe.retry_budget:
                    raise
    rows = [[col[i] for col in columns] for i in range(len(elements))]
    return _matrix_rank(rows)
