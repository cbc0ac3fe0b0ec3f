"""Scaling substitutions, interval limits, and membership predicates.

``scaled`` multiplies the first ``l_i`` variables of each color by a fresh
parameter ``xi``; limits at ``xi -> oo`` and ``xi -> 0`` are read off exactly
from the leading and trailing ``xi``-parts of the numerator and of each
denominator factor.  Nonexistence of a limit is data, not an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .polyring import (
    MONO_ONE,
    ONE,
    LaurentPoly,
    Param,
    RatFunc,
    VarId,
    X,
    XI,
    cross_multiply_equal,
    mono_inv,
    mono_make,
)
from .shuffle import (
    AlgebraConfig,
    Inhomogeneous,
    ShuffleElement,
    deg_leq,
    pole_denominator,
    tot_deg,
)


@dataclass(frozen=True)
class Interval:
    """Integer interval [a, b] with a <= b."""

    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError("interval needs a <= b")

    @property
    def length(self) -> int:
        return self.b - self.a + 1


def interval_degree_vector(n: int, a: int, b: int) -> tuple:
    """Residue counts of the integers in [a, b] modulo n."""
    if a > b:
        raise ValueError("interval needs a <= b")
    out = [0] * n
    for c in range(a, b + 1):
        out[c % n] += 1
    return tuple(out)


@dataclass(frozen=True)
class LimitResult:
    exists: bool
    value: RatFunc | None = None

    def is_zero(self) -> bool:
        return self.exists and self.value.is_zero()


def scaled(elem: ShuffleElement, lvec) -> RatFunc:
    """The element with the first l_i variables of each color multiplied by xi."""
    lvec = tuple(lvec)
    if not deg_leq(lvec, elem.deg) or any(l < 0 for l in lvec):
        raise ValueError("scaling vector must satisfy 0 <= l <= deg")
    sub = {}
    for i in range(elem.config.n):
        for j in range(1, lvec[i] + 1):
            v = X(i, j)
            sub[v] = LaurentPoly.monomial(1, ((XI, 1), (v, 1)))
    return elem.as_ratfunc().substitute(sub)


def _limit_of_scaled(rf: RatFunc, at_infinity: bool) -> LimitResult:
    if rf.num.is_zero():
        return LimitResult(True, RatFunc(LaurentPoly.zero()))
    levels = rf.num.split_by_var(XI)
    num_exp = max(levels) if at_infinity else min(levels)
    lead = levels[num_exp]
    den_exp = 0
    folds = []  # monomials to divide out of the numerator
    forms = []
    for b in rf.den:
        gamma = 0
        for v, e in b.cmono:
            if v is XI:
                gamma = e
                break
        if gamma == 0:
            forms.append(b)
            continue
        stripped = mono_make((v, e) for v, e in b.cmono if v is not XI)
        if at_infinity:
            den_exp += max(0, gamma)
            dominant_rhs = gamma > 0
        else:
            den_exp += min(0, gamma)
            dominant_rhs = gamma < 0
        if dominant_rhs:
            folds.append((-b.cnum, stripped + ((b.rhs, 1),)))
        else:
            folds.append((ONE, ((b.lhs, 1),)))
    diff = num_exp - den_exp
    if (at_infinity and diff > 0) or (not at_infinity and diff < 0):
        return LimitResult(False, None)
    if diff != 0:
        return LimitResult(True, RatFunc(LaurentPoly.zero()))
    num = lead
    for c, m in folds:
        num = num.scale_mono(1 / c, mono_inv(m))
    return LimitResult(True, RatFunc(num, forms))


def _limit_direct(elem: ShuffleElement, lvec, at_infinity: bool) -> LimitResult:
    """Limit by xi-degree bookkeeping on the element itself (no substitution).

    Agrees with _limit_of_scaled(scaled(elem, lvec), ...); bucketing the
    numerator by total degree in the scaled variables avoids rebuilding it.
    """
    lvec = tuple(lvec)
    if not deg_leq(lvec, elem.deg) or any(l < 0 for l in lvec):
        raise ValueError("scaling vector must satisfy 0 <= l <= deg")
    num = elem.numerator
    if num.is_zero():
        return LimitResult(True, RatFunc(LaurentPoly.zero()))
    scaledvars = {
        X(i, j) for i in range(elem.config.n) for j in range(1, lvec[i] + 1)
    }
    best = None
    lead: dict = {}
    for m, c in num.terms.items():
        e = 0
        for v, k in m:
            if v in scaledvars:
                e += k
        if best is None or (e > best if at_infinity else e < best):
            best = e
            lead = {m: c}
        elif e == best:
            lead[m] = c
    den_exp = 0
    folds = []
    forms = []
    for b in pole_denominator(elem.config.n, elem.deg):
        ga = b.lhs in scaledvars
        gb = b.rhs in scaledvars
        if ga == gb:
            if ga:
                den_exp += 1  # factor scales uniformly by xi
            forms.append(b)
            continue
        # exactly one side scaled: the scaled side dominates at infinity,
        # the unscaled side at zero
        if at_infinity:
            den_exp += 1
            dominant_scaled = True
        else:
            dominant_scaled = False
        if ga == dominant_scaled:
            folds.append((ONE, ((b.lhs, 1),)))
        else:
            folds.append((-b.cnum, b.cmono + ((b.rhs, 1),)))
    diff = best - den_exp
    if (at_infinity and diff > 0) or (not at_infinity and diff < 0):
        return LimitResult(False, None)
    if diff != 0:
        return LimitResult(True, RatFunc(LaurentPoly.zero()))
    value = LaurentPoly(lead, _canonical=True)
    for c, m in folds:
        value = value.scale_mono(1 / c, mono_inv(mono_make(m)))
    return LimitResult(True, RatFunc(value, forms))


def limit_infinity(elem: ShuffleElement, lvec) -> LimitResult:
    return _limit_direct(elem, lvec, True)


def limit_zero(elem: ShuffleElement, lvec) -> LimitResult:
    return _limit_direct(elem, lvec, False)


# -- membership predicates ------------------------------------------------------


def s_param(i: int) -> VarId:
    return Param(f"s{i}")


def s_interval_mono(n: int, a: int, b: int) -> tuple:
    """Monomial for the product of s_{c mod n} over c in [a, b], s_0 eliminated.

    s_0 is (s_1 ... s_{n-1})^{-1}, so the result is a Laurent monomial in
    s_1 ... s_{n-1}; for n == 1 it is always 1.
    """
    exps = [0] * n
    for c in range(a, b + 1):
        r = c % n
        if r == 0:
            for t in range(1, n):
                exps[t] -= 1
        else:
            exps[r] += 1
    return mono_make((s_param(t), exps[t]) for t in range(1, n))


def admissible_intervals(n: int, deg):
    """All intervals [a, b] with a in [0, n) whose degree vector fits under deg."""
    out = []
    for a in range(n):
        b = a
        while True:
            lv = interval_degree_vector(n, a, b)
            if not deg_leq(lv, deg):
                break
            out.append(Interval(a, b))
            b += 1
    return out


@dataclass
class MembershipReport:
    ok: bool
    violations: list = field(default_factory=list)
    intervals_checked: int = 0

    def first_violation(self):
        return self.violations[0] if self.violations else None


def membership_A(elem: ShuffleElement, rng=None) -> MembershipReport:
    """Interval-scaling membership test with symbolic s-parameters.

    True iff the element has total degree zero and, for every admissible
    interval, both scaling limits exist and the limit at infinity equals the
    product of the interval's s-parameters times the limit at zero.
    """
    report = MembershipReport(ok=True)
    try:
        td = tot_deg(elem)
    except Inhomogeneous:
        report.ok = False
        report.violations.append({"a": None, "b": None, "reason": "inhomogeneous element"})
        return report
    if td != 0:
        report.ok = False
        report.violations.append(
            {"a": None, "b": None, "reason": f"total degree is {td}, not 0"}
        )
        return report
    n = elem.config.n
    for iv in admissible_intervals(n, elem.deg):
        report.intervals_checked += 1
        lv = interval_degree_vector(n, iv.a, iv.b)
        inf = _limit_direct(elem, lv, True)
        zero = _limit_direct(elem, lv, False)
        if not inf.exists:
            report.ok = False
            report.violations.append(
                {"a": iv.a, "b": iv.b, "reason": "limit at infinity does not exist"}
            )
            continue
        if not zero.exists:
            report.ok = False
            report.violations.append(
                {"a": iv.a, "b": iv.b, "reason": "limit at zero does not exist"}
            )
            continue
        smono = s_interval_mono(n, iv.a, iv.b)
        rhs = zero.value.scale_mono(ONE, smono)
        if not cross_multiply_equal(inf.value, rhs, rng=rng):
            report.ok = False
            report.violations.append(
                {
                    "a": iv.a,
                    "b": iv.b,
                    "reason": "limits differ from the required s-factor ratio",
                }
            )
    return report


def slope_zero_membership(elem: ShuffleElement):
    """True iff tot_deg is 0 and every scaling limit at infinity exists.

    Returns (ok, witness) where witness names the first failing scaling vector
    (or "tot_deg").
    """
    try:
        if tot_deg(elem) != 0:
            return False, "tot_deg"
    except Inhomogeneous:
        return False, "tot_deg"
    import itertools

    ranges = [range(k + 1) for k in elem.deg]
    for lvec in itertools.product(*ranges):
        if not limit_infinity(elem, lvec).exists:
            return False, lvec
    return True, None
