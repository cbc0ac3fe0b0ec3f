"""Partition-indexed specialization maps and their vanishing-factor products.

A partition of a degree vector is a multiset of integer intervals whose
residue-count vectors sum to it.  Each partition L gives a linear map phi_L
sending the pole-form numerator to a Laurent polynomial in y_1..y_r by
specializing the variables of the interval [a_t, b_t] to
(qd)^(-a_t) y_t, ..., (qd)^(-b_t) y_t; the product Q_L collects the linear
forms on which images of suitably filtered elements must vanish.

The diagram-indexed map phi_lambda specializes x(i, l_1+...+l_{t-1}+j) to
q^(2j) y(i,t) on the full fraction; it needs at least two colors (the
one-color pole factors would leave the binomial class).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polyring import (
    BinomialForm,
    D,
    DenominatorVanishes,
    LaurentPoly,
    NotDivisible,
    Q,
    RatFunc,
    X,
    Y,
    Y2,
    exact_divide,
    mono_inv,
    mono_make,
)
from .limits import Interval, interval_degree_vector
from .shuffle import ShuffleElement


@dataclass(frozen=True)
class PartitionL:
    """Ordered intervals with weakly decreasing lengths; left ends in [0, n)."""

    intervals: tuple

    def __post_init__(self):
        lengths = [iv.length for iv in self.intervals]
        if lengths != sorted(lengths, reverse=True):
            raise ValueError("intervals must be ordered by weakly decreasing length")

    @property
    def size(self) -> int:
        return len(self.intervals)

    def length_profile(self) -> tuple:
        return tuple(iv.length for iv in self.intervals)

    def degree_vector(self, n: int) -> tuple:
        out = [0] * n
        for iv in self.intervals:
            for c, v in enumerate(interval_degree_vector(n, iv.a, iv.b)):
                out[c] += v
        return tuple(out)

    def __gt__(self, other) -> bool:
        return self.length_profile() > other.length_profile()

    def describe(self) -> str:
        return ";".join(f"{iv.a}-{iv.b}" for iv in self.intervals)

    @staticmethod
    def parse(text: str) -> "PartitionL":
        ivs = []
        for chunk in text.split(";"):
            a, b = chunk.split("-")
            ivs.append(Interval(int(a), int(b)))
        ivs.sort(key=lambda iv: (-iv.length, iv.a))
        return PartitionL(tuple(ivs))


def enumerate_partitions(n: int, kbar) -> list:
    """All partitions of the degree vector, one representative per shift class."""
    total = sum(kbar)
    cands = [(ln, a) for ln in range(total, 0, -1) for a in range(n)]
    out = []

    def rec(start, remaining, acc):
        if not any(remaining):
            out.append(
                PartitionL(tuple(Interval(a, a + ln - 1) for ln, a in acc))
            )
            return
        for idx in range(start, len(cands)):
            ln, a = cands[idx]
            dv = interval_degree_vector(n, a, a + ln - 1)
            if all(d <= r for d, r in zip(dv, remaining)):
                rec(idx, [r - d for r, d in zip(remaining, dv)], acc + [(ln, a)])

    rec(0, list(kbar), [])
    return out


def phi_L(F: ShuffleElement, L: PartitionL) -> LaurentPoly:
    """Specialized numerator: interval t's variables become (qd)^(-c) y_t.

    Variables are drawn per color in increasing index order as intervals are
    consumed; color symmetry of the numerator makes the draw immaterial.
    """
    n = F.config.n
    if L.degree_vector(n) != F.deg:
        raise ValueError("partition does not match the element degree")
    next_index = [1] * n
    sub = {}
    for t, iv in enumerate(L.intervals, start=1):
        for c in range(iv.a, iv.b + 1):
            color = c % n
            idx = next_index[color]
            next_index[color] += 1
            sub[X(color, idx)] = LaurentPoly.monomial(
                1, mono_make(((Q, -c), (D, -c), (Y(t), 1)))
            )
    return F.numerator.substitute(sub)


def _qd_mono(e: int, t: int) -> tuple:
    return mono_make(((Q, e), (D, e), (Y(t), 1)))


def Q_L_factors(n: int, L: PartitionL) -> list:
    """Vanishing linear forms of the partition, with multiplicity.

    Forms come from wheel specializations inside interval u against interval v
    (shifted by residue +-1) and from the interval-extension specializations
    at its two ends; each is returned as a two-term Laurent polynomial.
    """
    out = []
    ivs = L.intervals
    for u in range(len(ivs)):
        for v in range(u + 1, len(ivs)):
            au, bu = ivs[u].a, ivs[u].b
            av, bv = ivs[v].a, ivs[v].b
            for xp in range(av, bv + 1):
                # wheel-type forms
                for x in range(au, bu):
                    if (xp - x - 1) % n == 0:
                        lead = LaurentPoly.monomial(
                            1, mono_make(((Q, 1 - x), (D, -1 - x), (Y(u + 1), 1)))
                        )
                        out.append(lead - LaurentPoly.monomial(1, _qd_mono(-xp, v + 1)))
                for x in range(au + 1, bu + 1):
                    if (xp - x + 1) % n == 0:
                        lead = LaurentPoly.monomial(
                            1, mono_make(((Q, -1 - x), (D, 1 - x), (Y(u + 1), 1)))
                        )
                        out.append(lead - LaurentPoly.monomial(1, _qd_mono(-xp, v + 1)))
                # extension forms at the two interval ends
                if (xp - bu - 1) % n == 0:
                    out.append(
                        LaurentPoly.monomial(1, _qd_mono(-bu - 1, u + 1))
                        - LaurentPoly.monomial(1, _qd_mono(-xp, v + 1))
                    )
                if (xp - au + 1) % n == 0:
                    out.append(
                        LaurentPoly.monomial(1, _qd_mono(-au + 1, u + 1))
                        - LaurentPoly.monomial(1, _qd_mono(-xp, v + 1))
                    )
    return out


def Q_L(n: int, L: PartitionL) -> LaurentPoly:
    out = LaurentPoly.one()
    for f in Q_L_factors(n, L):
        out = out * f
    return out


def divide_by_linear_form(poly: LaurentPoly, form: LaurentPoly) -> LaurentPoly:
    """Exact division by a two-term linear form a*M_u*y_u - b*M_v*y_v."""
    terms = list(form.terms.items())
    if len(terms) != 2:
        raise ValueError("expected a two-term linear form")
    (m1, c1), (m2, c2) = terms
    y1 = [v for v, e in m1 if v.kind != "p"]
    y2 = [v for v, e in m2 if v.kind != "p"]
    if len(y1) != 1 or len(y2) != 1:
        raise ValueError("expected exactly one non-parameter variable per term")
    p1 = mono_make((v, e) for v, e in m1 if v.kind == "p")
    p2 = mono_make((v, e) for v, e in m2 if v.kind == "p")
    # c1 p1 y1 - (-c2) p2 y2 = (c1 p1) * (y1 - c p y2)
    coeff = -c2 / c1
    cmono = mono_make(list(p2) + [(v, -e) for v, e in p1])
    bform, mn, mm = BinomialForm.make(y1[0], y2[0], coeff, cmono)
    quotient = exact_divide(poly.scale_mono(1 / c1, mono_inv(p1)), bform)
    return quotient.scale_mono(1 / mn, mono_inv(mm))


def phi_L_divisible_by_Q(F: ShuffleElement, L: PartitionL):
    """(divisible, quotient or None) for phi_L(F) against the full Q_L product."""
    img = phi_L(F, L)
    for f in Q_L_factors(F.config.n, L):
        try:
            img = divide_by_linear_form(img, f)
        except NotDivisible:
            return False, None
    return True, img


# -- diagram-indexed specialization ------------------------------------------------


def young_validate(rows) -> tuple:
    rows = tuple(int(r) for r in rows)
    if not rows or any(r <= 0 for r in rows):
        raise ValueError("diagram rows must be positive")
    if list(rows) != sorted(rows, reverse=True):
        raise ValueError("diagram rows must be weakly decreasing")
    return rows


def young_transpose(rows) -> tuple:
    rows = young_validate(rows)
    return tuple(
        sum(1 for r in rows if r >= j) for j in range(1, rows[0] + 1)
    )


def phi_lambda(F: ShuffleElement, rows) -> RatFunc:
    """Specialize x(i, l_1+...+l_{t-1}+j) -> q^(2j) y(i,t) on the full fraction.

    If a pole factor vanishes under the substitution it is first cancelled
    against the numerator by exact division.
    """
    rows = young_validate(rows)
    n = F.config.n
    if n < 2:
        raise ValueError("the diagram specialization needs at least two colors")
    size = sum(rows)
    if F.deg != tuple(size for _ in range(n)):
        raise ValueError("element degree must be size * delta")
    sub = {}
    for i in range(n):
        offset = 0
        for t, r in enumerate(rows, start=1):
            for j in range(1, r + 1):
                sub[X(i, offset + j)] = LaurentPoly.monomial(
                    1, mono_make(((Q, 2 * j), (Y2(i, t), 1)))
                )
            offset += r
    rf = F.as_ratfunc()
    for _ in range(len(rf.den) + 1):
        try:
            return rf.substitute(sub)
        except DenominatorVanishes:
            rf = _cancel_vanishing_factor(rf, sub)
    raise DenominatorVanishes("could not clear the vanishing pole factors")


def _cancel_vanishing_factor(rf: RatFunc, sub) -> RatFunc:
    table = {}
    for v, val in sub.items():
        table[v] = val.single_term()
    for pos, b in enumerate(rf.den):
        try:
            b.substitute(table)
        except DenominatorVanishes:
            num = exact_divide(rf.num, b)
            return RatFunc(num, rf.den[:pos] + rf.den[pos + 1 :])
    raise DenominatorVanishes("no single vanishing factor found")
