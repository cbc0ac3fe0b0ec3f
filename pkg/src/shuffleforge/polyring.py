"""Exact arithmetic kernel: sparse Laurent polynomials and rational functions.

Representation
--------------
A variable is an interned :class:`VarId` with a total order.  A monomial is a
sorted tuple of ``(VarId, exponent)`` pairs with nonzero integer exponents
(negative allowed).  A :class:`LaurentPoly` maps monomials to nonzero
``Fraction`` coefficients; the zero polynomial has no terms.

A :class:`RatFunc` is a ``LaurentPoly`` numerator over a multiset of
:class:`BinomialForm` denominator factors ``lhs - c * rhs`` where ``c`` is a
rational multiple of a parameter monomial.  Fractions are never reduced to
lowest terms; equality is decided by exact cross multiplication.

The parameter ``h`` is a formal square root of ``d``: monomials are kept
canonical with ``h``-exponent in {0, 1} by rewriting ``h^2 -> d``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

ZERO = Fraction(0)
ONE = Fraction(1)


class NotDivisible(ArithmeticError):
    """Exact division left a nonzero remainder."""


class DivisionByZero(ZeroDivisionError):
    """A denominator factor evaluates to zero at the requested point."""

    def __init__(self, factor, message="denominator factor vanishes at the point"):
        super().__init__(f"{message}: {factor}")
        self.factor = factor


class DenominatorVanishes(ArithmeticError):
    """A substitution makes a denominator factor identically zero."""


class DenominatorNotBinomial(ArithmeticError):
    """A substitution pushes a denominator factor outside the binomial class."""


class TermLimitExceeded(RuntimeError):
    """A polynomial grew past the configured term budget."""

    def __init__(self, size, limit):
        super().__init__(f"expansion reached {size} terms (limit {limit})")
        self.size = size
        self.limit = limit


_term_limit = 5_000_000


def set_term_limit(limit: int) -> None:
    global _term_limit
    if limit <= 0:
        raise ValueError("term limit must be positive")
    _term_limit = limit


def get_term_limit() -> int:
    return _term_limit


def _guard(size: int) -> None:
    if size > _term_limit:
        raise TermLimitExceeded(size, _term_limit)


# ---------------------------------------------------------------------------
# Variables


class VarId:
    """Interned variable identifier.

    Kinds (in sort order): ``p`` named parameter, ``x`` main variable x(i,j)
    with color i and 1-based index j, ``y`` specialization variable y(t),
    ``y2`` specialization variable y(i,t).
    """

    __slots__ = ("kind", "idx", "key")
    _pool: dict = {}
    _RANK = {"p": 0, "x": 1, "y": 2, "y2": 3}

    def __new__(cls, kind, idx):
        cached = cls._pool.get((kind, idx))
        if cached is not None:
            return cached
        self = object.__new__(cls)
        self.kind = kind
        self.idx = idx
        self.key = (cls._RANK[kind],) + idx
        cls._pool[(kind, idx)] = self
        return self

    def __repr__(self):
        return var_to_str(self)

    def __lt__(self, other):
        return self.key < other.key


def X(i: int, j: int) -> VarId:
    if j < 1:
        raise ValueError("x-variable index must be >= 1")
    return VarId("x", (i, j))


def Param(name: str) -> VarId:
    return VarId("p", (name,))


def Y(t: int) -> VarId:
    return VarId("y", (t,))


def Y2(i: int, t: int) -> VarId:
    return VarId("y2", (i, t))


Q = Param("q")
D = Param("d")
H = Param("h")
XI = Param("xi")


def var_to_str(v: VarId) -> str:
    if v.kind == "p":
        return v.idx[0]
    if v.kind == "x":
        return "x(%d,%d)" % v.idx
    if v.kind == "y":
        return "y(%d)" % v.idx
    return "y(%d,%d)" % v.idx


def var_from_str(s: str) -> VarId:
    if s.startswith("x(") and s.endswith(")"):
        i, j = s[2:-1].split(",")
        return X(int(i), int(j))
    if s.startswith("y(") and s.endswith(")"):
        parts = s[2:-1].split(",")
        if len(parts) == 1:
            return Y(int(parts[0]))
        return Y2(int(parts[0]), int(parts[1]))
    if s and all(c.isalnum() or c == "_" for c in s):
        return Param(s)
    raise ValueError(f"cannot parse variable {s!r}")


# ---------------------------------------------------------------------------
# Monomials: sorted tuples of (VarId, exp), h-exponent kept in {0, 1}

MONO_ONE = ()


def mono_make(pairs) -> tuple:
    acc = {}
    for v, e in pairs:
        if e:
            ne = acc.get(v, 0) + e
            if ne:
                acc[v] = ne
            elif v in acc:
                del acc[v]
    he = acc.get(H, 0)
    if he not in (0, 1):
        acc[D] = acc.get(D, 0) + (he >> 1)
        if not acc[D]:
            del acc[D]
        if he & 1:
            acc[H] = 1
        else:
            del acc[H]
    return tuple(sorted(acc.items(), key=lambda p: p[0].key))


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    out = []
    ia = ib = 0
    la, lb = len(a), len(b)
    hfix = False
    while ia < la and ib < lb:
        va, ea = a[ia]
        vb, eb = b[ib]
        if va is vb:
            e = ea + eb
            if e:
                out.append((va, e))
                if va is H and e != 1:
                    hfix = True
            ia += 1
            ib += 1
        elif va.key < vb.key:
            out.append((va, ea))
            ia += 1
        else:
            out.append((vb, eb))
            ib += 1
    out.extend(a[ia:])
    out.extend(b[ib:])
    if hfix:
        return mono_make(out)
    return tuple(out)


def mono_pow(m: tuple, e: int) -> tuple:
    if e == 0:
        return MONO_ONE
    if e == 1:
        return m
    return mono_make((v, k * e) for v, k in m)


def mono_inv(m: tuple) -> tuple:
    return mono_pow(m, -1)


def mono_key(m: tuple) -> tuple:
    return tuple((v.key, e) for v, e in m)


def mono_evaluate(m: tuple, point: Mapping[VarId, Fraction]) -> Fraction:
    val = ONE
    for v, e in m:
        val *= Fraction(point[v]) ** e
    return val


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Sparse exact multivariate Laurent polynomial over Q."""

    __slots__ = ("terms",)

    def __init__(self, terms=None, _canonical=False):
        if terms is None:
            self.terms = {}
        elif _canonical:
            self.terms = terms
        else:
            acc = {}
            for m, c in dict(terms).items():
                c = Fraction(c)
                if c:
                    mm = mono_make(m)
                    acc[mm] = acc.get(mm, ZERO) + c
            self.terms = {m: c for m, c in acc.items() if c}

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({}, _canonical=True)

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = Fraction(c)
        return cls({MONO_ONE: c} if c else {}, _canonical=True)

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.const(1)

    @classmethod
    def var(cls, v: VarId, e: int = 1) -> "LaurentPoly":
        if e == 0:
            return cls.one()
        return cls({mono_make(((v, e),)): ONE}, _canonical=True)

    @classmethod
    def monomial(cls, coeff, mono: tuple) -> "LaurentPoly":
        coeff = Fraction(coeff)
        if not coeff:
            return cls.zero()
        return cls({mono_make(mono): coeff}, _canonical=True)

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def single_term(self):
        """Return (coeff, mono) of the unique term; requires is_monomial()."""
        ((m, c),) = self.terms.items()
        return c, m

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))

    # -- ring operations ---------------------------------------------------

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()}, _canonical=True)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(self.terms) < len(other.terms):
            self, other = other, self
        acc = dict(self.terms)
        for m, c in other.terms.items():
            nc = acc.get(m, ZERO) + c
            if nc:
                acc[m] = nc
            elif m in acc:
                del acc[m]
        return LaurentPoly(acc, _canonical=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return self.__add__(-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return LaurentPoly.zero()
            return LaurentPoly({m: k * c for m, k in self.terms.items()}, _canonical=True)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        if not a:
            return LaurentPoly.zero()
        acc = {}
        get = acc.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                nc = get(m, ZERO) + ca * cb
                if nc:
                    acc[m] = nc
                elif m in acc:
                    del acc[m]
            _guard(len(acc))
        return LaurentPoly(acc, _canonical=True)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, e: int):
        if e < 0:
            c, m = self.single_term()  # only monomials are invertible
            return LaurentPoly.monomial(c**e, mono_pow(m, e))
        out = LaurentPoly.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def scale_mono(self, coeff, mono: tuple) -> "LaurentPoly":
        """Multiply by coeff * mono in one pass."""
        coeff = Fraction(coeff)
        if not coeff:
            return LaurentPoly.zero()
        return LaurentPoly(
            {mono_mul(m, mono): c * coeff for m, c in self.terms.items()},
            _canonical=True,
        )

    # -- degrees and slices --------------------------------------------------

    def x_degree_of(self, mono: tuple) -> int:
        return sum(e for v, e in mono if v.kind == "x")

    def homogeneous_x_degree(self):
        """Total x-degree if homogeneous, else None (zero counts as any degree)."""
        deg = None
        for m in self.terms:
            d = self.x_degree_of(m)
            if deg is None:
                deg = d
            elif deg != d:
                return None
        return deg if deg is not None else 0

    def exp_range(self, v: VarId):
        """(min, max) exponent of v across terms; (0, 0) for the zero poly."""
        lo = hi = None
        for m in self.terms:
            e = 0
            for w, k in m:
                if w is v:
                    e = k
                    break
            if lo is None or e < lo:
                lo = e
            if hi is None or e > hi:
                hi = e
        if lo is None:
            return (0, 0)
        return (lo, hi)

    def split_by_var(self, v: VarId) -> dict:
        """Map exponent of v -> sub-polynomial with v stripped."""
        levels: dict = {}
        for m, c in self.terms.items():
            e = 0
            rest = m
            for pos, (w, k) in enumerate(m):
                if w is v:
                    e = k
                    rest = m[:pos] + m[pos + 1 :]
                    break
            levels.setdefault(e, {})[rest] = c
        return {e: LaurentPoly(t, _canonical=True) for e, t in levels.items()}

    # -- substitution and evaluation ------------------------------------------

    def substitute(self, assignment: Mapping[VarId, object]) -> "LaurentPoly":
        """Substitute monomial values (LaurentPoly monomial or rational) for variables.

        Values must be single-term polynomials or rationals; a zero value is
        only allowed where the variable occurs with nonnegative exponents.
        """
        if not assignment:
            return self
        table = {}
        for v, val in assignment.items():
            if isinstance(val, LaurentPoly):
                if val.is_zero():
                    table[v] = (ZERO, MONO_ONE)
                else:
                    c, m = val.single_term()
                    table[v] = (c, m)
            elif isinstance(val, VarId):
                table[v] = (ONE, ((val, 1),))
            else:
                table[v] = (Fraction(val), MONO_ONE)
        acc = {}
        for m, c in self.terms.items():
            keep = []
            coeff = c
            for v, e in m:
                hit = table.get(v)
                if hit is None:
                    keep.append((v, e))
                    continue
                cv, mv = hit
                if not cv:
                    if e < 0:
                        raise DivisionByZero(v, "zero substituted at negative exponent")
                    coeff = ZERO
                    break
                coeff *= cv**e
                keep.extend((w, k * e) for w, k in mv)
            if not coeff:
                continue
            mm = mono_make(keep)
            nc = acc.get(mm, ZERO) + coeff
            if nc:
                acc[mm] = nc
            elif mm in acc:
                del acc[mm]
        return LaurentPoly(acc, _canonical=True)

    def relabel(self, mapping: Mapping[VarId, VarId]) -> "LaurentPoly":
        """Rename variables (an injective map on the variables that occur)."""
        acc = {}
        for m, c in self.terms.items():
            mm = mono_make((mapping.get(v, v), e) for v, e in m)
            acc[mm] = acc.get(mm, ZERO) + c
        return LaurentPoly({m: c for m, c in acc.items() if c}, _canonical=True)

    def evaluate(self, point: Mapping[VarId, Fraction]) -> Fraction:
        cache: dict = {}
        val = ZERO
        for m, c in self.terms.items():
            acc = c
            for v, e in m:
                pv = cache.get((v, e))
                if pv is None:
                    pv = Fraction(point[v]) ** e
                    cache[(v, e)] = pv
                acc = acc * pv
            val += acc
        return val

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": str(c),
                    "exps": {var_to_str(v): e for v, e in m},
                }
                for m, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        acc = {}
        for t in data["terms"]:
            m = mono_make((var_from_str(k), int(e)) for k, e in t["exps"].items())
            c = Fraction(t["coeff"])
            if c:
                acc[m] = acc.get(m, ZERO) + c
        return cls({m: c for m, c in acc.items() if c}, _canonical=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in self.sorted_terms():
            factors = [] if c != 1 or not m else ["1"]
            if c != 1:
                factors.append(str(c))
            for v, e in m:
                factors.append(var_to_str(v) if e == 1 else f"{var_to_str(v)}^{e}")
            bits.append("*".join(factors) if factors else "1")
        return " + ".join(bits)


def poly_prod(factors: Iterable[LaurentPoly]) -> LaurentPoly:
    """Product of many polynomials, multiplying smallest pairs first."""
    import heapq

    heap = [(len(f), i, f) for i, f in enumerate(factors)]
    if not heap:
        return LaurentPoly.one()
    heapq.heapify(heap)
    counter = len(heap)
    while len(heap) > 1:
        _, _, a = heapq.heappop(heap)
        _, _, b = heapq.heappop(heap)
        p = a * b
        heapq.heappush(heap, (len(p), counter, p))
        counter += 1
    return heap[0][2]


# ---------------------------------------------------------------------------
# Binomial forms


class BinomialForm:
    """The linear form ``lhs - cnum * cmono * rhs`` with lhs < rhs in variable order.

    ``cmono`` is a monomial in parameter variables only; ``cnum`` is a nonzero
    rational.
    """

    __slots__ = ("lhs", "rhs", "cnum", "cmono", "_hash")

    def __init__(self, lhs: VarId, rhs: VarId, cnum, cmono: tuple = MONO_ONE):
        cnum = Fraction(cnum)
        if lhs is rhs:
            raise ValueError("binomial form needs two distinct variables")
        if not cnum:
            raise ValueError("binomial coefficient must be nonzero")
        if not lhs.key < rhs.key:
            raise ValueError("binomial form must be canonically oriented")
        if any(v.kind != "p" for v, _ in cmono):
            raise ValueError("binomial coefficient must be a parameter monomial")
        self.lhs = lhs
        self.rhs = rhs
        self.cnum = cnum
        self.cmono = cmono
        self._hash = hash((lhs.key, rhs.key, cnum, cmono))

    @staticmethod
    def make(lhs: VarId, rhs: VarId, cnum, cmono: tuple = MONO_ONE):
        """Canonicalize ``lhs - c*rhs``; returns (form, mult_num, mult_mono) with
        original = mult * form."""
        cnum = Fraction(cnum)
        cmono = mono_make(cmono)
        if lhs.key < rhs.key:
            return BinomialForm(lhs, rhs, cnum, cmono), ONE, MONO_ONE
        # a - c*b = (-c) * (b - (1/c)*a)
        inv = mono_inv(cmono)
        return BinomialForm(rhs, lhs, 1 / cnum, inv), -cnum, cmono

    def __eq__(self, other):
        if not isinstance(other, BinomialForm):
            return NotImplemented
        return (
            self.lhs is other.lhs
            and self.rhs is other.rhs
            and self.cnum == other.cnum
            and self.cmono == other.cmono
        )

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.lhs.key, self.rhs.key, mono_key(self.cmono), self.cnum)

    def as_poly(self) -> LaurentPoly:
        p = LaurentPoly.var(self.lhs) - LaurentPoly.monomial(self.cnum, self.cmono + ((self.rhs, 1),))
        return p

    def evaluate(self, point) -> Fraction:
        return Fraction(point[self.lhs]) - self.cnum * mono_evaluate(self.cmono, point) * Fraction(point[self.rhs])

    def substitute(self, table: Mapping[VarId, tuple]):
        """Substitute monomial values; table maps VarId -> (coeff, mono).

        Returns one of
          ("binomial", mult_num, mult_mono, BinomialForm)
          ("monomial", coeff, mono)        -- the factor collapsed to a monomial
        and raises DenominatorVanishes / DenominatorNotBinomial otherwise.
        """
        la, lm = table.get(self.lhs, (ONE, ((self.lhs, 1),)))
        ra, rm = table.get(self.rhs, (ONE, ((self.rhs, 1),)))
        if not la or not ra:
            raise DenominatorVanishes(f"zero substituted into {self!r}")
        rm = mono_mul(self.cmono, rm)
        ra = ra * self.cnum
        # split each side into (non-parameter part, parameter part)
        lx = [(v, e) for v, e in lm if v.kind != "p"]
        lp = tuple((v, e) for v, e in lm if v.kind == "p")
        rx = [(v, e) for v, e in rm if v.kind != "p"]
        rp = tuple((v, e) for v, e in rm if v.kind == "p")
        if lx == rx:
            if lp == rp:
                c = la - ra
                if not c:
                    raise DenominatorVanishes(f"{self!r} vanishes under substitution")
                return ("monomial", c, lm)
            raise DenominatorNotBinomial(
                f"{self!r} becomes a parameter binomial under substitution"
            )
        if len(lx) != 1 or lx[0][1] != 1 or len(rx) != 1 or rx[0][1] != 1:
            raise DenominatorNotBinomial(
                f"{self!r} leaves the binomial class under substitution"
            )
        vl, vr = lx[0][0], rx[0][0]
        # la*lp*vl - ra*rp*vr = (la*lp) * (vl - (ra*rp)/(la*lp) * vr)
        coeff = ra / la
        cmono = mono_mul(rp, mono_inv(lp))
        form, mnum, mmono = BinomialForm.make(vl, vr, coeff, cmono)
        return ("binomial", la * mnum, mono_mul(lp, mmono), form)

    def to_json(self) -> dict:
        return {
            "lhs": var_to_str(self.lhs),
            "rhs": var_to_str(self.rhs),
            "coeff": str(self.cnum),
            "coeff_exps": {var_to_str(v): e for v, e in self.cmono},
        }

    @classmethod
    def from_json(cls, data: dict) -> "BinomialForm":
        return cls(
            var_from_str(data["lhs"]),
            var_from_str(data["rhs"]),
            Fraction(data["coeff"]),
            mono_make((var_from_str(k), int(e)) for k, e in data.get("coeff_exps", {}).items()),
        )

    def __repr__(self):
        c = LaurentPoly.monomial(self.cnum, self.cmono)
        return f"({var_to_str(self.lhs)} - {c!r}*{var_to_str(self.rhs)})"


def exact_divide(f: LaurentPoly, b: BinomialForm) -> LaurentPoly:
    """Divide f exactly by b (synthetic division along b.lhs); raises NotDivisible."""
    if f.is_zero():
        return f
    a = b.lhs
    rest = LaurentPoly.monomial(b.cnum, b.cmono + ((b.rhs, 1),))  # b = a - rest
    levels = f.split_by_var(a)
    top = max(levels)
    bottom = min(levels)
    if top == bottom:
        raise NotDivisible(f"dividend has no spread in {a!r}")
    quotient: dict = {}
    rem = levels
    for e in range(top, bottom, -1):
        qe = rem.pop(e, None)
        if qe is None or qe.is_zero():
            qe = LaurentPoly.zero()
        else:
            quotient[e - 1] = qe
        nxt = rem.get(e - 1, LaurentPoly.zero()) + rest * qe
        rem[e - 1] = nxt
    if not rem.get(bottom, LaurentPoly.zero()).is_zero():
        raise NotDivisible(f"remainder is nonzero when dividing by {b!r}")
    acc = {}
    for e, part in quotient.items():
        mono_a = ((a, e),) if e else MONO_ONE
        for m, c in part.terms.items():
            acc[mono_mul(m, mono_a)] = c
    return LaurentPoly(acc, _canonical=True)


# ---------------------------------------------------------------------------
# Rational functions


class RatFunc:
    """num / prod(den) with den a sorted tuple of BinomialForm factors."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: Iterable[BinomialForm] = ()):
        self.num = num
        self.den = tuple(sorted(den, key=BinomialForm.sort_key))

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(LaurentPoly.const(c))

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RatFunc":
        return cls(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def den_poly(self) -> LaurentPoly:
        return poly_prod([b.as_poly() for b in self.den])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num * other, self.den)
        if isinstance(other, LaurentPoly):
            return RatFunc(self.num * other, self.den)
        return RatFunc(self.num * other.num, self.den + other.den)

    __rmul__ = __mul__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __add__(self, other):
        return ratfunc_sum([self, other])

    def __sub__(self, other):
        return ratfunc_sum([self, -other])

    def scale_mono(self, coeff, mono: tuple) -> "RatFunc":
        return RatFunc(self.num.scale_mono(coeff, mono), self.den)

    def substitute(self, assignment: Mapping[VarId, object]) -> "RatFunc":
        """Exact substitution of monomial values into numerator and denominator."""
        if not assignment:
            return self
        table = {}
        for v, val in assignment.items():
            if isinstance(val, LaurentPoly):
                if val.is_zero():
                    table[v] = (ZERO, MONO_ONE)
                else:
                    table[v] = val.single_term()
            elif isinstance(val, VarId):
                table[v] = (ONE, ((val, 1),))
            else:
                table[v] = (Fraction(val), MONO_ONE)
        num = self.num.substitute(assignment)
        den = []
        for b in self.den:
            res = b.substitute(table)
            if res[0] == "monomial":
                _, c, m = res
                num = num.scale_mono(1 / c, mono_inv(m))
            else:
                _, mnum, mmono, form = res
                den.append(form)
                num = num.scale_mono(1 / mnum, mono_inv(mmono))
        return RatFunc(num, den)

    def evaluate(self, point: Mapping[VarId, Fraction]) -> Fraction:
        val = self.num.evaluate(point)
        for b in self.den:
            dv = b.evaluate(point)
            if not dv:
                raise DivisionByZero(b)
            val /= dv
        return val

    def to_json(self) -> dict:
        return {
            "num": self.num.to_json(),
            "den": [b.to_json() for b in self.den],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        return cls(
            LaurentPoly.from_json(data["num"]),
            [BinomialForm.from_json(b) for b in data.get("den", [])],
        )

    def __repr__(self):
        if not self.den:
            return repr(self.num)
        return f"({self.num!r}) / ({'*'.join(map(repr, self.den))})"


def _cancel_common(fden, gden):
    """Remove shared factors (with multiplicity) from both denominator tuples."""
    from collections import Counter

    cf, cg = Counter(fden), Counter(gden)
    common = cf & cg
    if not common:
        return fden, gden
    cf.subtract(common)
    cg.subtract(common)
    return (
        tuple(b for b, k in sorted(cf.items(), key=lambda kv: kv[0].sort_key()) for _ in range(k)),
        tuple(b for b, k in sorted(cg.items(), key=lambda kv: kv[0].sort_key()) for _ in range(k)),
    )


def random_rational(rng, bound: int = 10**6) -> Fraction:
    """Nonzero rational with numerator and denominator bounded by `bound`."""
    num = 0
    while not num:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def random_point(rng, variables, bound: int = 10**6) -> dict:
    """Random rational point; keeps h and d consistent (d = h^2)."""
    point = {}
    for v in sorted(variables, key=lambda w: w.key):
        point[v] = random_rational(rng, bound)
    if H in point:
        point[D] = point[H] ** 2
    return point


def cross_multiply_equal(f: RatFunc, g: RatFunc, rng=None, samples: int = 3) -> bool:
    """Exact equality of f and g as rational functions.

    With an rng, a random-evaluation fast path may prove inequality early; a
    positive verdict is always established by exact cross multiplication.
    """
    fden, gden = _cancel_common(f.den, g.den)
    if rng is not None:
        variables = f.num.variables() | g.num.variables()
        for b in fden + gden:
            variables.update((b.lhs, b.rhs))
            variables.update(v for v, _ in b.cmono)
        fr = RatFunc(f.num, fden)
        gr = RatFunc(g.num, gden)
        for _ in range(samples):
            for _ in range(32):
                point = random_point(rng, variables, bound=10**6)
                try:
                    if fr.evaluate(point) != gr.evaluate(point):
                        return False
                    break
                except DivisionByZero:
                    continue
    left = f.num * poly_prod([b.as_poly() for b in gden])
    right = g.num * poly_prod([b.as_poly() for b in fden])
    return left == right


def ratfunc_sum(terms) -> RatFunc:
    """Sum of rational functions over the multiset least common denominator."""
    from collections import Counter

    terms = list(terms)
    if not terms:
        return RatFunc(LaurentPoly.zero())
    counters = [Counter(t.den) for t in terms]
    lcm: Counter = Counter()
    for c in counters:
        for b, k in c.items():
            if k > lcm[b]:
                lcm[b] = k
    num = LaurentPoly.zero()
    for t, c in zip(terms, counters):
        cof = lcm - c
        part = t.num
        if cof:
            factors = [b.as_poly() for b, k in cof.items() for _ in range(k)]
            part = part * poly_prod(factors)
        num = num + part
        _guard(len(num))
    den = tuple(b for b, k in sorted(lcm.items(), key=lambda kv: kv[0].sort_key()) for _ in range(k))
    return RatFunc(num, den)
