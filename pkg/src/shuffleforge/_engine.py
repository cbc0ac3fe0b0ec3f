"""Packed-exponent engine for the symmetrization pipeline (internal).

Monomials over a fixed variable universe pack into one integer with a biased
fixed-width field per variable, so monomial multiplication is a single integer
addition and color permutations touch only the moved fields.  Coefficients
stay exact (int or Fraction).  The public polynomial classes are unaffected;
this module only accelerates the star product and its pole-form cleanup.
"""

from __future__ import annotations

from fractions import Fraction

from .polyring import (
    LaurentPoly,
    NotDivisible,
    TermLimitExceeded,
    get_term_limit,
    mono_make,
)


def _plain(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class PackedRing:
    """Fixed variable universe with packed-integer monomial keys."""

    def __init__(self, variables, width: int):
        self.vars = sorted(variables, key=lambda v: v.key)
        self.slot = {v: i for i, v in enumerate(self.vars)}
        self.width = width
        self.mask = (1 << width) - 1
        self.half = 1 << (width - 1)
        self.bias = 0
        for i in range(len(self.vars)):
            self.bias |= self.half << (width * i)

    @classmethod
    def for_bound(cls, variables, bound: int) -> "PackedRing":
        width = max(16, (2 * bound + 4).bit_length() + 1)
        return cls(variables, width)

    # -- packing -----------------------------------------------------------

    def pack_mono(self, mono) -> int:
        key = self.bias
        w = self.width
        for v, e in mono:
            if not -self.half < e < self.half:
                raise OverflowError("exponent outside the packed field range")
            key += e << (w * self.slot[v])
        return key

    def pack_poly(self, p: LaurentPoly) -> dict:
        return {self.pack_mono(m): _plain(c) for m, c in p.terms.items()}

    def unpack_mono(self, key: int):
        w, mask, half = self.width, self.mask, self.half
        out = []
        for i, v in enumerate(self.vars):
            e = ((key >> (w * i)) & mask) - half
            if e:
                out.append((v, e))
        return mono_make(out)

    def unpack_poly(self, d: dict) -> LaurentPoly:
        # accumulate: distinct packed keys may collapse under h^2 -> d rewriting
        acc = {}
        for k, c in d.items():
            m = self.unpack_mono(k)
            prev = acc.get(m)
            acc[m] = c if prev is None else prev + c
        return LaurentPoly(
            {m: c if isinstance(c, Fraction) else Fraction(c) for m, c in acc.items() if c},
            _canonical=True,
        )

    def var_key(self, v, e: int = 1) -> int:
        return self.bias + (e << (self.width * self.slot[v]))

    def binomial(self, va, vb, ca=1, cb=-1, amono=(), bmono=()) -> dict:
        """Packed ca*amono*va - (-cb)*bmono*vb style two-term polynomial."""
        ka = self.pack_mono(tuple(amono) + ((va, 1),))
        kb = self.pack_mono(tuple(bmono) + ((vb, 1),))
        out = {ka: _plain(ca)}
        out[kb] = out.get(kb, 0) + _plain(cb)
        return {k: c for k, c in out.items() if c}

    # -- arithmetic ----------------------------------------------------------

    def mul(self, a: dict, b: dict) -> dict:
        if len(a) > len(b):
            a, b = b, a
        if not a:
            return {}
        bias = self.bias
        out: dict = {}
        get = out.get
        limit = get_term_limit()
        bi = list(b.items())
        for ka, ca in a.items():
            ka -= bias
            for kb, cb in bi:
                k = ka + kb
                nc = get(k, 0) + ca * cb
                if nc:
                    out[k] = nc
                elif k in out:
                    del out[k]
            if len(out) > limit:
                raise TermLimitExceeded(len(out), limit)
        return out

    def prod(self, factors) -> dict:
        import heapq

        heap = [(len(f), i, f) for i, f in enumerate(factors)]
        if not heap:
            return {self.bias: 1}
        heapq.heapify(heap)
        counter = len(heap)
        while len(heap) > 1:
            _, _, a = heapq.heappop(heap)
            _, _, b = heapq.heappop(heap)
            p = self.mul(a, b)
            heapq.heappush(heap, (len(p), counter, p))
            counter += 1
        return heap[0][2]

    def add_mul_into(self, acc: dict, a: dict, b: dict, coeff=1) -> None:
        """acc += coeff * a * b for a small b (convolution without a temporary)."""
        bias = self.bias
        get = acc.get
        limit = get_term_limit()
        for kb, cb in b.items():
            kb -= bias
            cc = cb * coeff
            for ka, ca in a.items():
                k = ka + kb
                nc = get(k, 0) + ca * cc
                if nc:
                    acc[k] = nc
                elif k in acc:
                    del acc[k]
        if len(acc) > limit:
            raise TermLimitExceeded(len(acc), limit)

    def scale(self, d: dict, coeff=1, key=None) -> dict:
        if key is None:
            return {k: c * coeff for k, c in d.items()}
        off = key - self.bias
        return {k + off: c * coeff for k, c in d.items()}

    # -- structure operations ---------------------------------------------------

    def permute(self, d: dict, moves) -> dict:
        """Apply a slot permutation given as [(src_slot, dst_slot), ...]."""
        if not moves:
            return dict(d)
        w, mask = self.width, self.mask
        shifts = [(w * s, w * t) for s, t in moves]
        out = {}
        for k, c in d.items():
            nk = k
            for ss, ts in shifts:
                val = (k >> ss) & mask
                nk += (val << ts) - (val << ss)
            out[nk] = c
        return out

    def symmetric_under_swap(self, d: dict, sa: int, sb: int) -> bool:
        w, mask = self.width, self.mask
        wa, wb = w * sa, w * sb
        get = d.get
        for k, c in d.items():
            ea = (k >> wa) & mask
            eb = (k >> wb) & mask
            if ea == eb:
                continue
            nk = k + ((eb - ea) << wa) + ((ea - eb) << wb)
            if get(nk) != c:
                return False
        return True

    def divide_linear(self, d: dict, sa: int, rest_key: int, gamma=1) -> dict:
        """Exact division by (x_a - gamma * rest); synthetic division along slot sa."""
        if not d:
            return {}
        w, mask, half = self.width, self.mask, self.half
        shift = w * sa
        levels: dict = {}
        for k, c in d.items():
            e = ((k >> shift) & mask) - half
            lv = levels.get(e)
            if lv is None:
                levels[e] = {k: c}
            else:
                lv[k] = c
        top = max(levels)
        bottom = min(levels)
        if top == bottom:
            raise NotDivisible("dividend has no spread in the division variable")
        ua = 1 << shift
        radj = rest_key - self.bias
        out: dict = {}
        for e in range(top, bottom, -1):
            q = levels.pop(e, None)
            if not q:
                continue
            nxt = levels.get(e - 1)
            if nxt is None:
                nxt = levels[e - 1] = {}
            nget = nxt.get
            for k, c in q.items():
                qk = k - ua
                out[qk] = out.get(qk, 0) + c
                rk = qk + radj
                nc = nget(rk, 0) + gamma * c
                if nc:
                    nxt[rk] = nc
                elif rk in nxt:
                    del nxt[rk]
        rem = levels.get(bottom)
        if rem and any(rem.values()):
            raise NotDivisible("remainder is nonzero in packed division")
        return {k: c for k, c in out.items() if c}

    def max_abs_exponent(self, p: LaurentPoly) -> int:
        best = 0
        for m in p.terms:
            for _, e in m:
                if abs(e) > best:
                    best = abs(e)
        return best
