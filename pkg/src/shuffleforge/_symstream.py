"""Streamed equality of star products via signed symmetrization tables.

For elements F, G in pole form the product is a coset sum, which equals the
full color-group symmetrization of one canonical term with per-color sign
character, divided by the stabilizer size and a universal denominator that
depends only on the total degree:

    star(F, G) = sum_{w in W} sgn(w) * w(N0) / (|stab| * U)

with W the product of full symmetric groups per color, N0 the canonical-split
numerator F * G(shifted) * (kernel numerators) * (within-block Vandermonde
cofactors), and U the key-ordered universal denominator.  Two products of the
same total degree are equal iff their signed symmetrization tables agree:
the table stores, for each strictly-decreasing per-color exponent pattern,
the signed sum of stream coefficients landing on it.  Monomials with a
repeated exponent inside a color cancel and are dropped.

This decides star(F1, G1) == star(F2, G2) exactly without materializing the
products; the streams run over (block-antisymmetric representatives of F) x
(representatives of G) x (raw kernel expansion), which is smaller than the
expanded product by the stabilizer order.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

from .polyring import D, LaurentPoly, Q, TermLimitExceeded, X, get_term_limit
from .shuffle import ShuffleElement, deg_add, omega_factors, pole_denominator

try:
    import numpy as _np
except Exception:  # pragma: no cover - numpy is a hard dependency in practice
    _np = None


_SORT_NETWORKS = {
    1: [],
    2: [(0, 1)],
    3: [(0, 1), (1, 2), (0, 1)],
    4: [(0, 1), (2, 3), (0, 2), (1, 3), (1, 2)],
    5: [(0, 1), (3, 4), (2, 4), (2, 3), (1, 4), (0, 3), (0, 2), (1, 3), (1, 2)],
    6: [
        (1, 2),
        (4, 5),
        (0, 2),
        (3, 5),
        (0, 1),
        (3, 4),
        (2, 5),
        (0, 3),
        (1, 4),
        (2, 4),
        (1, 3),
        (2, 3),
    ],
}


class _Side:
    """One star product prepared for streaming."""

    def __init__(self, F: ShuffleElement, G: ShuffleElement):
        if F.config != G.config:
            raise ValueError("elements use different algebra configurations")
        self.config = F.config
        n = self.config.n
        kbar, lbar = F.deg, G.deg
        self.mbar = deg_add(kbar, lbar)
        shift = {
            X(i, j): X(i, kbar[i] + j) for i in range(n) for j in range(1, lbar[i] + 1)
        }
        gshift = G.numerator.relabel(shift) if shift else G.numerator

        def vandermonde(indices_by_color):
            out = LaurentPoly.one()
            for i, idxs in indices_by_color:
                for a in range(len(idxs)):
                    for b in range(a + 1, len(idxs)):
                        out = out * (
                            LaurentPoly.var(X(i, idxs[a])) - LaurentPoly.var(X(i, idxs[b]))
                        )
            return out

        blk1 = [(i, list(range(1, kbar[i] + 1))) for i in range(n)]
        blk2 = [(i, list(range(kbar[i] + 1, kbar[i] + lbar[i] + 1))) for i in range(n)]
        self.blk1, self.blk2 = blk1, blk2
        self.sf = F.numerator * vandermonde(blk1)
        self.sg = gshift * vandermonde(blk2)

        self.omega_nums = []
        self.sign0 = 1
        for i in range(n):
            for ip in range(n):
                for j in range(1, kbar[i] + 1):
                    for jp in range(1, lbar[ip] + 1):
                        nums, dens = omega_factors(n, i, ip, X(i, j), X(ip, kbar[ip] + jp))
                        self.omega_nums.extend(nums)
                        for _form, mn, _mm in dens:
                            if mn == -1:
                                self.sign0 = -self.sign0

    def params(self):
        out = {Q, D}
        for p in (self.sf, self.sg):
            out |= {v for v in p.variables() if v.kind == "p"}
        return out


def _antisym_reps(poly: LaurentPoly, blocks):
    """Compress a block-antisymmetric polynomial to strictly-sorted representatives.

    blocks is [(color, [indices])]; returns {monomial: coeff} with each block's
    exponents strictly decreasing along its index list and signs folded in.
    """
    out = {}
    for mono, coeff in poly.terms.items():
        exps = dict(mono)
        sign = 1
        rebuilt = []
        ok = True
        for i, idxs in blocks:
            vals = [exps.pop(X(i, j), 0) for j in idxs]
            parity, svals = _sort_desc_with_parity(vals)
            if parity is None:
                ok = False
                break
            sign *= parity
            rebuilt.extend((X(i, j), e) for j, e in zip(idxs, svals) if e)
        if not ok:
            raise AssertionError("tied exponents in an antisymmetric polynomial")
        rest = tuple(sorted(exps.items(), key=lambda p: p[0].key))
        key = tuple(sorted(rebuilt + list(rest), key=lambda p: p[0].key))
        out[key] = out.get(key, 0) + sign * coeff
    return {k: c for k, c in out.items() if c}


def _sort_desc_with_parity(vals):
    """(parity, sorted desc) with parity in {1, -1}; None parity on ties."""
    vals = list(vals)
    parity = 1
    for a in range(len(vals)):
        for b in range(a + 1, len(vals)):
            if vals[a] < vals[b]:
                vals[a], vals[b] = vals[b], vals[a]
                parity = -parity
            elif vals[a] == vals[b]:
                return None, vals
    return parity, vals


def _expand_omega(side: _Side):
    """Expanded kernel-numerator product as a packed dict plus its ring."""
    from ._engine import PackedRing

    n = side.config.n
    xvars = [X(i, j) for i in range(n) for j in range(1, side.mbar[i] + 1)]
    ring = PackedRing(set(xvars) | side.params(), 16)
    if not side.omega_nums:
        return ring, {ring.bias: 1}
    return ring, ring.prod([ring.pack_poly(p) for p in side.omega_nums])


def universal_denominator(n: int, mbar) -> Counter:
    """Key-ordered universal denominator pairs for streamed comparisons."""
    pairs: Counter = Counter()
    for b in pole_denominator(n, mbar):
        pairs[(b.lhs, b.rhs)] += 1
    same_mult = 3 if n == 1 else 1
    for i in range(n):
        for a in range(1, mbar[i] + 1):
            for bb in range(a + 1, mbar[i] + 1):
                key = (X(i, a), X(i, bb))
                if n == 1:
                    pairs[key] = same_mult
                else:
                    pairs[key] += same_mult
    return pairs


# ---------------------------------------------------------------------------
# numpy stream


class _Layout:
    """Field layout: per-color exponent fields over uint64 columns + parameters."""

    XBITS = 6
    PBITS = 10

    def __init__(self, n, mbar, params):
        self.n = n
        self.mbar = mbar
        self.params = sorted(params, key=lambda v: v.key)
        self.xcols = []  # per color: (column index, bit offset)
        self.colmap = {}
        col, used = 0, 0
        for i in range(n):
            need = mbar[i] * self.XBITS
            if used + need > 64:
                col += 1
                used = 0
            self.colmap[i] = (col, used)
            used += need
        self.n_xcols = col + 1
        self.pmap = {}
        pcol, pused = 0, 0
        for v in self.params:
            if pused + self.PBITS > 64:
                pcol += 1
                pused = 0
            self.pmap[v] = (pcol, pused)
            pused += self.PBITS
        self.n_pcols = pcol + 1
        self.xhalf = 1 << (self.XBITS - 1)
        self.phalf = 1 << (self.PBITS - 1)
        self.xbias = [0] * self.n_xcols
        for i in range(n):
            c, off = self.colmap[i]
            for j in range(mbar[i]):
                self.xbias[c] += self.xhalf << (off + j * self.XBITS)
        self.pbias = [0] * self.n_pcols
        for v in self.params:
            c, off = self.pmap[v]
            self.pbias[c] += self.phalf << off

    def ncols(self):
        return self.n_xcols + self.n_pcols

    def mono_cols(self, mono) -> list:
        """Column values of a monomial (bias included)."""
        cols = list(self.xbias) + list(self.pbias)
        for v, e in mono:
            if v.kind == "x":
                i, j = v.idx
                c, off = self.colmap[i]
                if not -self.xhalf < e + 0 < self.xhalf:
                    raise OverflowError("x-exponent outside stream field")
                cols[c] += e << (off + (j - 1) * self.XBITS)
            else:
                c, off = self.pmap[v]
                if not -self.phalf < e < self.phalf:
                    raise OverflowError("parameter exponent outside stream field")
                cols[self.n_xcols + c] += e << off
        return cols

    def offsets(self, mono) -> list:
        base = list(self.xbias) + list(self.pbias)
        return [a - b for a, b in zip(self.mono_cols(mono), base)]


def _table_dict(side: _Side, scale=1):
    """Pure-python signed table; exact, for small cases and cross-checks."""
    n = side.config.n
    sf = _antisym_reps(side.sf, side.blk1)
    sg = _antisym_reps(side.sg, side.blk2)
    ring, omega = _expand_omega(side)
    table = {}
    count = 0
    cap = get_term_limit() * 64
    for mf, cf in sf.items():
        kf = ring.pack_mono(mf)
        for mg, cg in sg.items():
            kg = ring.pack_mono(mg) - ring.bias
            cfg = cf * cg * side.sign0 * scale
            base = kf + kg - ring.bias
            for ko, co in omega.items():
                mono = ring.unpack_mono(base + ko)
                exps = dict(mono)
                sign = 1
                rebuilt = []
                dead = False
                for i in range(n):
                    vals = [exps.pop(X(i, j), 0) for j in range(1, side.mbar[i] + 1)]
                    parity, svals = _sort_desc_with_parity(vals)
                    if parity is None:
                        dead = True
                        break
                    sign *= parity
                    rebuilt.extend(
                        (X(i, j), e) for j, e in zip(range(1, side.mbar[i] + 1), svals) if e
                    )
                if dead:
                    continue
                rest = tuple(sorted(exps.items(), key=lambda p: p[0].key))
                key = tuple(sorted(rebuilt + list(rest), key=lambda p: p[0].key))
                val = table.get(key, 0) + sign * cfg * co
                if val:
                    table[key] = val
                elif key in table:
                    del table[key]
                count += 1
                if count > cap:
                    raise TermLimitExceeded(count, cap)
    return table


def _is_integral(c) -> bool:
    return isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1)


def _table_numpy(side: _Side, scale=1, params=None, batch_rows: int = 1 << 22):
    """Signed symmetrization table as sorted numpy columns plus coefficients."""
    n = side.config.n
    sf = _antisym_reps(side.sf, side.blk1)
    sg = _antisym_reps(side.sg, side.blk2)
    ring, omega = _expand_omega(side)
    layout = _Layout(n, side.mbar, params if params is not None else side.params())

    coeffs_ok = all(
        _is_integral(c)
        for pool in (sf.values(), sg.values(), omega.values())
        for c in pool
    )
    if not coeffs_ok:
        raise OverflowError("non-integer stream coefficients")
    # |accumulated| <= sum over the raw stream of |c|
    bound = (
        sum(abs(int(c)) for c in sf.values())
        * sum(abs(int(c)) for c in sg.values())
        * sum(abs(int(c)) for c in omega.values())
        * abs(int(scale))
    )
    if bound >= (1 << 62):
        raise OverflowError("stream coefficients do not fit int64")
    span_x = (
        _max_exp_by_kind(side.sf, "x")
        + _max_exp_by_kind(side.sg, "x")
        + len(side.omega_nums)
    )
    span_p = (
        _max_exp_by_kind(side.sf, "p")
        + _max_exp_by_kind(side.sg, "p")
        + 2 * len(side.omega_nums)
    )
    if span_x >= layout.xhalf or span_p >= layout.phalf:
        raise OverflowError("exponents do not fit the stream fields")

    ncols = layout.ncols()
    om_cols = [_np.empty(len(omega), dtype=_np.uint64) for _ in range(ncols)]
    om_coeff = _np.empty(len(omega), dtype=_np.int64)
    for idx, (ko, co) in enumerate(omega.items()):
        cols = layout.mono_cols(ring.unpack_mono(ko))
        for c in range(ncols):
            om_cols[c][idx] = cols[c]
        om_coeff[idx] = int(co)

    small, large = (sf, sg) if len(sf) <= len(sg) else (sg, sf)
    base_rows = len(omega) * len(small)
    if base_rows > (1 << 25):
        raise OverflowError("stream base exceeds the supported size")
    base_cols = [_np.empty(base_rows, dtype=_np.uint64) for _ in range(ncols)]
    base_coeff = _np.empty(base_rows, dtype=_np.int64)
    pos = 0
    for mono, coeff in small.items():
        offs = layout.offsets(mono)
        sl = slice(pos, pos + len(omega))
        for c in range(ncols):
            base_cols[c][sl] = om_cols[c] + _np.uint64(offs[c] % (1 << 64))
        base_coeff[sl] = om_coeff * int(coeff)
        pos += len(omega)

    pend_cols = [[] for _ in range(ncols)]
    pend_coeff = []
    pend_rows = 0
    acc = None

    def reduce_rows(cols, coeff):
        order = _np.lexsort(tuple(cols))
        cols = [c[order] for c in cols]
        coeff = coeff[order]
        if len(coeff) == 0:
            return cols, coeff
        new = _np.zeros(len(coeff), dtype=bool)
        new[0] = True
        for c in cols:
            new[1:] |= c[1:] != c[:-1]
        idx = _np.flatnonzero(new)
        sums = _np.add.reduceat(coeff, idx)
        keep = sums != 0
        return [c[idx][keep] for c in cols], sums[keep]

    def flush():
        nonlocal acc, pend_cols, pend_coeff, pend_rows
        if not pend_coeff:
            return
        cols = [_np.concatenate(pc) for pc in pend_cols]
        coeff = _np.concatenate(pend_coeff)
        if acc is not None:
            cols = [_np.concatenate([a, c]) for a, c in zip(acc[0], cols)]
            coeff = _np.concatenate([acc[1], coeff])
        acc = reduce_rows(cols, coeff)
        pend_cols = [[] for _ in range(ncols)]
        pend_coeff = []
        pend_rows = 0

    for mono, coeff in large.items():
        offs = layout.offsets(mono)
        cols = [
            base_cols[c] + _np.uint64(offs[c] % (1 << 64)) for c in range(ncols)
        ]
        coeff_arr = base_coeff * int(int(coeff) * side.sign0 * scale)
        cols, coeff_arr = _canonicalize_np(layout, cols, coeff_arr)
        for c in range(ncols):
            pend_cols[c].append(cols[c])
        pend_coeff.append(coeff_arr)
        pend_rows += len(coeff_arr)
        if pend_rows >= batch_rows:
            flush()
    flush()
    if acc is None:
        return tuple(_np.empty(0, dtype=_np.uint64) for _ in range(ncols)), _np.empty(
            0, dtype=_np.int64
        )
    return tuple(acc[0]), acc[1]


def _canonicalize_np(layout: _Layout, cols, coeff):
    """Sort per-color exponent fields descending; drop ties; apply sign."""
    xb = layout.XBITS
    mask = _np.uint64((1 << xb) - 1)
    parity = _np.zeros(len(coeff), dtype=bool)
    alive = _np.ones(len(coeff), dtype=bool)
    out_cols = [c.copy() for c in cols]
    for i in range(layout.n):
        m = layout.mbar[i]
        if m <= 1:
            continue
        colidx, off = layout.colmap[i]
        col = out_cols[colidx]
        fields = []
        for j in range(m):
            sh = _np.uint64(off + j * xb)
            fields.append((col >> sh) & mask)
        for a, b in _SORT_NETWORKS[m]:
            fa, fb = fields[a], fields[b]
            swap = fa < fb
            parity ^= swap
            lo = _np.where(swap, fa, fb)
            hi = _np.where(swap, fb, fa)
            fields[a], fields[b] = hi, lo
        for j in range(m - 1):
            alive &= fields[j] != fields[j + 1]
        rebuilt = _np.zeros(len(coeff), dtype=_np.uint64)
        for j in range(m):
            rebuilt |= fields[j] << _np.uint64(off + j * xb)
        keepmask = _np.uint64(~(((1 << (m * xb)) - 1) << off) & ((1 << 64) - 1))
        out_cols[colidx] = (col & keepmask) | rebuilt
    signs = _np.where(parity, -1, 1).astype(_np.int64)
    coeff = coeff * signs
    keep = alive & (coeff != 0)
    return [c[keep] for c in out_cols], coeff[keep]


def _max_exp_by_kind(p: LaurentPoly, kind: str) -> int:
    best = 0
    for m in p.terms:
        for v, e in m:
            if v.kind == kind and abs(e) > best:
                best = abs(e)
    return best


def signed_table(F: ShuffleElement, G: ShuffleElement, scale=1, use_numpy=None, params=None):
    side = _Side(F, G)
    if use_numpy is None:
        use_numpy = _np is not None
    if use_numpy and _np is not None:
        try:
            return ("np", _table_numpy(side, scale=scale, params=params))
        except OverflowError:
            pass
    return ("py", _table_dict(side, scale=scale))


def tables_equal(t1, t2) -> bool:
    kind1, data1 = t1
    kind2, data2 = t2
    if kind1 != kind2:
        raise ValueError("cannot compare tables from different backends")
    if kind1 == "py":
        return data1 == data2
    cols1, coeff1 = data1
    cols2, coeff2 = data2
    if len(coeff1) != len(coeff2) or not _np.array_equal(coeff1, coeff2):
        return False
    return all(_np.array_equal(a, b) for a, b in zip(cols1, cols2))


def _stab_order(F, G) -> int:
    import math

    out = 1
    for k, l in zip(F.deg, G.deg):
        out *= math.factorial(k) * math.factorial(l)
    return out


def _element_params(*elems):
    out = {Q, D}
    for e in elems:
        out |= {v for v in e.numerator.variables() if v.kind == "p"}
    return out


def star_equal_streamed(F1, G1, F2, G2, use_numpy=None) -> bool:
    """Decide star(F1, G1) == star(F2, G2) exactly via signed tables.

    Requires equal configs and equal total degree vectors on both sides;
    stabilizer orders are cross-multiplied so unequal block shapes compare
    correctly.
    """
    if deg_add(F1.deg, G1.deg) != deg_add(F2.deg, G2.deg):
        return False
    import math

    s1 = _stab_order(F1, G1)
    s2 = _stab_order(F2, G2)
    g = math.gcd(s1, s2)
    # both tables must share one parameter layout so field positions agree
    params = _element_params(F1, G1, F2, G2)
    t1 = signed_table(F1, G1, scale=s2 // g, use_numpy=use_numpy, params=params)
    t2 = signed_table(F2, G2, scale=s1 // g, use_numpy=use_numpy, params=params)
    if t1[0] != t2[0]:  # one side fell back; redo both on the exact path
        t1 = signed_table(F1, G1, scale=s2 // g, use_numpy=False)
        t2 = signed_table(F2, G2, scale=s1 // g, use_numpy=False)
    return tables_equal(t1, t2)


def star_commutes(F: ShuffleElement, G: ShuffleElement, use_numpy=None) -> bool:
    """Decide star(F, G) == star(G, F) exactly.

    Identical operands commute definitionally and short-circuit.
    """
    if F.config == G.config and F.deg == G.deg and F.numerator == G.numerator:
        return True
    return star_equal_streamed(F, G, G, F, use_numpy=use_numpy)
