"""Pure-numpy fallback kernels.

Same signatures and same results as the numba backend.  Prime fields take a
mod-p arithmetic fast path (``p`` > 0); extension fields go through the
lookup tables.  Batched Gaussian elimination is vectorized across the
hyperplane axis so the strong-blocking-set scan stays usable without a JIT.
"""

from __future__ import annotations

import numpy as np


class _Ops:
    """Elementwise field arithmetic on int64 arrays."""

    def __init__(self, addt, mult, invt, negt, p):
        self.invt = invt
        if p:
            self.add = lambda a, b: (a + b) % p
            self.mul = lambda a, b: (a * b) % p
            self.neg = lambda a: (-a) % p
        else:
            self.add = lambda a, b: addt[a, b]
            self.mul = lambda a, b: mult[a, b]
            self.neg = lambda a: negt[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def inv(self, a):
        return self.invt[a]


def rank_capped(data, nrows, ncols, target, addt, mult, invt, negt, p=0):
    ops = _Ops(addt, mult, invt, negt, p)
    data = data[:nrows, :ncols]
    r = 0
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if data[i, c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            data[[r, piv]] = data[[piv, r]]
        if data[r, c] != 1:
            data[r] = ops.mul(data[r], invt[data[r, c]])
        below = data[r + 1:nrows, c]
        nz = np.nonzero(below)[0]
        if nz.size:
            rows = nz + r + 1
            data[rows] = ops.sub(data[rows], ops.mul(data[rows, c][:, None], data[r][None, :]))
        r += 1
        if r >= target or r == nrows:
            break
    return r


def _rank_many(data, target, ops):
    """Ranks of a batch of row sets; data is (B, R, C), mutated in place."""
    B, R, C = data.shape
    if R == 0:
        return np.zeros(B, dtype=np.int64)
    rowptr = np.zeros(B, dtype=np.int64)
    rowidx = np.arange(R)
    for c in range(C):
        col = data[:, :, c]
        cand = (col != 0) & (rowidx[None, :] >= rowptr[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        bsel = np.nonzero(has)[0]
        piv = cand[bsel].argmax(axis=1)
        pr = rowptr[bsel]
        prow = data[bsel, piv].copy()
        data[bsel, piv] = data[bsel, pr]
        data[bsel, pr] = prow
        prow = ops.mul(prow, ops.inv(prow[:, c])[:, None])
        data[bsel, pr] = prow
        below = rowidx[None, :] > pr[:, None]
        factors = np.where(below, data[bsel, :, c], 0)
        data[bsel] = ops.sub(data[bsel], ops.mul(factors[:, :, None], prow[:, None, :]))
        rowptr[bsel] += 1
        if (rowptr >= target).all():
            break
    return rowptr


_CHUNK = 2048


def sbs_scan(pts, duals, start, end, addt, mult, invt, negt, p):
    ops = _Ops(addt, mult, invt, negt, p)
    n, k = pts.shape
    target = k - 1
    for cstart in range(start, end, _CHUNK):
        cend = min(cstart + _CHUNK, end)
        chunk = duals[cstart:cend]
        B = len(chunk)
        dots = np.zeros((B, n), dtype=np.int64)
        for j in range(k):
            dots = ops.add(dots, ops.mul(chunk[:, j][:, None], pts[None, :, j]))
        mask = dots == 0
        counts = mask.sum(axis=1)
        R = int(counts.max()) if B else 0
        data = np.zeros((B, R, k), dtype=np.int64)
        bidx, pidx = np.nonzero(mask)
        offsets = np.zeros(B + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        pos = np.arange(len(bidx)) - offsets[bidx]
        data[bidx, pos] = pts[pidx]
        ranks = _rank_many(data, target, ops)
        bad = ranks < target
        if bad.any():
            return cstart + int(np.nonzero(bad)[0][0])
    return -1


def weight_scan(G, q, start, end, addt, mult, invt, negt, p):
    ops = _Ops(addt, mult, invt, negt, p)
    k, n = G.shape
    minw, maxw = n + 1, -1
    argmin, argmax = -1, -1
    for cstart in range(start, end, 1 << 14):
        cend = min(cstart + (1 << 14), end)
        codes = np.arange(cstart, cend, dtype=np.int64)
        if cstart == 0:
            codes = codes[1:]
        if len(codes) == 0:
            continue
        acc = np.zeros((len(codes), n), dtype=np.int64)
        rem = codes.copy()
        for i in range(k):
            d = rem % q
            rem //= q
            acc = ops.add(acc, ops.mul(d[:, None], G[i][None, :]))
        w = (acc != 0).sum(axis=1)
        lo, hi = int(w.argmin()), int(w.argmax())
        if w[lo] < minw:
            minw, argmin = int(w[lo]), int(codes[lo])
        if w[hi] > maxw:
            maxw, argmax = int(w[hi]), int(codes[hi])
    return minw, maxw, argmin, argmax


def _ratio_scan(words, start, end, ops, base_cap, require_base):
    """Shared pairwise scan; returns the first violating (i, j) or (-1, -1)."""
    M, n = words.shape
    nonzero_mask = words != 0
    for i in range(max(start, 1), end):
        wi = words[i]
        supp = np.nonzero(wi)[0]
        if supp.size == 0:
            continue
        outside = np.nonzero(wi == 0)[0]
        subset = ~nonzero_mask[:, outside].any(axis=1) if outside.size else \
            np.ones(M, dtype=bool)
        subset[i] = False
        if not require_base:
            subset[0] = False
        cand = np.nonzero(subset)[0]
        if cand.size == 0:
            continue
        ratios = ops.mul(words[np.ix_(cand, supp)], ops.inv(wi[supp])[None, :])
        ok = np.ones(cand.size, dtype=bool)
        if require_base:
            ok &= (ratios < base_cap).all(axis=1)
        violating = ok & (ratios != ratios[:, :1]).any(axis=1)
        hit = np.nonzero(violating)[0]
        if hit.size:
            return i, int(cand[hit[0]])
    return -1, -1


def minimality_scan(words, start, end, addt, mult, invt, negt, p):
    ops = _Ops(addt, mult, invt, negt, p)
    return _ratio_scan(words, start, end, ops, 0, False)


def outer_minimality_scan(words, qbase, start, end, addt, mult, invt, negt, p):
    ops = _Ops(addt, mult, invt, negt, p)
    return _ratio_scan(words, start, end, ops, qbase, True)


def avoidance_scan(bases, dims, duals2, start, end, addt, mult, invt, negt, p):
    ops = _Ops(addt, mult, invt, negt, p)
    L = end - start
    if L <= 0:
        return -1
    chunk = duals2[start:end]
    all_low = np.ones(L, dtype=bool)
    for mi in range(bases.shape[0]):
        h_i = int(dims[mi])
        B = bases[mi, :h_i]                     # (h_i, k)
        prod = np.zeros((L, h_i, 2), dtype=np.int64)
        for j in range(B.shape[1]):
            prod = ops.add(prod, ops.mul(B[None, :, j, None], chunk[:, None, :, j]))
        rank_ge2 = np.zeros(L, dtype=bool)
        for r1 in range(h_i):
            for r2 in range(r1 + 1, h_i):
                det = ops.sub(ops.mul(prod[:, r1, 0], prod[:, r2, 1]),
                              ops.mul(prod[:, r2, 0], prod[:, r1, 1]))
                rank_ge2 |= det != 0
        all_low &= ~rank_ge2
        if not all_low.any():
            return -1
    hits = np.nonzero(all_low)[0]
    return start + int(hits[0]) if hits.size else -1
