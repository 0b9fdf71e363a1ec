"""Numba kernels for the exhaustive scans.

All field arithmetic is table driven: (addt, mult, invt, negt) are dense
int64 lookup tables of the field in use.  Every scan takes a [start, end)
index range and returns the first failing index (or -1), so range chunks
can run on worker threads and merge deterministically by minimum index.
The trailing ``p`` argument (prime order, 0 for extension fields) is part
of the shared backend signature; the table path is uniform here.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_OPTS = dict(cache=True, nogil=True)


@njit(**_OPTS)
def rank_capped(data, nrows, ncols, target, addt, mult, invt, negt):
    """Rank of data[:nrows, :ncols] via in-place elimination, capped at target."""
    r = 0
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if data[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                tmp = data[r, j]
                data[r, j] = data[piv, j]
                data[piv, j] = tmp
        lead = data[r, c]
        if lead != 1:
            s = invt[lead]
            for j in range(c, ncols):
                data[r, j] = mult[data[r, j], s]
        for i in range(r + 1, nrows):
            f = data[i, c]
            if f != 0:
                nf = negt[f]
                for j in range(c, ncols):
                    data[i, j] = addt[data[i, j], mult[nf, data[r, j]]]
        r += 1
        if r >= target or r == nrows:
            break
    return r


@njit(**_OPTS)
def sbs_scan(pts, duals, start, end, addt, mult, invt, negt, p):
    """First hyperplane index whose point section does not span it, else -1."""
    n, k = pts.shape
    buf = np.empty((n, k), dtype=np.int64)
    for hidx in range(start, end):
        cnt = 0
        for i in range(n):
            s = 0
            for j in range(k):
                s = addt[s, mult[pts[i, j], duals[hidx, j]]]
            if s == 0:
                for j in range(k):
                    buf[cnt, j] = pts[i, j]
                cnt += 1
        if cnt < k - 1:
            return hidx
        if rank_capped(buf, cnt, k, k - 1, addt, mult, invt, negt) < k - 1:
            return hidx
    return -1


@njit(**_OPTS)
def weight_scan(G, q, start, end, addt, mult, invt, negt, p):
    """(min_w, max_w, argmin, argmax) over codewords msg*G for msg codes in range.

    Message code 0 is skipped; ties resolve to the smallest message code.
    """
    k, n = G.shape
    minw = n + 1
    maxw = -1
    argmin = np.int64(-1)
    argmax = np.int64(-1)
    msg = np.empty(k, dtype=np.int64)
    for e in range(start, end):
        if e == 0:
            continue
        t = e
        for i in range(k):
            msg[i] = t % q
            t //= q
        w = 0
        for j in range(n):
            s = 0
            for i in range(k):
                if msg[i] != 0:
                    s = addt[s, mult[msg[i], G[i, j]]]
            if s != 0:
                w += 1
        if w < minw:
            minw = w
            argmin = e
        if w > maxw:
            maxw = w
            argmax = e
    return minw, maxw, argmin, argmax


@njit(**_OPTS)
def minimality_scan(words, start, end, addt, mult, invt, negt, p):
    """First pair (i, j) with supp(w_j) inside supp(w_i), w_j not a multiple of w_i.

    Scans codeword indices i in [start, end), j over all nonzero codewords;
    returns (-1, -1) when every scanned codeword is minimal.
    """
    M, n = words.shape
    for i in range(start, end):
        if i == 0:
            continue
        for j in range(1, M):
            if j == i:
                continue
            lam = np.int64(-1)
            subset = True
            proportional = True
            for t in range(n):
                a = words[i, t]
                b = words[j, t]
                if a == 0:
                    if b != 0:
                        subset = False
                        break
                else:
                    r = mult[b, invt[a]]
                    if lam < 0:
                        lam = r
                    elif r != lam:
                        proportional = False
            if subset and not proportional:
                return i, j
    return -1, -1


@njit(**_OPTS)
def outer_minimality_scan(words, qbase, start, end, addt, mult, invt, negt, p):
    """First pair violating the outer-minimal codeword condition, else (-1, -1).

    A pair (c, c') violates when supp(c') is inside supp(c), every ratio
    c'_t / c_t on supp(c) lies in the base field (codes below qbase), and the
    ratios are not all equal.
    """
    M, n = words.shape
    for i in range(start, end):
        if i == 0:
            continue
        for j in range(M):
            if j == i:
                continue
            lam = np.int64(-1)
            subset = True
            in_base = True
            proportional = True
            for t in range(n):
                a = words[i, t]
                b = words[j, t]
                if a == 0:
                    if b != 0:
                        subset = False
                        break
                else:
                    r = mult[b, invt[a]]
                    if r >= qbase:
                        in_base = False
                        break
                    if lam < 0:
                        lam = r
                    elif r != lam:
                        proportional = False
            if subset and in_base and not proportional:
                return i, j
    return -1, -1


@njit(**_OPTS)
def avoidance_scan(bases, dims, duals2, start, end, addt, mult, invt, negt, p):
    """First codim-2 index meeting every member in projective dim >= dim-1, else -1.

    ``bases``: (members, hmax, k) padded member bases; ``dims``: row counts;
    ``duals2``: (L, 2, k) dual bases of the codimension-2 subspaces.  The
    meet dimension condition dim(L cap U_i) >= h_i - 1 is equivalent to
    rank(B_i D^T) <= 1.
    """
    nm = bases.shape[0]
    hmax = bases.shape[1]
    k = bases.shape[2]
    tmp = np.empty((hmax, 2), dtype=np.int64)
    for li in range(start, end):
        all_low = True
        for mi in range(nm):
            h_i = dims[mi]
            for r in range(h_i):
                for s in range(2):
                    acc = 0
                    for j in range(k):
                        acc = addt[acc, mult[bases[mi, r, j], duals2[li, s, j]]]
                    tmp[r, s] = acc
            if rank_capped(tmp, h_i, 2, 2, addt, mult, invt, negt) >= 2:
                all_low = False
                break
        if all_low:
            return li
    return -1
