"""Backend dispatch and the deterministic parallel scan driver.

The active backend is resolved per call from ``STRONGBLOCKS_BACKEND``
(numba by default, numpy as fallback), so tests can flip it with a plain
environment change.  Scans are partitioned into index chunks; chunks may run
on worker threads (the numba kernels release the GIL) and results merge by
minimum index, which keeps witnesses identical for any thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..config import backend_name
from ..gf import GF

_SCAN_CHUNK = 1 << 13


def _impl():
    if backend_name() == "numba":
        from . import numba_impl
        return numba_impl
    from . import numpy_impl
    return numpy_impl


def _field_args(field: GF):
    addt, mult, invt, negt = field.kernel_tables()
    p = field.order if field.sub is None else 0
    return addt, mult, invt, negt, p


def scan_first(total: int, run_chunk, threads: int = 1, chunk: int = _SCAN_CHUNK) -> int:
    """First failing index over [0, total) for a chunked scan, or -1.

    ``run_chunk(start, end)`` returns the first failing index inside its
    range or -1.  Chunks are consumed in order, so the returned index is the
    canonical (smallest-range-first) witness regardless of thread count.
    """
    if total <= 0:
        return -1
    starts = list(range(0, total, chunk))
    if threads <= 1 or len(starts) == 1:
        for s in starts:
            hit = run_chunk(s, min(s + chunk, total))
            if hit >= 0:
                return int(hit)
        return -1
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(run_chunk, s, min(s + chunk, total)) for s in starts]
        result = -1
        for fut in futures:
            if result >= 0:
                fut.cancel()
                continue
            hit = fut.result()
            if hit >= 0:
                result = int(hit)
        return result


def rank_capped(field: GF, data: np.ndarray, target: int) -> int:
    addt, mult, invt, negt, p = _field_args(field)
    buf = np.ascontiguousarray(data, dtype=np.int64).copy()
    if buf.size == 0:
        return 0
    impl = _impl()
    if impl.__name__.endswith("numba_impl"):
        return int(impl.rank_capped(buf, buf.shape[0], buf.shape[1], target,
                                    addt, mult, invt, negt))
    return int(impl.rank_capped(buf, buf.shape[0], buf.shape[1], target,
                                addt, mult, invt, negt, p))


def sbs_first_failure(field: GF, pts: np.ndarray, duals: np.ndarray,
                      threads: int = 1) -> int:
    """Index of the first hyperplane (dual row) not spanned by its section."""
    args = _field_args(field)
    impl = _impl()
    pts = np.ascontiguousarray(pts, dtype=np.int64)
    duals = np.ascontiguousarray(duals, dtype=np.int64)

    def run(start, end):
        return impl.sbs_scan(pts, duals, start, end, *args)

    return scan_first(len(duals), run, threads)


def weight_extremes(field: GF, G: np.ndarray, threads: int = 1
                    ) -> tuple[int, int, int, int]:
    """(min_w, max_w, argmin_code, argmax_code) over all nonzero codewords."""
    args = _field_args(field)
    impl = _impl()
    G = np.ascontiguousarray(G, dtype=np.int64)
    q = field.order
    total = q ** G.shape[0]
    starts = list(range(0, total, max(_SCAN_CHUNK, 1)))
    results = []

    def run(start, end):
        return impl.weight_scan(G, q, start, end, *args)

    if threads <= 1 or len(starts) == 1:
        results = [run(s, min(s + _SCAN_CHUNK, total)) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(run, s, min(s + _SCAN_CHUNK, total)) for s in starts]
            results = [f.result() for f in futures]
    minw, maxw, argmin, argmax = results[0]
    for mw, xw, ai, ax in results[1:]:
        if mw < minw:
            minw, argmin = mw, ai
        if xw > maxw:
            maxw, argmax = xw, ax
    return int(minw), int(maxw), int(argmin), int(argmax)


def all_codewords(field: GF, G: np.ndarray) -> np.ndarray:
    """(q^k, n) array of codewords; row index is the message code."""
    addt, mult, _, _, p = _field_args(field)
    G = np.ascontiguousarray(G, dtype=np.int64)
    k, n = G.shape
    q = field.order
    M = q ** k
    words = np.zeros((M, n), dtype=np.int64)
    rem = np.arange(M, dtype=np.int64)
    for i in range(k):
        d = rem % q
        rem //= q
        if p:
            words = (words + d[:, None] * G[i][None, :]) % p
        else:
            words = addt[words, mult[d[:, None], G[i][None, :]]]
    return words


def first_nonminimal_pair(field: GF, words: np.ndarray, threads: int = 1
                          ) -> tuple[int, int]:
    args = _field_args(field)
    impl = _impl()
    words = np.ascontiguousarray(words, dtype=np.int64)
    hits = []

    def run(start, end):
        i, j = impl.minimality_scan(words, start, end, *args)
        return (int(i), int(j))

    res = _pair_scan(len(words), run, threads)
    return res


def first_nonouter_pair(field: GF, words: np.ndarray, qbase: int,
                        threads: int = 1) -> tuple[int, int]:
    args = _field_args(field)
    impl = _impl()
    words = np.ascontiguousarray(words, dtype=np.int64)

    def run(start, end):
        i, j = impl.outer_minimality_scan(words, qbase, start, end, *args)
        return (int(i), int(j))

    return _pair_scan(len(words), run, threads)


def _pair_scan(total: int, run, threads: int) -> tuple[int, int]:
    starts = list(range(0, total, _SCAN_CHUNK))
    if threads <= 1 or len(starts) == 1:
        for s in starts:
            i, j = run(s, min(s + _SCAN_CHUNK, total))
            if i >= 0:
                return i, j
        return -1, -1
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(run, s, min(s + _SCAN_CHUNK, total)) for s in starts]
        result = (-1, -1)
        for fut in futures:
            if result[0] >= 0:
                fut.cancel()
                continue
            i, j = fut.result()
            if i >= 0:
                result = (i, j)
        return result


def first_avoidance_violation(field: GF, bases: np.ndarray, dims: np.ndarray,
                              duals2: np.ndarray, threads: int = 1) -> int:
    args = _field_args(field)
    impl = _impl()
    bases = np.ascontiguousarray(bases, dtype=np.int64)
    dims = np.ascontiguousarray(dims, dtype=np.int64)
    duals2 = np.ascontiguousarray(duals2, dtype=np.int64)

    def run(start, end):
        return impl.avoidance_scan(bases, dims, duals2, start, end, *args)

    return scan_first(len(duals2), run, threads)
