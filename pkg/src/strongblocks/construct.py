"""Explicit constructions: tetrahedron, diverted tangents, four-point
selection, subspace embedding, and the iterated field-reduction construction.

Constructions never trust their theorems: whenever the verification scan is
within caps it runs and its report ships with the output (certificates say
``unverified`` above caps).  All parameter choices are pinned so rebuilding
yields identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import gauss_binom
from .config import ENUM_CAP
from .errors import (CapExceededError, DimensionMismatchError,
                     SublineViolationError, TooFewParametersError)
from .gf import GF, Tower, factor_prime_power, make_tower
from .linalg import (ProjSystem, Subspace, dedupe_rows, normalize_rows,
                     num_points, point_array, row_basis, subspace_points)
from .report import VerificationReport
from .verify import is_sbs, is_outer_sbs, on_any_proper_subline


def tetrahedron(field: GF, k: int) -> ProjSystem:
    """Union of the lines through pairs of the k standard frame points.

    Size k + C(k,2)(q-1) after deduplication; a strong blocking set for
    every parameter choice.
    """
    if k < 2:
        raise ValueError("tetrahedron needs k >= 2")
    rows = []
    for i in range(k):
        for j in range(i + 1, k):
            basis = np.zeros((2, k), dtype=np.int64)
            basis[0, i] = 1
            basis[1, j] = 1
            rows.append(subspace_points(field, basis))
    pts = dedupe_rows(np.vstack(rows))
    q = field.order
    assert len(pts) == k + (k * (k - 1) // 2) * (q - 1)
    return ProjSystem(field, k, pts)


@dataclass
class TangentLines:
    """Diverted-tangent line family with its verification certificate."""

    tower: Tower
    K: int
    lines: list[tuple[np.ndarray, np.ndarray, Subspace]]  # (a, b, line span)
    union: ProjSystem
    certificate: VerificationReport | None  # None = above caps, unverified

    @property
    def verified(self) -> bool:
        return self.certificate is not None and self.certificate.ok


def diverted_tangent_set(tower: Tower, K: int, verify: bool = True,
                         cap: int = ENUM_CAP, threads: int = 1) -> TangentLines:
    """2K-3 diverted tangent lines to the rational normal curve in PG(K-1, Q).

    For each parameter lam in the canonical set S (the first 2K-3 elements of
    the order 0, 1, omega, omega^2, ...) the line joins
    a(lam) = (1, lam, ..., lam^{K-1}) and
    b(lam) = (0, 1, phi(2) lam, ..., phi(K-1) lam^{K-2}),
    with the canonical bijection phi(0) = 0, phi(r) = omega^{r-1}.
    The union is verified as a strong blocking set when within caps.
    """
    top = tower.top
    Q = tower.Q
    if K < 2:
        raise ValueError("K must be >= 2")
    n_lines = 2 * K - 3
    if n_lines > Q:
        raise TooFewParametersError(f"need 2K-3 = {n_lines} parameters, field has {Q}")
    params = [0]
    lam = 1
    while len(params) < n_lines:
        params.append(lam)
        lam = top.mul(lam, tower.omega)

    def phi(r: int) -> int:
        return 0 if r == 0 else top.pow(tower.omega, r - 1)

    lines = []
    blocks = []
    for lam in params:
        a = np.empty(K, dtype=np.int64)
        v = 1
        for i in range(K):
            a[i] = v
            v = top.mul(v, lam)
        b = np.zeros(K, dtype=np.int64)
        b[1] = 1
        v = lam
        for i in range(2, K):
            b[i] = top.mul(phi(i), v)
            v = top.mul(v, lam)
        span = Subspace(top, K, row_basis(top, np.vstack([a, b])))
        lines.append((a, b, span))
        blocks.append(subspace_points(top, span.basis))
    union = ProjSystem(top, K, dedupe_rows(np.vstack(blocks)))
    certificate = None
    if verify and num_points(Q, K) <= cap:
        certificate = is_sbs(union, cap=cap, threads=threads)
    return TangentLines(tower, K, lines, union, certificate)


def four_point_selection(tower: Tower, lines) -> ProjSystem:
    """[a], [b], [a+b], [a+omega b] on each line; no proper subline contains them.

    The subline condition is asserted for every line (it cannot fail with the
    canonical omega, which lies in no proper subfield; the assertion guards
    representative bugs).
    """
    top = tower.top
    if tower.h < 2:
        raise DimensionMismatchError("four-point selection needs h >= 2")
    rows = []
    for entry in lines:
        a, b = entry[0], entry[1]
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        ab = np.array([top.add(int(x), int(y)) for x, y in zip(a, b)], dtype=np.int64)
        awb = np.array([top.add(int(x), top.mul(tower.omega, int(y)))
                        for x, y in zip(a, b)], dtype=np.int64)
        quad = np.vstack([a, b, ab, awb])
        if on_any_proper_subline(tower, quad):
            raise SublineViolationError("selected quadruple lies on a proper subline")
        rows.append(normalize_rows(top, quad))
    K = rows[0].shape[1]
    return ProjSystem(top, K, np.vstack(rows))


def embed_sbs(target: Subspace, model: ProjSystem) -> ProjSystem:
    """Image of a spanning model under the injection onto the target's basis."""
    if model.k != target.dim:
        raise DimensionMismatchError(
            f"model ambient {model.k} != target dimension {target.dim}")
    if not model.spanning():
        raise DimensionMismatchError("model must span its ambient space")
    from .concat import gf_matmul

    image = gf_matmul(target.field, model.points, target.basis)
    return ProjSystem(target.field, target.k,
                      normalize_rows(target.field, image))


def super_k_sequence(q: int, i: int) -> list[int]:
    """Dimensions k_0, ..., k_i of the iterated construction (exact integers)."""
    ks = [2]
    for _ in range(i):
        k = ks[-1]
        step = q ** k + (3 if q % 2 else 2)
        assert (k * step) % 2 == 0
        ks.append(k * step // 2)
    return ks


def super_size_bound(q: int, i: int) -> int:
    """Size bound (q+1)/2 * 8^i * k_i for the iterated construction."""
    k_i = super_k_sequence(q, i)[-1]
    assert ((q + 1) * 8 ** i * k_i) % 2 == 0
    return (q + 1) * 8 ** i * k_i // 2


def iterated_log(q: int, n) -> int:
    """log*_q: number of times log_q must be applied to fall to <= 1."""
    import math

    count = 0
    x = n
    while True:
        if isinstance(x, int):
            if x <= 1:
                return count
            if x.bit_length() > 512:
                x = x.bit_length() * math.log(2) / math.log(q)
            else:
                x = math.log(x) / math.log(q)
        else:
            if x <= 1.0:
                return count
            x = math.log(x) / math.log(q)
        count += 1


@dataclass
class SuperConstruction:
    """One level of the iterated construction, with certificate."""

    q: int
    i: int
    k: int
    system: ProjSystem
    certificate: VerificationReport | None
    size_bound: int

    @property
    def verified(self) -> bool:
        return self.certificate is not None and self.certificate.ok


def super_construction(q: int, i: int, verify: bool = True, cap: int = ENUM_CAP,
                       threads: int = 1) -> SuperConstruction:
    """Iterated field-reduction strong blocking set B_i in PG(k_i - 1, q).

    B_0 = PG(1, q).  Each step takes the diverted tangent lines over the
    extension of degree k_i, selects four points per line, reduces each
    point to a (k_i - 1)-subspace, and plants an isomorphic copy of B_i in
    every such subspace.  Sizes follow n_{i+1} = 4 (2 k_{i+1}/k_i - 3) n_i.
    """
    from .concat import field_reduce_point

    if i < 0:
        raise ValueError("iteration must be >= 0")
    p, m = factor_prime_power(q)
    ks = super_k_sequence(q, i)
    base = make_tower(p, m, 1).base
    system = ProjSystem(base, 2, point_array(base, 2))
    for level in range(i):
        k_cur, k_next = ks[level], ks[level + 1]
        K = k_next // k_cur
        tower = make_tower(p, m, k_cur)
        tangents = diverted_tangent_set(tower, K, verify=verify, cap=cap,
                                        threads=threads)
        if tangents.certificate is not None and not tangents.certificate.ok:
            raise AssertionError("tangent-line union failed verification")
        selected = four_point_selection(tower, tangents.lines)
        blocks = []
        for pt in selected.points:
            target = field_reduce_point(tower, pt)
            blocks.append(embed_sbs(target, system).points)
        pts = np.vstack(blocks)
        expected = 4 * (2 * K - 3) * len(system)
        assert len(pts) == expected
        deduped = dedupe_rows(pts)
        assert len(deduped) == expected, "spread blocks must be disjoint"
        system = ProjSystem(base, k_next, pts)
    certificate = None
    if verify and num_points(q, ks[-1]) <= cap:
        certificate = is_sbs(system, cap=cap, threads=threads)
    return SuperConstruction(q, i, ks[-1], system, certificate,
                             super_size_bound(q, i))
