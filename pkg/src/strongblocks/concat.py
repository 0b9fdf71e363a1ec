"""Concatenation and field reduction.

``concatenate`` realizes the block generator-matrix layout: block (i, j) is
A(alpha_ij) * G_inner_j, where A(alpha) is the multiplication-by-alpha matrix
on the power basis (a power of the companion matrix A for nonzero alpha).
``field_reduce_*`` send points of PG(K-1, q^h) to (h-1)-dimensional
subspaces of PG(Kh-1, q); reducing a whole code is the same as concatenating
it with simplex inners, and that identity is kept executable through two
independent code paths that must produce byte-equal reduced row-echelon
forms.

Representatives are pinned: reduction works on the normalized point (and
``field_reduce_code`` normalizes generator columns first), while
``concatenate`` uses the outer generator matrix verbatim, exactly as the
block layout is written.
"""

from __future__ import annotations

import numpy as np

from .codes import LinearCode, code_to_system, is_nondegenerate, simplex
from .errors import (DegenerateCodeError, DimensionMismatchError,
                     LengthMismatchError)
from .gf import Tower
from .linalg import (ProjSystem, Subspace, as_matrix, normalize_rows,
                     point_array, row_basis)


def gf_matmul(field, A, B) -> np.ndarray:
    """Exact matrix product over ``field`` (table driven)."""
    addt, mult, _, _ = field.kernel_tables()
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {A.shape} by {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for t in range(A.shape[1]):
        out = addt[out, mult[A[:, t][:, None], B[t][None, :]]]
    return out


def concatenate(tower: Tower, Couter: LinearCode, inners: list[LinearCode]
                ) -> LinearCode:
    """Concatenation of an outer [N, K]_{q^h} code with N inner [n_l, h]_q codes.

    Returns the [sum n_l, Kh]_q code with the block generator layout; inner
    blocks are laid out in outer-column order with inner column order kept.
    """
    K, N = Couter.G.shape
    if len(inners) == 1 and N > 1:
        inners = inners * N
    if len(inners) != N:
        raise LengthMismatchError(f"{len(inners)} inner codes for outer length {N}")
    h = tower.h
    for inner in inners:
        if inner.k != h:
            raise DimensionMismatchError(
                f"inner dimension {inner.k} != extension degree {h}")
        if inner.field is not tower.base:
            raise DimensionMismatchError("inner codes must live over the base field")
    widths = [inner.n for inner in inners]
    total = sum(widths)
    G = np.zeros((K * h, total), dtype=np.int64)
    col = 0
    for j in range(N):
        Gi = inners[j].G
        for i in range(K):
            block = gf_matmul(tower.base, tower.alpha_matrix(int(Couter.G[i, j])), Gi)
            G[i * h:(i + 1) * h, col:col + widths[j]] = block
        col += widths[j]
    return LinearCode(tower.base, G)


def reduction_matrix(tower: Tower, point) -> np.ndarray:
    """h x Kh matrix whose row space is the field reduction of the point.

    Row i is the concatenation over coordinates alpha_j of
    expand(omega^i * alpha_j); equivalently the blocks A(alpha_j) placed side
    by side.
    """
    pt = np.asarray(point, dtype=np.int64)
    K = len(pt)
    h = tower.h
    X = np.empty((h, K * h), dtype=np.int64)
    lam = 1
    for i in range(h):
        for j in range(K):
            X[i, j * h:(j + 1) * h] = tower.expand(tower.top.mul(lam, int(pt[j])))
        lam = tower.top.mul(lam, tower.omega)
    return X


def field_reduce_point(tower: Tower, point) -> Subspace:
    """Field reduction of a point: an (h-1)-dimensional projective subspace.

    The representative is the normalized point; the output basis is in RREF.
    """
    pt = normalize_rows(tower.top, np.asarray(point, dtype=np.int64).reshape(1, -1))[0]
    K = len(pt)
    return Subspace(tower.base, K * tower.h,
                    row_basis(tower.base, reduction_matrix(tower, pt)))


def reduced_point_block(tower: Tower, point) -> np.ndarray:
    """All points of the reduced subspace, in canonical simplex-column order.

    The row for simplex column p is the reduced-space point obtained from
    the scalar lambda = dec(p); with a normalized input point every row comes
    out normalized.
    """
    pt = normalize_rows(tower.top, np.asarray(point, dtype=np.int64).reshape(1, -1))[0]
    K = len(pt)
    h = tower.h
    cols = point_array(tower.base, h)
    out = np.empty((len(cols), K * h), dtype=np.int64)
    for r, p in enumerate(cols):
        lam = tower.contract(p)
        for j in range(K):
            out[r, j * h:(j + 1) * h] = tower.expand(tower.top.mul(lam, int(pt[j])))
    return out


def field_reduce_system(tower: Tower, P: ProjSystem) -> ProjSystem:
    """Union of the reduced subspaces' point lists, block per input point."""
    blocks = [reduced_point_block(tower, pt) for pt in P.points]
    pts = np.vstack(blocks) if blocks else np.zeros((0, P.k * tower.h), dtype=np.int64)
    return ProjSystem(tower.base, P.k * tower.h, normalize_rows(tower.base, pts))


def field_reduce_code(tower: Tower, C: LinearCode) -> LinearCode:
    """Reduced code: concatenation with simplex inners on the canonical generator."""
    if not is_nondegenerate(C):
        raise DegenerateCodeError("cannot reduce a degenerate code")
    Ghat = normalize_rows(tower.top, C.G.T).T.copy()
    canonical = LinearCode(tower.top, Ghat)
    return concatenate(tower, canonical, [simplex(tower.base, tower.h)])


def field_reduce_code_geometric(tower: Tower, C: LinearCode) -> LinearCode:
    """Independent reduction path: through the projective system.

    system_to_code(field_reduce_system(code_to_system(C))); must generate the
    same row space as :func:`field_reduce_code`.
    """
    from .codes import system_to_code

    return system_to_code(field_reduce_system(tower, code_to_system(C)))
