"""Exact linear algebra and projective-space combinatorics over tower fields.

Matrices are numpy int64 arrays of element codes; all arithmetic is table
driven and exact.  Projective points are normalized so that the leftmost
nonzero coordinate equals 1, and every enumeration is sorted by the integer
code of the coordinate vector (little-endian: coordinate 0 is the least
significant digit).  That single ordering convention fixes hyperplane,
codimension-2 and generator-column orders across the whole package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .config import ENUM_CAP
from .errors import AmbientMismatchError, CapExceededError
from .gf import GF


def as_matrix(rows, cols: int | None = None) -> np.ndarray:
    M = np.asarray(rows, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if cols is not None and M.shape[1] != cols:
        raise AmbientMismatchError(f"expected {cols} columns, got {M.shape[1]}")
    return M


# -- row reduction ---------------------------------------------------------


def rref(field: GF, M) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form and rank, exact over ``field``."""
    addt, mult, invt, negt = field.kernel_tables()
    R = as_matrix(M).copy()
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if R[i, c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        if R[r, c] != 1:
            R[r] = mult[R[r], invt[R[r, c]]]
        for i in range(rows):
            if i != r and R[i, c]:
                R[i] = addt[R[i], mult[negt[R[i, c]], R[r]]]
        r += 1
        if r == rows:
            break
    return R, r


def rank(field: GF, M) -> int:
    return rref(field, M)[1]


def row_basis(field: GF, M) -> np.ndarray:
    R, r = rref(field, M)
    return R[:r]


def null_space(field: GF, M) -> np.ndarray:
    """RREF basis of {x : M x^T = 0} (orthogonal complement of the row space)."""
    R, r = rref(field, M)
    cols = R.shape[1]
    pivots = []
    j = 0
    for i in range(r):
        while R[i, j] == 0:
            j += 1
        pivots.append(j)
        j += 1
    free = [c for c in range(cols) if c not in pivots]
    negt = field.kernel_tables()[3]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = negt[R[ri, fc]]
    if len(free) == 0:
        return basis
    return rref(field, basis)[0][: len(free)]


# -- projective points -----------------------------------------------------


def normalize_point(field: GF, vec) -> np.ndarray:
    v = np.asarray(vec, dtype=np.int64).copy()
    nz = np.nonzero(v)[0]
    if nz.size == 0:
        raise ValueError("the zero vector is not a projective point")
    lead = int(v[nz[0]])
    if lead != 1:
        _, mult, invt, _ = field.kernel_tables()
        v = mult[v, invt[lead]]
    return v


def normalize_rows(field: GF, pts: np.ndarray) -> np.ndarray:
    pts = as_matrix(pts)
    if pts.size == 0:
        return pts
    _, mult, invt, _ = field.kernel_tables()
    nzmask = pts != 0
    if not nzmask.any(axis=1).all():
        raise ValueError("zero row cannot be normalized")
    first = nzmask.argmax(axis=1)
    lead = pts[np.arange(len(pts)), first]
    return mult[pts, invt[lead][:, None]]


def sort_by_code(pts: np.ndarray) -> np.ndarray:
    """Sort rows by the little-endian integer code of the coordinate vector."""
    if len(pts) == 0:
        return pts
    return pts[np.lexsort(pts.T)]


def dedupe_rows(pts: np.ndarray) -> np.ndarray:
    """Remove duplicate rows, keeping first occurrence (stable)."""
    seen: set[bytes] = set()
    keep = []
    for i, row in enumerate(pts):
        key = row.tobytes()
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return pts[keep]


@dataclass
class ProjSystem:
    """Ordered multiset of normalized points of PG(k-1, field)."""

    field: GF
    k: int
    points: np.ndarray  # (n, k) int64, rows normalized

    def __post_init__(self) -> None:
        self.points = as_matrix(self.points, self.k)

    def __len__(self) -> int:
        return len(self.points)

    def spanning(self) -> bool:
        return rank(self.field, self.points) == self.k

    def deduped(self) -> "ProjSystem":
        return ProjSystem(self.field, self.k, dedupe_rows(self.points))


@dataclass
class Subspace:
    """Projective subspace given by an RREF basis of its vector space."""

    field: GF
    k: int
    basis: np.ndarray  # (dim, k) int64, RREF

    def __post_init__(self) -> None:
        self.basis = as_matrix(self.basis, self.k) if np.size(self.basis) else \
            np.zeros((0, self.k), dtype=np.int64)

    @property
    def dim(self) -> int:
        """Vector-space dimension (projective dimension + 1)."""
        return self.basis.shape[0]

    def key(self) -> bytes:
        return self.basis.tobytes()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subspace) and self.k == other.k and \
            self.basis.shape == other.basis.shape and (self.basis == other.basis).all()


def subspace_from_rows(field: GF, k: int, rows) -> Subspace:
    return Subspace(field, k, row_basis(field, as_matrix(rows, k)))


def span_rank(field: GF, points) -> int:
    """Rank of the matrix whose rows are the given points; 0 for no points."""
    pts = np.asarray(points, dtype=np.int64)
    if pts.size == 0:
        return 0
    return rank(field, pts)


def subspace_meet(U: Subspace, W: Subspace) -> Subspace:
    """Intersection, computed through orthogonal complements; exact."""
    if U.k != W.k or U.field is not W.field:
        raise AmbientMismatchError("subspaces live in different ambients")
    f, k = U.field, U.k
    du, dw = null_space(f, U.basis), null_space(f, W.basis)
    stacked = np.vstack([du, dw]) if du.size or dw.size else np.zeros((0, k), dtype=np.int64)
    return Subspace(f, k, null_space(f, stacked))


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    if U.k != W.k or U.field is not W.field:
        raise AmbientMismatchError("subspaces live in different ambients")
    return subspace_from_rows(U.field, U.k, np.vstack([U.basis, W.basis]))


# -- enumerations ----------------------------------------------------------


def num_points(Q: int, k: int) -> int:
    return (Q ** k - 1) // (Q - 1)


def point_array(field: GF, k: int, cap: int = ENUM_CAP) -> np.ndarray:
    """All points of PG(k-1, field) as rows, normalized, ascending code."""
    Q = field.order
    n = num_points(Q, k)
    if n > cap:
        raise CapExceededError(f"{n} points exceed enumeration cap {cap}")
    total = Q ** k
    chunks = []
    step = min(total, 1 << 20)
    powers = Q ** np.arange(k, dtype=np.int64)
    for start in range(0, total, step):
        codes = np.arange(start, min(start + step, total), dtype=np.int64)
        digits = (codes[:, None] // powers[None, :]) % Q
        nzmask = digits != 0
        any_nz = nzmask.any(axis=1)
        first = nzmask.argmax(axis=1)
        lead = digits[np.arange(len(digits)), first]
        keep = any_nz & (lead == 1)
        chunks.append(digits[keep])
    pts = np.vstack(chunks)
    assert len(pts) == n
    return pts


def enumerate_points(field: GF, k: int, cap: int = ENUM_CAP) -> Iterator[np.ndarray]:
    """Yield each projective point exactly once, in canonical order."""
    yield from point_array(field, k, cap)


def hyperplane_from_dual(field: GF, v) -> Subspace:
    v = as_matrix(v)
    return Subspace(field, v.shape[1], null_space(field, v))


def enumerate_hyperplanes(field: GF, k: int, cap: int = ENUM_CAP
                          ) -> Iterator[tuple[np.ndarray, Subspace]]:
    """(dual point v, hyperplane v-perp) pairs, in dual-point canonical order."""
    for v in point_array(field, k, cap):
        yield v, hyperplane_from_dual(field, v)


def codim2_dual_array(field: GF, k: int, cap: int = ENUM_CAP) -> np.ndarray:
    """Dual 2-dimensional RREF bases of all codimension-2 subspaces.

    Generated as spans of pairs of distinct dual points, deduplicated on the
    RREF of the dual basis; the emission order (first pair occurrence) is
    what verification witnesses refer to.
    """
    from .bounds import gauss_binom  # local import to avoid cycle

    if k < 2:
        raise CapExceededError("codimension 2 needs ambient k >= 2")
    count = gauss_binom(k, 2, field.order)
    if count > cap:
        raise CapExceededError(f"{count} codim-2 spaces exceed cap {cap}")
    duals = point_array(field, k, cap)
    seen: set[bytes] = set()
    out = np.empty((count, 2, k), dtype=np.int64)
    idx = 0
    for i in range(len(duals)):
        for j in range(i + 1, len(duals)):
            basis = row_basis(field, np.vstack([duals[i], duals[j]]))
            key = basis.tobytes()
            if key in seen:
                continue
            seen.add(key)
            out[idx] = basis
            idx += 1
    assert idx == count
    return out


def enumerate_codim2(field: GF, k: int, cap: int = ENUM_CAP) -> Iterator[Subspace]:
    """Codimension-2 subspaces (vector dimension k-2), canonical order."""
    for dual in codim2_dual_array(field, k, cap):
        yield Subspace(field, k, null_space(field, dual))


def subspace_points(field: GF, basis) -> np.ndarray:
    """All points of the row space of ``basis``, normalized, ascending code."""
    B = as_matrix(basis)
    r, k = B.shape
    if r == 0:
        return np.zeros((0, k), dtype=np.int64)
    addt, mult, _, _ = field.kernel_tables()
    Q = field.order
    codes = np.arange(1, Q ** r, dtype=np.int64)
    acc = np.zeros((len(codes), k), dtype=np.int64)
    rem = codes.copy()
    for i in range(r):
        d = rem % Q
        rem //= Q
        acc = addt[acc, mult[d[:, None], B[i][None, :]]]
    pts = dedupe_rows(sort_by_code(normalize_rows(field, acc)))
    assert len(pts) == num_points(Q, r)
    return pts


def all_subspace_rrefs(field: GF, n: int, k: int) -> Iterator[np.ndarray]:
    """Every k-dimensional subspace of F^n as its RREF generator matrix.

    Standard pivot-position enumeration; the total count equals the Gaussian
    binomial, which callers may use as a cross-check.
    """
    from itertools import combinations, product

    Q = field.order
    for pivots in combinations(range(n), k):
        free_cells = [(i, c)
                      for i in range(k)
                      for c in range(pivots[i] + 1, n) if c not in pivots]
        for values in product(range(Q), repeat=len(free_cells)):
            M = np.zeros((k, n), dtype=np.int64)
            for i, p in enumerate(pivots):
                M[i, p] = 1
            for (i, c), v in zip(free_cells, values):
                M[i, c] = v
            yield M
