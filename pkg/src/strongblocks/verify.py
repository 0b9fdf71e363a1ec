"""Predicate machinery with deterministic witnesses.

Strong blocking sets, their outer (extension-field) variants, outer minimal
codewords and codes, the avoidance property for subspace collections,
sublines, linear sets, degenerate Hermitian varieties and saturating sets.
Every checker scans a canonical enumeration and reports the first failing
object, so failures replay identically under any worker count.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels as kernels
from .codes import LinearCode, code_is_minimal, code_to_system, weight_extremes
from .concat import field_reduce_code, field_reduce_point, field_reduce_system
from .config import CODEWORD_CAP, ENUM_CAP, SUBSET_CAP
from .errors import (AmbientMismatchError, CapExceededError, ConsistencyError,
                     NotCollinearError, NotDistinctError, WrongTowerDegreeError,
                     ZeroCodewordError)
from .gf import GF, Tower
from .linalg import (ProjSystem, Subspace, as_matrix, codim2_dual_array,
                     normalize_rows, num_points, point_array, rank, row_basis,
                     span_rank, subspace_meet, subspace_points)
from .report import Stopwatch, VerificationReport


@dataclass
class SubspaceCollection:
    """The members U_1, ..., U_N of a union / avoidance check."""

    members: list[Subspace]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("collection must be nonempty")
        k = self.members[0].k
        f = self.members[0].field
        for m in self.members:
            if m.k != k or m.field is not f:
                raise AmbientMismatchError("members live in different ambients")

    @property
    def field(self) -> GF:
        return self.members[0].field

    @property
    def k(self) -> int:
        return self.members[0].k

    def union_points(self) -> ProjSystem:
        pts = np.vstack([subspace_points(self.field, m.basis) for m in self.members])
        seen: set[bytes] = set()
        keep = []
        for i, row in enumerate(pts):
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                keep.append(i)
        return ProjSystem(self.field, self.k, pts[keep])


# -- strong blocking sets ----------------------------------------------------


def is_sbs(P: ProjSystem, cap: int = ENUM_CAP, threads: int = 1) -> VerificationReport:
    """Exhaustive strong-blocking-set test.

    For every hyperplane v-perp, the points of P lying on it must span it;
    the witness is the first (canonical dual order) failing hyperplane.
    """
    with Stopwatch() as sw:
        duals = point_array(P.field, P.k, cap)
        bad = kernels.sbs_first_failure(P.field, P.points, duals, threads)
    witness = None
    if bad >= 0:
        v = duals[bad]
        on = P.points[_incidence_mask(P.field, P.points, v)]
        witness = {
            "hyperplane_index": int(bad),
            "dual_point": [int(x) for x in v],
            "section_rank": span_rank(P.field, on),
            "needed_rank": P.k - 1,
        }
    return VerificationReport(
        check="strong-blocking-set", ok=bad < 0, witness=witness,
        engine="hyperplane-scan", elapsed_ms=sw.ms,
        details={"points": len(P), "hyperplanes": len(duals), "k": P.k,
                 "q": P.field.order},
    )


def _incidence_mask(field: GF, pts: np.ndarray, v: np.ndarray) -> np.ndarray:
    addt, mult, _, _ = field.kernel_tables()
    acc = np.zeros(len(pts), dtype=np.int64)
    for j in range(pts.shape[1]):
        acc = addt[acc, mult[pts[:, j], v[j]]]
    return acc == 0


def is_outer_sbs(tower: Tower, P: ProjSystem, cap: int = ENUM_CAP,
                 threads: int = 1) -> VerificationReport:
    """Outer strong blocking set: the field reduction passes :func:`is_sbs`."""
    with Stopwatch() as sw:
        reduced = field_reduce_system(tower, P)
        rep = is_sbs(reduced, cap=cap, threads=threads)
    return VerificationReport(
        check="outer-strong-blocking-set", ok=rep.ok, witness=rep.witness,
        engine="field-reduction+" + rep.engine, elapsed_ms=sw.ms,
        details={"points": len(P), "reduced_points": len(reduced),
                 "K": P.k, "h": tower.h, "q": tower.q},
    )


# -- outer minimality --------------------------------------------------------


def codeword_is_outer_minimal(tower: Tower, C: LinearCode, word,
                              cap: int = CODEWORD_CAP) -> bool:
    """Outer minimality of one codeword, by exhaustive scan.

    c is outer minimal when every codeword c' that is supported inside
    supp(c) and coordinatewise a base-field multiple of c on supp(c) is a
    single base-field multiple of c.
    """
    w = np.asarray(word, dtype=np.int64)
    if not w.any():
        raise ZeroCodewordError("outer minimality is defined for nonzero codewords")
    if C.field.order ** C.k > cap:
        raise CapExceededError("codeword cap too small")
    top = C.field
    _, mult, invt, _ = top.kernel_tables()
    q = tower.q
    words = C.codewords()
    supp = np.nonzero(w)[0]
    outside = np.nonzero(w == 0)[0]
    subset = ~(words[:, outside] != 0).any(axis=1) if outside.size else \
        np.ones(len(words), dtype=bool)
    ratios = mult[words[:, supp], invt[w[supp]][None, :]]
    base_ok = (ratios < q).all(axis=1)
    proportional = (ratios == ratios[:, :1]).all(axis=1)
    return bool((~(subset & base_ok) | proportional).all())


def code_is_outer_minimal(tower: Tower, C: LinearCode, engine: str = "all",
                          cap: int = CODEWORD_CAP, enum_cap: int = ENUM_CAP,
                          threads: int = 1) -> VerificationReport:
    """Outer minimality with three independent engines.

    (a) 'scan': pairwise codeword scan of the outer-minimal condition;
    (b) 'reduced': minimality of the simplex concatenation (reduced code);
    (c) 'outer-sbs': outer strong blocking set test on the system.
    'all' runs the three and requires agreement.
    """
    engines = ("scan", "reduced", "outer-sbs") if engine == "all" else (engine,)
    verdicts: dict[str, bool] = {}
    witness = None
    with Stopwatch() as sw:
        for eng in engines:
            if eng == "scan":
                if C.field.order ** C.k > cap:
                    raise CapExceededError("codeword cap too small")
                words = C.codewords()
                i, j = kernels.first_nonouter_pair(C.field, words, tower.q, threads)
                verdicts[eng] = i < 0
                if i >= 0 and witness is None:
                    witness = {"engine": eng,
                               "codeword": [int(x) for x in words[i]],
                               "violator": [int(x) for x in words[j]],
                               "message": i, "violator_message": j}
            elif eng == "reduced":
                rep = code_is_minimal(field_reduce_code(tower, C), engine="pairwise",
                                      cap=cap, threads=threads)
                verdicts[eng] = rep.ok
                if not rep.ok and witness is None:
                    witness = {"engine": eng, **(rep.witness or {})}
            elif eng == "outer-sbs":
                rep = is_outer_sbs(tower, code_to_system(C), cap=enum_cap,
                                   threads=threads)
                verdicts[eng] = rep.ok
                if not rep.ok and witness is None:
                    witness = {"engine": eng, **(rep.witness or {})}
            else:
                raise ValueError(f"unknown engine {eng!r}")
    values = set(verdicts.values())
    if len(values) > 1:
        raise ConsistencyError(f"outer minimality engines disagree: {verdicts}")
    ok = values.pop()
    return VerificationReport(
        check="code-is-outer-minimal", ok=ok, witness=None if ok else witness,
        engine="+".join(engines), elapsed_ms=sw.ms,
        details={"verdicts": verdicts, "N": C.n, "K": C.k,
                 "q": tower.q, "h": tower.h},
    )


def outer_ab(tower: Tower, C: LinearCode, cap: int = CODEWORD_CAP,
             threads: int = 1) -> tuple[int, int, bool]:
    """(max weight W, min distance D, W/D < q/(q-1)) with the base-field q."""
    D, W = weight_extremes(C, cap, threads)
    q = tower.q
    return W, D, W * (q - 1) < D * q


# -- the avoidance property --------------------------------------------------


def avoidance_property(U: SubspaceCollection, cap: int = ENUM_CAP,
                       threads: int = 1) -> VerificationReport:
    """No codimension-2 subspace meets every member in projective dim >= dim-1.

    The witness is the first (canonical order) violating codimension-2
    subspace, reported by its dual basis.
    """
    f, k = U.field, U.k
    with Stopwatch() as sw:
        duals2 = codim2_dual_array(f, k, cap)
        hmax = max(m.dim for m in U.members)
        bases = np.zeros((len(U.members), hmax, k), dtype=np.int64)
        dims = np.zeros(len(U.members), dtype=np.int64)
        for i, m in enumerate(U.members):
            bases[i, :m.dim] = m.basis
            dims[i] = m.dim
        bad = kernels.first_avoidance_violation(f, bases, dims, duals2, threads)
    witness = None
    if bad >= 0:
        witness = {"codim2_index": int(bad),
                   "dual_basis": duals2[bad].tolist(),
                   "meet_dims": [int(dims[i]) - rank(f, _matmul_t(f, bases[i][:int(dims[i])], duals2[bad]))
                                 for i in range(len(U.members))]}
    return VerificationReport(
        check="avoidance-property", ok=bad < 0, witness=witness,
        engine="codim2-scan", elapsed_ms=sw.ms,
        details={"members": len(U.members), "codim2_count": len(duals2), "k": k,
                 "q": f.order},
    )


def _matmul_t(field: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    from .concat import gf_matmul

    return gf_matmul(field, A, B.T)


# -- sublines ----------------------------------------------------------------


def _line_coordinates(tower: Tower, pts: np.ndarray) -> tuple[np.ndarray, ...]:
    """Rescale so P3 = P1 + P2 and solve P4 = x P1 + y P2."""
    top = tower.top
    pts = as_matrix(pts)
    if len(pts) != 4:
        raise ValueError("exactly four points required")
    keys = {p.tobytes() for p in normalize_rows(top, pts)}
    if len(keys) != 4:
        raise NotDistinctError("the four points must be distinct")
    if rank(top, pts) != 2:
        raise NotCollinearError("the four points must span a line")
    P1, P2, P3, P4 = pts
    a3, b3 = _solve_pair(top, P1, P2, P3)
    if a3 == 0 or b3 == 0:
        raise NotDistinctError("P3 coincides with P1 or P2")
    A1 = np.array([top.mul(int(t), a3) for t in P1], dtype=np.int64)
    A2 = np.array([top.mul(int(t), b3) for t in P2], dtype=np.int64)
    x, y = _solve_pair(top, A1, A2, P4)
    return A1, A2, x, y


def _solve_pair(field: GF, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> tuple[int, int]:
    """Coefficients (a, b) with w = a u + b v, for independent u, v."""
    M = np.vstack([u, v, w])
    R, r = rank_with_matrix(field, M)
    if r != 2:
        raise NotCollinearError("target point is not on the line")
    # solve the 2-variable system on two independent coordinates of (u, v)
    cols = _independent_columns(field, np.vstack([u, v]))
    a11, a12 = int(u[cols[0]]), int(u[cols[1]])
    a21, a22 = int(v[cols[0]]), int(v[cols[1]])
    b1, b2 = int(w[cols[0]]), int(w[cols[1]])
    det = field.sub_(field.mul(a11, a22), field.mul(a12, a21))
    dinv = field.inv(det)
    a = field.mul(field.sub_(field.mul(b1, a22), field.mul(b2, a21)), dinv)
    b = field.mul(field.sub_(field.mul(a11, b2), field.mul(a12, b1)), dinv)
    return a, b


def rank_with_matrix(field: GF, M: np.ndarray):
    from .linalg import rref

    return rref(field, M)


def _independent_columns(field: GF, UV: np.ndarray) -> tuple[int, int]:
    k = UV.shape[1]
    for c1 in range(k):
        for c2 in range(c1 + 1, k):
            sub = UV[:, [c1, c2]]
            if rank(field, sub) == 2:
                return c1, c2
    raise NotCollinearError("points do not span a line")


def points_on_common_subline(tower: Tower, pts, d: int) -> bool:
    """Whether 4 distinct collinear points lie on a common F_{q^d}-subline.

    After rescaling representatives so P3 = P1 + P2, the subline through
    P1, P2, P3 over F_{q^d} contains P4 = x P1 + y P2 iff y/x lies in
    F_{q^d}; distinctness forces x, y nonzero.
    """
    if not (1 <= d < tower.h and tower.h % d == 0):
        raise ValueError(f"subfield degree {d} must properly divide h={tower.h}")
    _, _, x, y = _line_coordinates(tower, np.asarray(pts, dtype=np.int64))
    ratio = tower.top.div(y, x)
    return tower.top.pow(ratio, tower.q ** d) == ratio


def on_any_proper_subline(tower: Tower, pts, absolute: bool = False) -> bool:
    """OR of :func:`points_on_common_subline` over proper subfield degrees.

    With ``absolute=True`` sublines over every proper subfield F_{p^e} of
    the top field are considered, not only those containing F_q.
    """
    _, _, x, y = _line_coordinates(tower, np.asarray(pts, dtype=np.int64))
    ratio = tower.top.div(y, x)
    if absolute:
        total = tower.m * tower.h
        degrees = [e for e in range(1, total) if total % e == 0]
        return any(tower.top.pow(ratio, tower.p ** e) == ratio for e in degrees)
    degrees = [d for d in range(1, tower.h) if tower.h % d == 0]
    return any(tower.top.pow(ratio, tower.q ** d) == ratio for d in degrees)


def subline_points(tower: Tower, pts, d: int) -> np.ndarray:
    """The full F_{q^d}-subline through the first three points (test oracle)."""
    A1, A2, _, _ = _line_coordinates(tower, np.asarray(pts, dtype=np.int64))
    top = tower.top
    rows = [A2]
    sub_elements = [a for a in range(tower.Q) if top.pow(a, tower.q ** d) == a]
    for lam in sub_elements:
        rows.append(np.array([top.add(int(u), top.mul(lam, int(v)))
                              for u, v in zip(A1, A2)], dtype=np.int64))
    return normalize_rows(top, np.vstack(rows))


# -- linear sets and Hermitian varieties -------------------------------------


@dataclass
class LinearSetSpec:
    """F_q-subspace of F_{q^h}^K in expanded coordinates (rank x Kh matrix)."""

    tower: Tower
    V: np.ndarray

    def __post_init__(self) -> None:
        self.V = as_matrix(self.V)
        if rank(self.tower.base, self.V) != self.V.shape[0]:
            raise ValueError("linear set basis rows must be independent")

    @property
    def rank(self) -> int:
        return self.V.shape[0]


def linear_set_weight(spec: LinearSetSpec, point) -> int:
    """wt_V(P) = dim_{F_q}(V meet <u>_{F_{q^h}}), in the expanded picture."""
    t = spec.tower
    K = len(point)
    line = field_reduce_point(t, point)
    V = Subspace(t.base, K * t.h, row_basis(t.base, spec.V))
    return subspace_meet(V, line).dim


@dataclass
class HermitianSpec:
    """Hermitian matrix H over F_{q^2} with its rank and enumeration index."""

    tower: Tower
    H: np.ndarray
    rank: int
    index: int


def hermitian_enumerate(tower: Tower, K: int):
    """All Hermitian K x K matrices in canonical order.

    Parameters vary little-endian: the flattened vector
    (diag_0, ..., diag_{K-1}, upper_01, upper_02, ...) with the first entry
    fastest; diagonal entries range over F_q, upper entries over F_{q^2},
    and the lower triangle is forced by H = sigma(H)^T.
    """
    if tower.h != 2:
        raise WrongTowerDegreeError("Hermitian varieties need h = 2")
    top = tower.top
    q, Q = tower.q, tower.Q
    uppers = [(i, j) for i in range(K) for j in range(i + 1, K)]
    radices = [q] * K + [Q] * len(uppers)
    total = 1
    for r in radices:
        total *= r
    for idx in range(total):
        rem = idx
        params = []
        for r in radices:
            params.append(rem % r)
            rem //= r
        H = np.zeros((K, K), dtype=np.int64)
        for i in range(K):
            H[i, i] = params[i]
        for t, (i, j) in enumerate(uppers):
            val = params[K + t]
            H[i, j] = val
            H[j, i] = tower.frobenius(val)
        yield idx, H


def hermitian_value(tower: Tower, H: np.ndarray, point) -> int:
    """x H sigma(x)^T for a point representative x."""
    top = tower.top
    x = [int(v) for v in point]
    sx = [tower.frobenius(v) for v in x]
    acc = 0
    for i in range(len(x)):
        if x[i] == 0:
            continue
        for j in range(len(x)):
            if sx[j] == 0 or H[i, j] == 0:
                continue
            acc = top.add(acc, top.mul(x[i], top.mul(int(H[i, j]), sx[j])))
    return acc


def hermitian_rank2_containment(tower: Tower, pts, cap: int = ENUM_CAP
                                ) -> HermitianSpec | None:
    """First Hermitian matrix of rank 1 or 2 vanishing on all points, else None.

    Rank-1 hits are hyperplane containments; callers can distinguish by the
    ``rank`` field of the returned spec.
    """
    if tower.h != 2:
        raise WrongTowerDegreeError("Hermitian varieties need h = 2")
    pts = as_matrix(pts)
    K = pts.shape[1]
    count = tower.q ** (K * K)
    if count > cap:
        raise CapExceededError(f"{count} Hermitian matrices exceed cap {cap}")
    for idx, H in hermitian_enumerate(tower, K):
        r = rank(tower.top, H)
        if not 1 <= r <= 2:
            continue
        if all(hermitian_value(tower, H, p) == 0 for p in pts):
            return HermitianSpec(tower, H, r, idx)
    return None


def hermitian_rank2_hits(tower: Tower, pts, cap: int = ENUM_CAP
                         ) -> tuple[HermitianSpec | None, HermitianSpec | None]:
    """(first rank-1 hit, first rank-2 hit), each possibly None."""
    if tower.h != 2:
        raise WrongTowerDegreeError("Hermitian varieties need h = 2")
    pts = as_matrix(pts)
    K = pts.shape[1]
    count = tower.q ** (K * K)
    if count > cap:
        raise CapExceededError(f"{count} Hermitian matrices exceed cap {cap}")
    first1 = first2 = None
    for idx, H in hermitian_enumerate(tower, K):
        r = rank(tower.top, H)
        if r == 1 and first1 is None:
            if all(hermitian_value(tower, H, p) == 0 for p in pts):
                first1 = HermitianSpec(tower, H, 1, idx)
        elif r == 2 and first2 is None:
            if all(hermitian_value(tower, H, p) == 0 for p in pts):
                first2 = HermitianSpec(tower, H, 2, idx)
        if first1 is not None and first2 is not None:
            break
    return first1, first2


# -- saturating sets ---------------------------------------------------------


def _covers(P: ProjSystem, rho: int, cap: int) -> bool:
    """Whether every ambient point is in the span of some (rho+1)-subset."""
    field, k = P.field, P.k
    ambient = point_array(field, k)
    n_amb = len(ambient)
    pts = P.points
    size = min(rho + 1, len(pts))
    n_subsets = 1
    for i in range(size):
        n_subsets = n_subsets * (len(pts) - i) // (i + 1)
    if n_subsets * n_amb > cap:
        raise CapExceededError("saturation scan exceeds cap")
    index = {row.tobytes(): i for i, row in enumerate(ambient)}
    covered = np.zeros(n_amb, dtype=bool)
    for subset in combinations(range(len(pts)), size):
        basis = row_basis(field, pts[list(subset)])
        for row in subspace_points(field, basis):
            covered[index[row.tobytes()]] = True
        if covered.all():
            return True
    return bool(covered.all())


def is_saturating(P: ProjSystem, rho: int, check_minimality: bool = True,
                  cap: int = SUBSET_CAP) -> bool:
    """rho-saturating test: (rho+1)-point spans cover the space, rho minimal.

    ``check_minimality=False`` skips the "rho is smallest" clause (useful for
    bound experiments).
    """
    if rho < 0:
        raise ValueError("rho must be >= 0")
    if not _covers(P, rho, cap):
        return False
    if check_minimality and rho >= 1 and _covers(P, rho - 1, cap):
        return False
    return True
