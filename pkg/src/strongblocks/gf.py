"""Finite-field tower arithmetic F_p <= F_q <= F_{q^h}.

Elements are canonical integer codes.  For an extension built over a
subfield of order B, the element with coefficient vector (c_0, ..., c_{d-1})
in the power basis {1, x, ..., x^{d-1}} has code sum(code(c_i) * B^i), i.e.
the full coefficient expansion read little-endian in base p.  The code of a
subfield element is unchanged by the embedding, so membership of F_q inside
F_{q^h} is simply ``code < q``.

Defining polynomials are the *canonical* primitive polynomials: among all
monic primitive polynomials of the right degree, the one whose coefficient
vector has the smallest integer code.  This makes towers reproducible
byte-for-byte and fixes x (the class of the variable) as a generator of the
multiplicative group, so discrete logarithms are well defined.
"""

from __future__ import annotations

import numpy as np

from .config import KERNEL_FIELD_CAP, LOG_TABLE_CAP, TOWER_CAP
from .errors import CapExceededError, NonPrimeError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (desk-scale n)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q = p^m with p prime; raises if q is not a prime power."""
    fac = factorize(q)
    if len(fac) != 1:
        raise NonPrimeError(f"{q} is not a prime power")
    (p, m), = fac.items()
    return p, m


class GF:
    """Common interface of prime and extension fields.

    Elements are plain ints in [0, order).  Scalar operations are exact;
    bulk work goes through the kernel tables (see :meth:`kernel_tables`).
    """

    order: int
    char: int
    sub: "GF | None"
    degree: int                  # over the subfield (1 for prime fields)
    poly: tuple[int, ...]        # monic defining polynomial over sub, low degree first
    generator: int

    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def sub_(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)

    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n = self.order - 1
        for prime in factorize(n):
            while n % prime == 0 and self.pow(a, n // prime) == 1:
                n //= prime
        return n

    # -- kernel tables -------------------------------------------------

    _tables: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray] | None = None

    def kernel_tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(add, mul, inv, neg) lookup tables for the array kernels."""
        if self._tables is None:
            if self.order > KERNEL_FIELD_CAP:
                raise CapExceededError(
                    f"field of order {self.order} exceeds kernel table cap {KERNEL_FIELD_CAP}"
                )
            self._tables = self._build_tables()
        return self._tables

    def _build_tables(self):
        raise NotImplementedError

    def __repr__(self) -> str:  # pragma: no cover
        return f"GF({self.order})"


class PrimeField(GF):
    def __init__(self, p: int):
        if not is_prime(p):
            raise NonPrimeError(f"{p} is not prime")
        self.order = p
        self.char = p
        self.sub = None
        self.degree = 1
        self.poly = ()
        self.generator = self._smallest_primitive_root()

    def _smallest_primitive_root(self) -> int:
        if self.order == 2:
            return 1
        n = self.order - 1
        primes = list(factorize(n))
        for g in range(2, self.order):
            if all(pow(g, n // ell, self.order) != 1 for ell in primes):
                return g
        raise AssertionError("no primitive root found")

    def add(self, a, b):
        return (a + b) % self.order

    def neg(self, a):
        return (-a) % self.order

    def mul(self, a, b):
        return (a * b) % self.order

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.order - 2, self.order)

    def _build_tables(self):
        p = self.order
        i = np.arange(p, dtype=np.int64)
        addt = (i[:, None] + i[None, :]) % p
        mult = (i[:, None] * i[None, :]) % p
        negt = (-i) % p
        invt = np.zeros(p, dtype=np.int64)
        for a in range(1, p):
            invt[a] = self.inv(a)
        return addt, mult, invt, negt


class ExtField(GF):
    """F_{B^d} = sub[x]/(poly), elements coded base-B little-endian."""

    def __init__(self, sub: GF, poly: tuple[int, ...]):
        d = len(poly) - 1
        if d < 1 or poly[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree >= 1")
        self.sub = sub
        self.degree = d
        self.poly = tuple(poly)
        self.order = sub.order ** d
        self.char = sub.char
        # reduction of x^d: x^d = -(c_0 + c_1 x + ... + c_{d-1} x^{d-1})
        self._xd = tuple(sub.neg(c) for c in poly[:d])
        self.generator = self._reduce_x()
        self._exp: list[int] | None = None
        self._log: list[int] | None = None

    def _reduce_x(self) -> int:
        if self.degree == 1:
            return self._xd[0]
        return self.sub.order

    # -- digit plumbing ------------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        B = self.sub.order
        out = []
        for _ in range(self.degree):
            out.append(a % B)
            a //= B
        return tuple(out)

    def from_digits(self, ds) -> int:
        B = self.sub.order
        a = 0
        for c in reversed(list(ds)):
            a = a * B + c
        return a

    # -- arithmetic ----------------------------------------------------

    def add(self, a, b):
        s = self.sub
        return self.from_digits(s.add(x, y) for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a):
        s = self.sub
        return self.from_digits(s.neg(x) for x in self.digits(a))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        self._ensure_logs()
        if self._log is not None:
            n = self.order - 1
            return self._exp[(self._log[a] + self._log[b]) % n]
        return self._mul_poly(a, b)

    def _mul_poly(self, a: int, b: int) -> int:
        s = self.sub
        d = self.degree
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * d - 1)
        for i, ca in enumerate(da):
            if ca == 0:
                continue
            for j, cb in enumerate(db):
                if cb:
                    prod[i + j] = s.add(prod[i + j], s.mul(ca, cb))
        for k in range(2 * d - 2, d - 1, -1):
            ck = prod[k]
            if ck == 0:
                continue
            prod[k] = 0
            for t, r in enumerate(self._xd):
                if r:
                    prod[k - d + t] = s.add(prod[k - d + t], s.mul(ck, r))
        return self.from_digits(prod[:d])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        self._ensure_logs()
        if self._log is not None:
            n = self.order - 1
            return self._exp[(n - self._log[a]) % n]
        return self.pow(a, self.order - 2)

    def _mul_by_x(self, a: int) -> int:
        """Shift by one power-basis position and reduce; drives the log build."""
        s = self.sub
        digs = [0] + list(self.digits(a))
        top = digs.pop()
        if top:
            for t, r in enumerate(self._xd):
                if r:
                    digs[t] = s.add(digs[t], s.mul(top, r))
        return self.from_digits(digs)

    def _ensure_logs(self) -> None:
        if self._log is not None or self.order > LOG_TABLE_CAP:
            return
        n = self.order - 1
        exp = [0] * n
        log = [0] * self.order
        v = 1
        if self.degree == 1:
            for r in range(n):
                exp[r] = v
                log[v] = r
                v = self.sub.mul(v, self.generator)
        else:
            for r in range(n):
                exp[r] = v
                log[v] = r
                v = self._mul_by_x(v)
        if v != 1 or log[1] != 0:
            raise AssertionError("defining polynomial is not primitive")
        self._exp, self._log = exp, log

    def log(self, a: int) -> int:
        """Discrete log base the canonical generator (class of x)."""
        if a == 0:
            raise ZeroDivisionError("log of 0")
        self._ensure_logs()
        if self._log is not None:
            return self._log[a]
        # repeated multiplication fallback for very large fields
        v, r = 1, 0
        while v != a:
            v = self.mul(v, self.generator)
            r += 1
            if r >= self.order:
                raise AssertionError("generator does not generate")
        return r

    def exp(self, r: int) -> int:
        self._ensure_logs()
        if self._exp is not None:
            return self._exp[r % (self.order - 1)]
        return self.pow(self.generator, r % (self.order - 1))

    def _build_tables(self):
        Q = self.order
        # multiplicative tables from the log tables
        self._ensure_logs()
        if self._log is None:
            raise CapExceededError("field too large for kernel tables")
        logv = np.array(self._log, dtype=np.int64)
        expv = np.array(self._exp, dtype=np.int64)
        i = np.arange(Q, dtype=np.int64)
        mult = np.zeros((Q, Q), dtype=np.int64)
        nz = i[1:]
        mult[1:, 1:] = expv[(logv[nz][:, None] + logv[nz][None, :]) % (Q - 1)]
        invt = np.zeros(Q, dtype=np.int64)
        invt[1:] = expv[(-logv[nz]) % (Q - 1)]
        # additive tables digit-wise over the subfield
        saddt, _, _, snegt = self.sub.kernel_tables()
        B = self.sub.order
        addt = np.zeros((Q, Q), dtype=np.int64)
        negt = np.zeros(Q, dtype=np.int64)
        weight = 1
        a = i.copy()
        b = i.copy()
        for _ in range(self.degree):
            da = (a % B)
            db = (b % B)
            addt += weight * saddt[da[:, None], db[None, :]]
            negt += weight * snegt[da]
            a //= B
            b //= B
            weight *= B
        return addt, mult, invt, negt


# -- polynomial helpers over an arbitrary GF (little-endian coeff tuples) --


def _poly_trim(f):
    while len(f) > 1 and f[-1] == 0:
        f = f[:-1]
    return tuple(f)


def _poly_mod(field: GF, f, mod):
    f = list(f)
    dm = len(mod) - 1
    inv_lead = field.inv(mod[-1])
    while len(f) - 1 >= dm and any(f):
        if f[-1] == 0:
            f.pop()
            continue
        coef = field.mul(f[-1], inv_lead)
        shift = len(f) - 1 - dm
        for i, c in enumerate(mod):
            if c:
                f[shift + i] = field.sub_(f[shift + i], field.mul(coef, c))
        f.pop()
    return _poly_trim(f or [0])


def _poly_mulmod(field: GF, a, b, mod):
    prod = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            if cb:
                prod[i + j] = field.add(prod[i + j], field.mul(ca, cb))
    return _poly_mod(field, prod, mod)


def _poly_powmod(field: GF, a, e: int, mod):
    r = (1,)
    a = _poly_mod(field, a, mod)
    while e:
        if e & 1:
            r = _poly_mulmod(field, r, a, mod)
        a = _poly_mulmod(field, a, a, mod)
        e >>= 1
    return r


def _poly_gcd(field: GF, a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b != (0,):
        a, b = b, _poly_mod(field, a, b)
        b = _poly_trim(b)
    return a


def is_irreducible(field: GF, f) -> bool:
    """Rabin's test for a monic polynomial over ``field``."""
    d = len(f) - 1
    if d == 0:
        return False
    if d == 1:
        return True
    B = field.order
    x = (0, 1)
    if _poly_powmod(field, x, B ** d, f) != x:
        return False
    for ell in factorize(d):
        g = _poly_powmod(field, x, B ** (d // ell), f)
        diff = list(g) + [0] * (2 - len(g))
        diff[1] = field.sub_(diff[1], 1)
        if _poly_gcd(field, _poly_trim(diff), f) != (1,):
            return False
    return True


def is_primitive_poly(field: GF, f) -> bool:
    """Monic irreducible whose root x generates the multiplicative group."""
    d = len(f) - 1
    if f[0] == 0:
        return False
    if not is_irreducible(field, f):
        return False
    n = field.order ** d - 1
    x = (0, 1)
    for ell in factorize(n):
        if _poly_powmod(field, x, n // ell, f) == (1,):
            return False
    return True


def canonical_primitive_poly(field: GF, degree: int) -> tuple[int, ...]:
    """Smallest-code monic primitive polynomial of the given degree.

    Coefficient vectors (c_0, ..., c_{d-1}) are compared through their
    integer code sum(c_i * B^i), the same encoding used for field elements.
    """
    B = field.order
    for code in range(B ** degree):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % B)
            c //= B
        f = tuple(coeffs) + (1,)
        if is_primitive_poly(field, f):
            return f
    raise AssertionError(f"no primitive polynomial of degree {degree} over GF({B})")


# -- memoized field / tower constructors -----------------------------------

_PRIME_FIELDS: dict[int, PrimeField] = {}
_EXT_FIELDS: dict[tuple[int, tuple[int, ...]], ExtField] = {}


def prime_field(p: int) -> PrimeField:
    if p not in _PRIME_FIELDS:
        _PRIME_FIELDS[p] = PrimeField(p)
    return _PRIME_FIELDS[p]


def ext_field(sub: GF, poly: tuple[int, ...]) -> ExtField:
    key = (id(sub), tuple(poly))
    if key not in _EXT_FIELDS:
        _EXT_FIELDS[key] = ExtField(sub, poly)
    return _EXT_FIELDS[key]


class Tower:
    """Two-level tower F_p <= F_q <= F_{q^h} with its concatenation data.

    ``omega`` is the class of x in the top extension (a generator, since the
    defining polynomial is primitive) and ``A`` is the matrix of
    multiplication by omega on the power basis: column i of A holds the
    coefficient vector of omega * omega^i.  Powers of A realize the
    homomorphism alpha = omega^r -> A^r used by the block generator-matrix
    layout of concatenated codes.

    Immutable after construction; safe to share across workers.
    """

    def __init__(self, p: int, m: int, h: int, base: GF, top: ExtField,
                 base_poly: tuple[int, ...], top_poly: tuple[int, ...]):
        self.p = p
        self.m = m
        self.h = h
        self.q = p ** m
        self.Q = self.q ** h
        self.base = base
        self.top = top
        self.base_poly = base_poly
        self.top_poly = top_poly
        self.omega = top.generator
        self.A = self.alpha_matrix(self.omega)

    # -- expansion -----------------------------------------------------

    def expand(self, alpha: int) -> np.ndarray:
        """Coefficients of alpha in the power basis {1, omega, ..., omega^{h-1}}."""
        return np.array(self.top.digits(alpha), dtype=np.int64)

    def contract(self, vec) -> int:
        """Inverse of :meth:`expand`."""
        return self.top.from_digits(int(v) for v in vec)

    def alpha_matrix(self, alpha: int) -> np.ndarray:
        """h x h matrix over F_q of multiplication by alpha; zero matrix for 0.

        Column i is expand(alpha * omega^i); for alpha = omega^r this equals
        the r-th power of the companion matrix A.
        """
        h = self.h
        M = np.zeros((h, h), dtype=np.int64)
        if alpha == 0:
            return M
        v = alpha
        for i in range(h):
            M[:, i] = self.top.digits(v)
            v = self.top.mul(v, self.omega)
        return M

    def in_base(self, alpha: int) -> bool:
        """Membership in F_q (the codes of F_q are exactly [0, q))."""
        return 0 <= alpha < self.q

    def proper_subfield_member(self, alpha: int) -> int | None:
        """Smallest d < h with d | h and alpha in F_{q^d}, else None.

        Only subfields containing F_q are considered; alpha is in F_{q^d}
        iff it is fixed by the d-th power of the q-Frobenius.
        """
        for d in range(1, self.h):
            if self.h % d:
                continue
            if self.top.pow(alpha, self.q ** d) == alpha:
                return d
        return None

    def frobenius(self, alpha: int, times: int = 1) -> int:
        """q-Frobenius alpha -> alpha^(q^times)."""
        return self.top.pow(alpha, self.q ** times)

    def header(self) -> str:
        return f"field p={self.p} m={self.m} h={self.h}"

    def __repr__(self) -> str:  # pragma: no cover
        return f"Tower(p={self.p}, m={self.m}, h={self.h})"


_TOWERS: dict[tuple, Tower] = {}


def make_tower(p: int, m: int, h: int, *, top_poly: tuple[int, ...] | None = None,
               cap: int = TOWER_CAP) -> Tower:
    """Build the canonical tower F_p <= F_{p^m} <= F_{p^{mh}}.

    ``top_poly`` (codes of F_q coefficients, low degree first, monic) may
    override the canonical defining polynomial of the top extension; it must
    still be primitive so that the class of x generates.
    """
    if not is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    if m < 1 or h < 1:
        raise ValueError("extension degrees must be >= 1")
    if p ** (m * h) > cap:
        raise CapExceededError(f"tower size {p}^{m * h} exceeds cap {cap}")
    key = (p, m, h, tuple(top_poly) if top_poly else None)
    if key in _TOWERS:
        return _TOWERS[key]
    fp = prime_field(p)
    base_poly = canonical_primitive_poly(fp, m)
    base: GF = fp if m == 1 else ext_field(fp, base_poly)
    if top_poly is None:
        top_poly = canonical_primitive_poly(base, h)
    else:
        top_poly = tuple(top_poly)
        if not is_primitive_poly(base, top_poly):
            raise ValueError("top polynomial override must be monic primitive")
    top = ext_field(base, top_poly)
    tower = Tower(p, m, h, base, top, base_poly, top_poly)
    _TOWERS[key] = tower
    return tower


def field_of_order(q: int) -> GF:
    """The canonical field with q elements (base of the (p, m, 1) tower)."""
    p, m = factor_prime_power(q)
    return make_tower(p, m, 1).base
