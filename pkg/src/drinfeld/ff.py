"""Exact arithmetic and dense linear algebra over small finite fields GF(p^r).

Field elements are residue coefficient vectors in the power basis of a fixed
monic irreducible modulus (for r = 1 the modulus is ignored and elements are
plain residues mod p).  Internally an element is packed into a single integer
c_0 + c_1*p + ... + c_{r-1}*p^{r-1}; matrices store packed values in a dense
integer array.  Everything is exact; there is no floating point anywhere.
"""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

__all__ = [
    "FieldCtx",
    "FqElem",
    "FqMatrix",
    "make_field",
    "inv",
    "rref",
    "kernel_basis",
    "rank",
    "rank_of_power",
    "rref_array",
    "kernel_array",
    "rank_array",
    "inv_array",
    "matpow_array",
]


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); coefficient lists are low-degree-first


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_rem(a, b, p):
    # remainder of a mod b; b monic
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - db
            for k in range(db + 1):
                a[shift + k] = (a[shift + k] - c * b[k]) % p
        a.pop()
    return _poly_trim(a)


def _is_irreducible(f, p):
    # trial division by all monic polynomials of degree <= deg(f)/2
    r = len(f) - 1
    if f[0] == 0:
        return r == 1
    for d in range(1, r // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if not _poly_rem(f, g, p):
                return False
    return True


def make_field(p, r=1):
    """Build the field context for GF(p^r).

    The modulus is the lexicographically smallest monic irreducible of degree
    r (coefficients compared low-degree-first) and zeta is the smallest
    positive primitive root mod p, used for labeling torus eigenvalues.
    """
    if not isinstance(p, int) or not isinstance(r, int):
        raise ValueError("p and r must be integers")
    if p < 3 or not _is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    zeta = None
    for g in range(2, p):
        if all(pow(g, k, p) != 1 for k in range(1, p - 1)):
            zeta = g
            break
    if zeta is None:  # p = 3 gives zeta = 2; every prime has one
        raise RuntimeError(f"no primitive root found mod {p}")
    if r == 1:
        modulus = (0, 1)
    else:
        modulus = None
        for tail in itertools.product(range(p), repeat=r):
            f = list(tail) + [1]
            if _is_irreducible(f, p):
                modulus = tuple(f)
                break
    return FieldCtx(p, r, modulus, zeta)


class FieldCtx:
    """Arithmetic context for GF(p^r); construct via make_field."""

    def __init__(self, p, r, modulus, zeta):
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = tuple(modulus)
        self.zeta = zeta
        if len(self.modulus) != r + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree r")

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        if self.r == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.r})"

    # -- packed-integer scalar arithmetic ---------------------------------

    def pack(self, coeffs):
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.r:
            raise ValueError("too many coefficients")
        coeffs = coeffs + (0,) * (self.r - len(coeffs))
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def unpack(self, v):
        out = []
        for _ in range(self.r):
            v, c = divmod(v, self.p)
            out.append(c)
        return tuple(out)

    @cached_property
    def _reduction(self):
        # coefficient rows of x^(r+s) mod modulus for s = 0 .. r-2
        p, r = self.p, self.r
        top = [(-c) % p for c in self.modulus[:r]]
        rows = [list(top)]
        cur = list(top)
        for _ in range(r - 2):
            carry = cur[-1]
            cur = [0] + cur[:-1]
            if carry:
                cur = [(a + carry * t) % p for a, t in zip(cur, top)]
            rows.append(list(cur))
        return rows

    def padd(self, a, b):
        if self.r == 1:
            return (a + b) % self.p
        ca, cb = self.unpack(a), self.unpack(b)
        return self.pack([(x + y) % self.p for x, y in zip(ca, cb)])

    def pneg(self, a):
        if self.r == 1:
            return (-a) % self.p
        return self.pack([(-x) % self.p for x in self.unpack(a)])

    def psub(self, a, b):
        return self.padd(a, self.pneg(b))

    def pmul(self, a, b):
        p, r = self.p, self.r
        if r == 1:
            return a * b % p
        ca, cb = self.unpack(a), self.unpack(b)
        conv = [0] * (2 * r - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    conv[i + j] = (conv[i + j] + x * y) % p
        out = conv[:r]
        for s, row in enumerate(self._reduction):
            c = conv[r + s] if r + s < len(conv) else 0
            if c:
                out = [(a0 + c * b0) % p for a0, b0 in zip(out, row)]
        return self.pack(out)

    def ppow(self, a, n):
        if n < 0:
            return self.ppow(self.pinv(a), -n)
        result, base = self.pack([1]), a
        while n:
            if n & 1:
                result = self.pmul(result, base)
            base = self.pmul(base, base)
            n >>= 1
        return result

    def pinv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        return self.ppow(a, self.q - 2)

    @cached_property
    def tables(self):
        """(ADD, MUL, NEG) lookup arrays over packed values; r > 1 matrix ops."""
        q = self.q
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        neg = np.zeros(q, dtype=np.int64)
        for a in range(q):
            neg[a] = self.pneg(a)
            for b in range(a, q):
                s, m = self.padd(a, b), self.pmul(a, b)
                add[a, b] = add[b, a] = s
                mul[a, b] = mul[b, a] = m
        return add, mul, neg

    @cached_property
    def _dlog(self):
        # discrete log base zeta on the prime field's nonzero residues
        table, v = {}, 1
        for e in range(self.p - 1):
            table[v] = e
            v = v * self.zeta % self.p
        return table

    def dlog(self, a):
        """Exponent e with zeta^e = a mod p (prime-field residues only)."""
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("dlog of zero")
        return self._dlog[a]

    # -- element construction ----------------------------------------------

    def element(self, value):
        """Wrap an element: an int is the constant residue, a sequence is
        a coefficient vector in the power basis (low degree first)."""
        if isinstance(value, FqElem):
            if value.ctx != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            return FqElem(self, int(value) % self.p)
        return FqElem(self, self.pack(value))

    def from_packed(self, v):
        v = int(v)
        if not 0 <= v < self.q:
            raise ValueError("packed value out of range")
        return FqElem(self, v)

    @property
    def zero(self):
        return FqElem(self, 0)

    @property
    def one(self):
        return FqElem(self, self.pack([1]))

    def elements(self):
        """All q field elements."""
        return [FqElem(self, v) for v in range(self.q)]

    def random_element(self, rng):
        return FqElem(self, rng.randrange(self.q))


class FqElem:
    """A single field element: a residue coefficient vector over GF(p)."""

    __slots__ = ("ctx", "val")

    def __init__(self, ctx, val):
        self.ctx = ctx
        self.val = val

    @property
    def coeffs(self):
        return self.ctx.unpack(self.val)

    def is_zero(self):
        return self.val == 0

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.ctx != self.ctx:
                raise ValueError("mixed fields")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ctx.element(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.padd(self.val, other.val))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.ctx, self.ctx.pneg(self.val))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.psub(self.val, other.val))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.pmul(self.val, other.val))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.pmul(self.val, self.ctx.pinv(other.val)))

    def __pow__(self, n):
        return FqElem(self.ctx, self.ctx.ppow(self.val, n))

    def inverse(self):
        return FqElem(self.ctx, self.ctx.pinv(self.val))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.val == other.val

    def __hash__(self):
        return hash((self.ctx, self.val))

    def __repr__(self):
        if self.ctx.r == 1:
            return str(self.val)
        return repr(self.coeffs)


def inv(ctx, e):
    """Multiplicative inverse; ZeroDivisionError on zero."""
    e = ctx.element(e)
    return e.inverse()


# ---------------------------------------------------------------------------
# prime-field array kernels (residues mod p in int64 numpy arrays)


def _as_array(a, p):
    A = np.array(a, dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError("expected a 2-d array")
    return A


def rref_array(A, p):
    """Reduced row echelon form mod p; returns (R, pivot columns)."""
    A = _as_array(A, p)
    rows, cols = A.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        a = int(A[r, c])
        if a != 1:
            A[r] = A[r] * pow(a, p - 2, p) % p
        colv = A[:, c].copy()
        colv[r] = 0
        nzr = np.flatnonzero(colv)
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(colv[nzr], A[r])) % p
        piv.append(c)
        r += 1
    return A, piv


def rank_array(A, p):
    return len(rref_array(A, p)[1])


def kernel_array(A, p):
    """Columns spanning the right null space {x : A x = 0} mod p."""
    A = _as_array(A, p)
    R, piv = rref_array(A, p)
    cols = A.shape[1]
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    K = np.zeros((cols, len(free)), dtype=np.int64)
    for idx, f in enumerate(free):
        K[f, idx] = 1
        for rr, c in enumerate(piv):
            K[c, idx] = (-int(R[rr, f])) % p
    return K


def inv_array(A, p):
    A = _as_array(A, p)
    n, m = A.shape
    if n != m:
        raise ValueError("matrix must be square")
    aug = np.hstack([A, np.eye(n, dtype=np.int64)])
    R, piv = rref_array(aug, p)
    if piv != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]


def matpow_array(A, k, p):
    A = _as_array(A, p)
    n, m = A.shape
    if n != m:
        raise ValueError("matrix must be square")
    if k < 0:
        raise ValueError("negative powers not supported here")
    result = np.eye(n, dtype=np.int64)
    base = A
    while k:
        if k & 1:
            result = result @ base % p
        base = base @ base % p
        k >>= 1
    return result


# ---------------------------------------------------------------------------
# generic matrices over GF(p^r)


class FqMatrix:
    """Dense immutable matrix of GF(p^r) elements (stored packed)."""

    __slots__ = ("ctx", "data")
    __hash__ = None

    def __init__(self, ctx, data):
        self.ctx = ctx
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix data must be 2-d")
        if arr.size and (arr.min() < 0 or arr.max() >= ctx.q):
            raise ValueError("entries must be packed values in [0, q)")
        arr.flags.writeable = False
        self.data = arr

    @classmethod
    def zeros(cls, ctx, rows, cols):
        return cls(ctx, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, ctx, n):
        m = np.zeros((n, n), dtype=np.int64)
        np.fill_diagonal(m, ctx.pack([1]))
        return cls(ctx, m)

    @classmethod
    def from_elems(cls, ctx, rows):
        data = [[ctx.element(e).val for e in row] for row in rows]
        return cls(ctx, data)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __getitem__(self, key):
        i, j = key
        return FqElem(self.ctx, int(self.data[i, j]))

    def __eq__(self, other):
        if not isinstance(other, FqMatrix):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def tolist(self):
        """Nested list of packed values (residues when r = 1)."""
        return self.data.tolist()

    def to_coeff_lists(self):
        """Nested list of coefficient vectors; for presenting r > 1 output."""
        return [[list(self.ctx.unpack(int(v))) for v in row] for row in self.data]

    @property
    def T(self):
        return FqMatrix(self.ctx, self.data.T.copy())

    def _binop_check(self, other):
        if not isinstance(other, FqMatrix) or other.ctx != self.ctx:
            raise ValueError("operands must be matrices over the same field")

    def __add__(self, other):
        self._binop_check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        ctx = self.ctx
        if ctx.r == 1:
            return FqMatrix(ctx, (self.data + other.data) % ctx.p)
        add, _, _ = ctx.tables
        return FqMatrix(ctx, add[self.data, other.data])

    def __sub__(self, other):
        self._binop_check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        ctx = self.ctx
        if ctx.r == 1:
            return FqMatrix(ctx, (self.data - other.data) % ctx.p)
        add, _, neg = ctx.tables
        return FqMatrix(ctx, add[self.data, neg[other.data]])

    def __matmul__(self, other):
        self._binop_check(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        ctx = self.ctx
        if ctx.r == 1:
            return FqMatrix(ctx, self.data @ other.data % ctx.p)
        add, mul, _ = ctx.tables
        out = np.zeros((self.rows, other.cols), dtype=np.int64)
        for k in range(self.cols):
            term = mul[self.data[:, k][:, None], other.data[k][None, :]]
            out = add[out, term]
        return FqMatrix(ctx, out)

    def __pow__(self, k):
        if self.rows != self.cols:
            raise ValueError("matrix must be square")
        if k < 0:
            return self.inv() ** (-k)
        result = FqMatrix.identity(self.ctx, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def scale(self, c):
        """Multiply every entry by the scalar c."""
        c = self.ctx.element(c)
        ctx = self.ctx
        if ctx.r == 1:
            return FqMatrix(ctx, self.data * c.val % ctx.p)
        _, mul, _ = ctx.tables
        return FqMatrix(ctx, mul[c.val, self.data])

    def inv(self):
        ctx = self.ctx
        if self.rows != self.cols:
            raise ValueError("matrix must be square")
        if ctx.r == 1:
            return FqMatrix(ctx, inv_array(self.data, ctx.p))
        n = self.rows
        eye = FqMatrix.identity(ctx, n)
        aug = np.hstack([self.data, eye.data])
        R, piv = _rref_table(ctx, aug)
        if piv != list(range(n)):
            raise ValueError("matrix is singular")
        return FqMatrix(ctx, R[:, n:])


def _rref_table(ctx, A):
    # row reduction over GF(p^r) via lookup tables on packed values
    A = np.array(A, dtype=np.int64)
    add, mul, neg = ctx.tables
    rows, cols = A.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        a = int(A[r, c])
        if a != ctx.pack([1]):
            A[r] = mul[ctx.pinv(a), A[r]]
        colv = A[:, c].copy()
        colv[r] = 0
        nzr = np.flatnonzero(colv)
        if nzr.size:
            update = mul[neg[colv[nzr]][:, None], A[r][None, :]]
            A[nzr] = add[A[nzr], update]
        piv.append(c)
        r += 1
    return A, piv


def rref(m):
    """Reduced row echelon form; returns (FqMatrix, pivot column list)."""
    ctx = m.ctx
    if ctx.r == 1:
        R, piv = rref_array(m.data, ctx.p)
    else:
        R, piv = _rref_table(ctx, m.data)
    return FqMatrix(ctx, R), piv


def rank(m):
    return len(rref(m)[1])


def kernel_basis(m):
    """FqMatrix whose columns span the right null space of m."""
    ctx = m.ctx
    if ctx.r == 1:
        return FqMatrix(ctx, kernel_array(m.data, ctx.p))
    R, piv = _rref_table(ctx, m.data)
    cols = m.cols
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    K = np.zeros((cols, len(free)), dtype=np.int64)
    for idx, f in enumerate(free):
        K[f, idx] = ctx.pack([1])
        for rr, c in enumerate(piv):
            K[c, idx] = ctx.pneg(int(R[rr, f]))
    return FqMatrix(ctx, K)


def rank_of_power(m, k):
    """rank(m^k) for square m; k = 0 gives the full dimension."""
    if m.rows != m.cols:
        raise ValueError("rank_of_power needs a square matrix")
    if k < 0:
        raise ValueError("power must be non-negative")
    return rank(m**k)
