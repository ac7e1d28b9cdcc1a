"""Holomorphic m-fold polydifferentials on the curve x*y^q - x^q*y = z^(q+1).

The affine model y^q*x - y*x^q = 1 (z = 1 chart) carries a right action of
SL2(F_q) on the coordinates, and the space of globally holomorphic
m-differentials has the explicit monomial spanning family

    w(i, j) = x^i y^j / x^(mq) dx^m,   i, j >= 0,  i + j <= m(q - 2).

A distinguished subfamily is linearly independent of the right cardinality;
every other holomorphic w(i, j) collapses onto it through the single curve
relation x*y^q = x^q*y + 1.  All coordinates live in GF(p) regardless of r,
while action matrices have entries in GF(q).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .ff import FqMatrix

__all__ = [
    "PolyDiffIndex",
    "BasisSet",
    "GradedBasis",
    "GroupElement",
    "genus",
    "dim_h0",
    "enumerate_basis",
    "degree",
    "reduce_to_basis",
    "action_matrix",
    "graded_basis",
]


def _prime_power(q):
    if not isinstance(q, int) or q < 3:
        raise ValueError(f"q must be an odd prime power >= 3, got {q}")
    p = 2
    while q % p:
        p += 1
    r = 0
    n = q
    while n % p == 0:
        n //= p
        r += 1
    if n != 1 or p == 2:
        raise ValueError(f"q must be an odd prime power, got {q}")
    return p, r


def genus(q):
    """Genus q(q-1)/2 of the smooth projective model."""
    _prime_power(q)
    return q * (q - 1) // 2


def dim_h0(q, m):
    """Dimension of the space of holomorphic m-differentials."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    g = genus(q)
    return g if m == 1 else (2 * m - 1) * (g - 1)


class PolyDiffIndex(NamedTuple):
    """Exponent pair (i, j) of the monomial differential w(i, j)."""

    i: int
    j: int


class BasisSet:
    """The distinguished monomial basis for fixed (q, m), in canonical order.

    Measured by degree = (i + j) mod (q + 1), indices are sorted ascending by
    (degree, j, i); ties cannot occur.  Membership:

        0 <= j <= q - 1 and 0 <= i + j <= m(q - 2),   or
        i = 0 and q <= j <= m(q - 2)   (empty when m = 1).
    """

    def __init__(self, q, m):
        p, r = _prime_power(q)
        if not isinstance(m, int) or m < 1:
            raise ValueError(f"m must be a positive integer, got {m}")
        self.q = q
        self.m = m
        self.p = p
        self.r = r
        self.max_total = m * (q - 2)
        indices = []
        for j in range(min(q - 1, self.max_total) + 1):
            for i in range(self.max_total - j + 1):
                indices.append(PolyDiffIndex(i, j))
        for j in range(q, self.max_total + 1):
            indices.append(PolyDiffIndex(0, j))
        indices.sort(key=lambda ix: (degree(ix, q), ix.j, ix.i))
        self.indices = tuple(indices)
        self.position = {ix: k for k, ix in enumerate(indices)}
        if len(self.indices) != dim_h0(q, m):
            raise RuntimeError("basis enumeration disagrees with the dimension formula")

    def contains(self, i, j):
        return PolyDiffIndex(i, j) in self.position

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __repr__(self):
        return f"BasisSet(q={self.q}, m={self.m}, dim={len(self)})"


def enumerate_basis(q, m):
    """Construct the canonical BasisSet for (q, m)."""
    return BasisSet(q, m)


def degree(idx, q):
    """Grading degree (i + j) mod (q + 1); constant on G-orbits."""
    i, j = idx
    return (i + j) % (q + 1)


def _check_holomorphic(i, j, basis):
    if i < 0 or j < 0 or i + j > basis.max_total:
        raise ValueError(
            f"w({i},{j}) is not holomorphic for q={basis.q}, m={basis.m}: "
            f"need i, j >= 0 and i + j <= {basis.max_total}"
        )


def _reduce(i, j, basis, memo):
    key = (i, j)
    cached = memo.get(key)
    if cached is not None:
        return cached
    pos = basis.position.get(PolyDiffIndex(i, j))
    if pos is not None:
        vec = np.zeros(len(basis), dtype=np.int64)
        vec[pos] = 1
    else:
        # outside the basis but holomorphic forces j >= q and i >= 1, so the
        # curve relation x*y^q = x^q*y + 1 applies
        q = basis.q
        vec = (_reduce(i - 1 + q, j - q + 1, basis, memo)
               + _reduce(i - 1, j - q, basis, memo)) % basis.p
    memo[key] = vec
    return vec


def reduce_to_basis(i, j, basis):
    """Coordinates of holomorphic w(i, j) in the basis, over GF(p)."""
    _check_holomorphic(i, j, basis)
    return _reduce(i, j, basis, {})


class GroupElement:
    """An element [[alpha, beta], [gamma, delta]] of SL2(F_q)."""

    __slots__ = ("ctx", "alpha", "beta", "gamma", "delta")

    def __init__(self, alpha, beta, gamma, delta):
        ctx = alpha.ctx
        for e in (beta, gamma, delta):
            if e.ctx != ctx:
                raise ValueError("entries must share one field context")
        det = alpha * delta - beta * gamma
        if det != ctx.one:
            raise ValueError(f"determinant must be 1, got {det!r}")
        self.ctx = ctx
        self.alpha, self.beta, self.gamma, self.delta = alpha, beta, gamma, delta

    @classmethod
    def from_values(cls, ctx, a, b, c, d):
        return cls(ctx.element(a), ctx.element(b), ctx.element(c), ctx.element(d))

    @classmethod
    def identity(cls, ctx):
        return cls.from_values(ctx, 1, 0, 0, 1)

    def __mul__(self, other):
        if not isinstance(other, GroupElement) or other.ctx != self.ctx:
            raise ValueError("mixed group elements")
        a, b, c, d = self.alpha, self.beta, self.gamma, self.delta
        e, f, g, h = other.alpha, other.beta, other.gamma, other.delta
        return GroupElement(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self):
        return GroupElement(self.delta, -self.beta, -self.gamma, self.alpha)

    def entries(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.ctx == other.ctx and all(
            x == y for x, y in zip(self.entries(), other.entries())
        )

    def __hash__(self):
        return hash((self.ctx,) + tuple(e.val for e in self.entries()))

    def __repr__(self):
        a, b, c, d = self.entries()
        return f"[[{a!r}, {b!r}], [{c!r}, {d!r}]]"


def action_matrix(sigma, basis):
    """Matrix of the right action of sigma on the basis (rows are images).

    Row k holds the basis coordinates of w_k . sigma, so composites satisfy
    M(sigma*tau) = M(sigma) @ M(tau).
    """
    ctx = sigma.ctx
    if (ctx.p, ctx.r) != (basis.p, basis.r):
        raise ValueError(
            f"group element over GF({ctx.q}) does not match basis over GF({basis.q})"
        )
    p = ctx.p
    n = len(basis)
    a, b = sigma.alpha.val, sigma.beta.val
    c, d = sigma.gamma.val, sigma.delta.val
    top = basis.max_total
    pow_a = [ctx.pack([1])]
    pow_b = [ctx.pack([1])]
    pow_c = [ctx.pack([1])]
    pow_d = [ctx.pack([1])]
    for _ in range(top):
        pow_a.append(ctx.pmul(pow_a[-1], a))
        pow_b.append(ctx.pmul(pow_b[-1], b))
        pow_c.append(ctx.pmul(pow_c[-1], c))
        pow_d.append(ctx.pmul(pow_d[-1], d))
    if ctx.r > 1:
        add_t, mul_t, _ = ctx.tables
    out = np.zeros((n, n), dtype=np.int64)
    memo = {}
    for row, (i, j) in enumerate(basis.indices):
        # (a x + b y)^i (c x + d y)^j expanded monomial by monomial
        acc = {}
        for s in range(i + 1):
            ca = math.comb(i, s) % p
            if ca == 0:
                continue
            left = ctx.pmul(pow_a[s], pow_b[i - s])
            if left == 0:
                continue
            for t in range(j + 1):
                cb = math.comb(j, t) % p
                if cb == 0:
                    continue
                val = ctx.pmul(left, ctx.pmul(pow_c[t], pow_d[j - t]))
                val = ctx.pmul(val, ca * cb % p)
                if val == 0:
                    continue
                key = (s + t, i + j - s - t)
                prev = acc.get(key)
                acc[key] = val if prev is None else ctx.padd(prev, val)
        rowvec = np.zeros(n, dtype=np.int64)
        for (i2, j2), coeff in acc.items():
            if coeff == 0:
                continue
            red = _reduce(i2, j2, basis, memo)
            if ctx.r == 1:
                rowvec = (rowvec + coeff * red) % p
            else:
                # reduction coordinates are prime-subfield constants, whose
                # packed form is the residue itself
                rowvec = add_t[rowvec, mul_t[coeff, red]]
        out[row] = rowvec
    return FqMatrix(ctx, out)


class GradedBasis:
    """Basis indices split into the q + 1 degree blocks (some may be empty)."""

    def __init__(self, basis):
        self.q = basis.q
        self.m = basis.m
        blocks = [[] for _ in range(basis.q + 1)]
        for ix in basis.indices:
            blocks[degree(ix, basis.q)].append(ix)
        self.blocks = tuple(tuple(b) for b in blocks)

    def sizes(self):
        return [len(b) for b in self.blocks]

    def __repr__(self):
        return f"GradedBasis(q={self.q}, m={self.m}, sizes={self.sizes()})"


def graded_basis(basis):
    """Split a BasisSet by grading degree; blocks are contiguous in the
    canonical ordering, so action matrices are block diagonal."""
    return GradedBasis(basis)
