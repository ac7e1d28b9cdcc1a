"""Shared builders for the test suite.

Expensive oracle artifacts (explicit modules, full verification reports) are
cached per parameter tuple so independent test modules can reuse them.
"""

from functools import lru_cache

from drinfeld import closedform, modrep
from drinfeld.curve import GroupElement
from drinfeld.ff import make_field


@lru_cache(maxsize=None)
def field(p, r=1):
    return make_field(p, r)


@lru_cache(maxsize=None)
def h0(p, m):
    return modrep.h0_module(p, m)


@lru_cache(maxsize=None)
def h0_b_oracle(p, m):
    return modrep.decompose_b_oracle(modrep.restrict_to_b(h0(p, m)))


@lru_cache(maxsize=None)
def h0_factors_oracle(p, m):
    return modrep.comp_factors_oracle(h0(p, m))


@lru_cache(maxsize=None)
def verify_report(p, m):
    return modrep.verify_full(p, m)


@lru_cache(maxsize=None)
def bdec(m, p):
    return closedform.b_decomposition(m, p)


def random_sl2(ctx, rng):
    """A uniformly shaped random element of SL2(F_q)."""
    while True:
        a = ctx.random_element(rng)
        b = ctx.random_element(rng)
        if a.is_zero() and b.is_zero():
            continue
        if not a.is_zero():
            c = ctx.random_element(rng)
            d = (ctx.one + b * c) / a
        else:
            d = ctx.random_element(rng)
            c = -b.inverse()
        return GroupElement(a, b, c, d)
