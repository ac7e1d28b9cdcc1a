"""Brute-force modular representation oracle over the prime field.

Every table closedform produces is re-derived here from explicit generator
matrices, with no shared formulas: restrictions to the Borel subgroup are
split by Jordan and eigenvalue analysis, composition factors over the full
group come from an iterated socle computation, induction is realized through
an explicit coset transversal, and the Cartan system ties the correspondent
factor tables back to oracle counts.  All arithmetic is exact (int64 mod p,
Fractions for the Cartan solve).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import closedform
from .closedform import BLabel, InconsistencyError
from .curve import BasisSet, GroupElement, action_matrix, dim_h0
from .ff import (
    FqMatrix,
    inv_array,
    kernel_array,
    make_field,
    matpow_array,
    rank_array,
    rref_array,
)

__all__ = [
    "GuardError",
    "ModuleRep",
    "CompFactorVector",
    "CartanCertificate",
    "CheckResult",
    "VerifyReport",
    "u_gen",
    "t_gen",
    "w_gen",
    "enumerate_group",
    "h0_module",
    "simple_module",
    "uab_module",
    "restrict_to_b",
    "direct_sum",
    "decompose_b_oracle",
    "hom_dim",
    "comp_factors_oracle",
    "default_transversal",
    "induce_to_g",
    "cartan_check",
    "verify_full",
]

ENUM_GROUP_GUARD = 13
COMP_FACTOR_GUARD = 400


class GuardError(RuntimeError):
    """A desk-scale size guard was exceeded; pass force=True to override."""


def u_gen(ctx):
    return GroupElement.from_values(ctx, 1, 1, 0, 1)


def t_gen(ctx):
    z = ctx.element(ctx.zeta)
    return GroupElement(z, ctx.zero, ctx.zero, z.inverse())


def w_gen(ctx):
    return GroupElement.from_values(ctx, 0, 1, -1, 0)


@dataclass
class ModuleRep:
    """A module given by generator matrices in row convention: vectors are
    coordinate rows and v.rho(g).rho(h) realizes v.(gh)."""

    field: object  # FieldCtx with r = 1
    dim: int
    gens: dict  # name in {"u","t","w"} -> FqMatrix

    @property
    def group(self):
        return "G" if "w" in self.gens else "B"

    def arrays(self):
        return {name: mat.data for name, mat in self.gens.items()}

    def validate(self):
        ctx = self.field
        if ctx.r != 1:
            raise ValueError("oracle modules live over the prime field (r = 1)")
        names = set(self.gens)
        if not ({"u", "t"} <= names <= {"u", "t", "w"}):
            raise ValueError(f"generator names must be u,t[,w], got {sorted(names)}")
        p = ctx.p
        n = self.dim
        eye = np.eye(n, dtype=np.int64)
        arr = self.arrays()
        for name, mat in self.gens.items():
            if mat.ctx != ctx or mat.shape != (n, n):
                raise ValueError(f"generator {name} has wrong field or shape")
            if rank_array(arr[name], p) != n:
                raise ValueError(f"generator {name} is singular")
        if not np.array_equal(matpow_array(arr["u"], p, p), eye):
            raise ValueError("rho(u)^p != I")
        if not np.array_equal(matpow_array(arr["t"], p - 1, p), eye):
            raise ValueError("rho(t)^(p-1) != I")
        tinv = inv_array(arr["t"], p)
        lhs = (arr["t"] @ arr["u"] % p) @ tinv % p
        rhs = matpow_array(arr["u"], pow(ctx.zeta, 2, p), p)
        if not np.array_equal(lhs, rhs):
            raise ValueError("rho(t) rho(u) rho(t)^-1 != rho(u)^(zeta^2)")
        if "w" in arr:
            if not np.array_equal(
                arr["w"] @ arr["w"] % p, matpow_array(arr["t"], (p - 1) // 2, p)
            ):
                raise ValueError("rho(w)^2 != rho(t)^((p-1)/2)")
            winv = inv_array(arr["w"], p)
            lhs = (arr["w"] @ arr["t"] % p) @ winv % p
            if not np.array_equal(lhs, matpow_array(arr["t"], p - 2, p)):
                raise ValueError("rho(w) rho(t) rho(w)^-1 != rho(t)^-1")
        return self


@dataclass(frozen=True)
class CompFactorVector:
    """Multiplicities of the simples V_1..V_p as composition factors."""

    p: int
    mult: dict  # t -> multiplicity >= 0, all t in [1, p] present

    def as_tuple(self):
        return tuple(self.mult[t] for t in range(1, self.p + 1))

    def total_dim(self):
        return sum(t * n for t, n in self.mult.items())

    def validate(self, dim):
        if set(self.mult) != set(range(1, self.p + 1)):
            raise InconsistencyError("factor vector must cover t = 1..p")
        if any(n < 0 for n in self.mult.values()):
            raise InconsistencyError("negative factor multiplicity")
        if self.total_dim() != dim:
            raise InconsistencyError(
                f"factor dimensions sum to {self.total_dim()}, expected {dim}"
            )
        return self


def enumerate_group(p, force=False):
    """All of SL2(F_p), count p(p^2 - 1); guarded to desk scale."""
    if p > ENUM_GROUP_GUARD and not force:
        raise GuardError(
            f"enumerate_group is sized for p <= {ENUM_GROUP_GUARD}; "
            "pass force=True to override"
        )
    ctx = make_field(p)
    els = [ctx.element(v) for v in range(p)]
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                if a:
                    d = (1 + b * c) * pow(a, p - 2, p) % p
                    out.append(GroupElement(els[a], els[b], els[c], els[d]))
                elif b * c % p == p - 1:
                    for d in range(p):
                        out.append(GroupElement(els[a], els[b], els[c], els[d]))
    if len(out) != p * (p * p - 1):
        raise InconsistencyError("group enumeration miscounted")
    return out


def h0_module(p, m):
    """The space of holomorphic m-differentials as an explicit G-module."""
    ctx = make_field(p)
    basis = BasisSet(p, m)
    gens = {
        name: action_matrix(g, basis)
        for name, g in (("u", u_gen(ctx)), ("t", t_gen(ctx)), ("w", w_gen(ctx)))
    }
    return ModuleRep(ctx, len(basis), gens).validate()


def _linear_power_rows(sigma, n, p):
    """Coefficient rows of (alpha x + beta y)^i (gamma x + delta y)^j for a
    degree-(n-1) monomial basis x^(n-1-k) y^k, k = 0..n-1."""
    a, b = int(sigma.alpha.val), int(sigma.beta.val)
    c, d = int(sigma.gamma.val), int(sigma.delta.val)

    def binexp(x0, x1, e):
        return np.array(
            [math.comb(e, s) * pow(x0, e - s, p) * pow(x1, s, p) % p for s in range(e + 1)],
            dtype=np.int64,
        )

    rows = np.zeros((n, n), dtype=np.int64)
    for k in range(n):
        row = np.convolve(binexp(a, b, n - 1 - k), binexp(c, d, k)) % p
        rows[k] = row
    return rows


def simple_module(t, p):
    """The simple V_t: homogeneous degree t-1 polynomials, basis
    x^(t-1-k) y^k for k = 0..t-1."""
    ctx = make_field(p)
    if not 1 <= t <= p:
        raise ValueError(f"t must lie in [1, {p}], got {t}")
    gens = {
        name: FqMatrix(ctx, _linear_power_rows(g, t, p))
        for name, g in (("u", u_gen(ctx)), ("t", t_gen(ctx)), ("w", w_gen(ctx)))
    }
    return ModuleRep(ctx, t, gens).validate()


def uab_module(a, b, p):
    """The uniserial B-module U_{a,b}: basis e_k = (u-1)^k inside
    F[U]/rad^b, so rho(u) is a single Jordan block.  The torus acts through
    the algebra substitution u -> u^(zeta^-2) (the row-convention form of
    conjugation), scaled so the socle span(e_{b-1}) carries eigenvalue
    zeta^a and the top carries zeta^(a + 2(b-1))."""
    ctx = make_field(p)
    if not 0 <= a <= p - 2:
        raise ValueError(f"a must lie in [0, {p - 2}], got {a}")
    if not 1 <= b <= p:
        raise ValueError(f"b must lie in [1, {p}], got {b}")
    U = np.eye(b, dtype=np.int64)
    for k in range(b - 1):
        U[k, k + 1] = 1
    c = pow(ctx.zeta, p - 3, p)  # zeta^-2 as a residue exponent
    base = np.zeros(b, dtype=np.int64)  # coordinates of u^c - 1
    for l in range(1, b):
        base[l] = math.comb(c, l) % p
    T = np.zeros((b, b), dtype=np.int64)
    cur = np.zeros(b, dtype=np.int64)
    cur[0] = 1
    for k in range(b):
        T[k] = cur
        cur = np.convolve(cur, base)[:b] % p
    twist = pow(ctx.zeta, (a + 2 * (b - 1)) % (p - 1), p)
    T = T * twist % p
    gens = {"u": FqMatrix(ctx, U), "t": FqMatrix(ctx, T)}
    return ModuleRep(ctx, b, gens).validate()


def restrict_to_b(mod):
    """Forget the w generator."""
    if not {"u", "t"} <= set(mod.gens):
        raise ValueError("module must carry u and t generators")
    return ModuleRep(mod.field, mod.dim, {"u": mod.gens["u"], "t": mod.gens["t"]})


def direct_sum(m1, m2):
    """Block-diagonal direct sum; generator sets must agree."""
    if m1.field != m2.field or set(m1.gens) != set(m2.gens):
        raise ValueError("direct summands must share field and generator set")
    p = m1.field.p
    n1, n2 = m1.dim, m2.dim
    gens = {}
    for name, mat in m1.gens.items():
        big = np.zeros((n1 + n2, n1 + n2), dtype=np.int64)
        big[:n1, :n1] = mat.data
        big[n1:, n1:] = m2.gens[name].data
        gens[name] = FqMatrix(m1.field, big % p)
    return ModuleRep(m1.field, n1 + n2, gens)


def _row_space(A, p):
    """Nonzero rows of the rref, with their pivot columns."""
    R, piv = rref_array(A, p)
    return R[: len(piv)], piv


def _left_kernel_within(rows, N, p):
    """Basis rows of {v in rowspace(rows) : v N = 0}."""
    if rows.shape[0] == 0:
        return rows
    C = rows @ N % p
    K = kernel_array(C.T, p)  # columns alpha with alpha . C = 0
    return K.T @ rows % p


def _is_row_stable(rows, mat, p):
    if rows.shape[0] == 0:
        return True
    stacked = np.vstack([rows, rows @ mat % p])
    return rank_array(stacked, p) == rows.shape[0]


def decompose_b_oracle(mod):
    """Split a B-module into uniserial summands U_{a,b} by pure matrix work.

    With N = rho(u) - I, the number of Jordan blocks of size >= b is
    rank(N^(b-1)) - rank(N^b).  The socles of those blocks form the
    t-stable space ker(N) /\\ im(N^(b-1)); diagonalizing rho(t) there and
    subtracting what larger blocks already contributed isolates each
    multiplicity n_{a,b}.  Returns {BLabel(a, b): n}.
    """
    if mod.group != "B":
        raise ValueError("decompose_b_oracle expects a B-module (no w generator)")
    ctx = mod.field
    p, n = ctx.p, mod.dim
    arr = mod.arrays()
    eye = np.eye(n, dtype=np.int64)
    if not np.array_equal(matpow_array(arr["u"], p, p), eye):
        raise ValueError("rho(u) is not unipotent of order dividing p")
    N = (arr["u"] - eye) % p
    npow = [eye]
    for _ in range(p):
        npow.append(npow[-1] @ N % p)
    ranks = [rank_array(A, p) for A in npow]
    blocks_ge = [ranks[b - 1] - ranks[b] for b in range(1, p + 1)] + [0]
    if any(blocks_ge[i] < blocks_ge[i + 1] for i in range(p)):
        raise InconsistencyError("Jordan block counts are not monotone")
    if sum(b * (blocks_ge[b - 1] - blocks_ge[b]) for b in range(1, p + 1)) != n:
        raise InconsistencyError("Jordan block sizes do not sum to the dimension")
    for s in range(1, p):
        ker = kernel_array(npow[s].T, p).T  # rows v with v N^s = 0
        if not _is_row_stable(ker, arr["t"], p):
            raise InconsistencyError(f"rho(t) does not stabilize ker(N^{s})")
    out = {}
    prev = {a: 0 for a in range(p - 1)}
    for b in range(p, 0, -1):
        rows, _ = _row_space(npow[b - 1], p)
        socle = _left_kernel_within(rows, N, p)
        socle, spiv = _row_space(socle, p)
        d = socle.shape[0]
        if d != blocks_ge[b - 1]:
            raise InconsistencyError(
                f"socle slice at b={b} has dim {d}, expected {blocks_ge[b - 1]}"
            )
        st = socle @ arr["t"] % p
        if rank_array(np.vstack([socle, st]), p) != d:
            raise InconsistencyError(f"rho(t) does not stabilize the b={b} socle slice")
        tb = st[:, spiv]
        cur = {}
        total = 0
        for a in range(p - 1):
            lam = pow(ctx.zeta, a, p)
            ka = d - rank_array((tb - lam * np.eye(d, dtype=np.int64)) % p, p)
            cur[a] = ka
            total += ka
            n_ab = ka - prev[a]
            if n_ab < 0:
                raise InconsistencyError(f"negative multiplicity at (a={a}, b={b})")
            if n_ab:
                out[BLabel(a, b)] = n_ab
        if total != d:
            raise InconsistencyError(f"rho(t) not diagonalizable on the b={b} slice")
        prev = cur
    if sum(lab.b * k for lab, k in out.items()) != n:
        raise InconsistencyError("recovered summands do not fill the module")
    return out


def _hom_basis(src, dst):
    """Basis of intertwiners X (dim src x dim dst, row convention) with
    rho_src(g) X = X rho_dst(g) for every shared generator."""
    if src.field != dst.field:
        raise ValueError("modules live over different fields")
    if set(src.gens) != set(dst.gens):
        raise ValueError("generator sets differ; restrict first")
    p = src.field.p
    s, m = src.dim, dst.dim
    eye_s = np.eye(s, dtype=np.int64)
    eye_m = np.eye(m, dtype=np.int64)
    blocks = []
    for name in sorted(src.gens):
        A = src.gens[name].data
        B = dst.gens[name].data
        blocks.append((np.kron(A, eye_m) - np.kron(eye_s, B.T)) % p)
    K = kernel_array(np.vstack(blocks), p)
    return [K[:, i].reshape(s, m) for i in range(K.shape[1])]


def hom_dim(src, dst):
    """Dimension of the space of module maps src -> dst."""
    return len(_hom_basis(src, dst))


def comp_factors_oracle(mod, force=False):
    """Composition factors of a G-module by iterated socle computation."""
    if mod.group != "G":
        raise ValueError("comp_factors_oracle expects a G-module")
    if mod.dim > COMP_FACTOR_GUARD and not force:
        raise GuardError(
            f"comp_factors_oracle is sized for dim <= {COMP_FACTOR_GUARD}; "
            "pass force=True to override"
        )
    ctx = mod.field
    p = ctx.p
    simples = {t: simple_module(t, p) for t in range(1, p + 1)}
    mult = Counter()
    cur = mod
    while cur.dim > 0:
        layer = {}
        image_rows = []
        for t in range(1, p + 1):
            homs = _hom_basis(simples[t], cur)
            layer[t] = len(homs)
            image_rows.extend(homs)
        if not any(layer.values()):
            raise RuntimeError("socle computation stalled at positive dimension")
        stacked = np.vstack(image_rows)
        socle, piv = _row_space(stacked, p)
        k = socle.shape[0]
        if k != sum(t * layer[t] for t in layer):
            raise InconsistencyError("socle dimension disagrees with hom counts")
        mult.update(layer)
        if k == cur.dim:
            break
        pivset = set(piv)
        free = [c for c in range(cur.dim) if c not in pivset]
        basis = np.zeros((cur.dim, cur.dim), dtype=np.int64)
        basis[:k] = socle
        for idx, c in enumerate(free):
            basis[k + idx, c] = 1
        binv = inv_array(basis, p)
        gens = {}
        for name, mat in cur.gens.items():
            full = (basis @ mat.data % p) @ binv % p
            if np.any(full[:k, k:]):
                raise InconsistencyError("socle is not invariant; basis change failed")
            gens[name] = FqMatrix(ctx, full[k:, k:])
        cur = ModuleRep(ctx, cur.dim - k, gens)
    out = CompFactorVector(p, {t: mult.get(t, 0) for t in range(1, p + 1)})
    return out.validate(mod.dim)


def default_transversal(ctx):
    """Canonical coset representatives of B\\G: the identity (coset of the
    point [0:1]) followed by w u^k for k = 0..p-1 (cosets [1:k])."""
    reps = [GroupElement.identity(ctx)]
    u = u_gen(ctx)
    cur = w_gen(ctx)
    for _ in range(ctx.p):
        reps.append(cur)
        cur = cur * u
    return reps


def _coset_key(g):
    """Right coset Bg is determined by the bottom row up to scalar."""
    if g.gamma.is_zero():
        return (0, 0)
    return (1, (g.delta / g.gamma).val)


def induce_to_g(mod, p=None, transversal=None):
    """Induce a B-module to G with permutation-with-cocycle block matrices.

    Basis vectors are pairs (coset index, module coordinate); for each
    generator g and representative g_i, write g_i g = b g_j with b in B,
    factor b = t^e u^n, and install rho(t)^e rho(u)^n as block (i, j).
    """
    if mod.group != "B":
        raise ValueError("induce_to_g expects a B-module")
    ctx = mod.field
    if p is not None and p != ctx.p:
        raise ValueError(f"module is over GF({ctx.p}), not GF({p})")
    p = ctx.p
    reps = default_transversal(ctx) if transversal is None else list(transversal)
    if len(reps) != p + 1:
        raise ValueError(f"transversal must have {p + 1} representatives")
    keymap = {}
    for j, rep in enumerate(reps):
        key = _coset_key(rep)
        if key in keymap:
            raise ValueError("transversal representatives share a coset")
        keymap[key] = j
    arr = mod.arrays()
    tpow = [np.eye(mod.dim, dtype=np.int64)]
    for _ in range(p - 2):
        tpow.append(tpow[-1] @ arr["t"] % p)
    upow = [np.eye(mod.dim, dtype=np.int64)]
    for _ in range(p - 1):
        upow.append(upow[-1] @ arr["u"] % p)
    dm = mod.dim
    dim = (p + 1) * dm
    gens = {}
    for name, g in (("u", u_gen(ctx)), ("t", t_gen(ctx)), ("w", w_gen(ctx))):
        big = np.zeros((dim, dim), dtype=np.int64)
        for i, rep in enumerate(reps):
            h = rep * g
            j = keymap[_coset_key(h)]
            b = h * reps[j].inverse()
            if not b.gamma.is_zero():
                raise InconsistencyError("coset bookkeeping produced a non-B factor")
            e = ctx.dlog(b.alpha.val)
            nshift = (b.beta / b.alpha).val
            big[i * dm : (i + 1) * dm, j * dm : (j + 1) * dm] = (
                tpow[e] @ upow[nshift] % p
            )
        gens[name] = FqMatrix(ctx, big)
    return ModuleRep(ctx, dim, gens).validate()


def _solve_exact(A, rhs):
    """Solve the square rational system A x = rhs exactly; raises on a
    singular matrix, which would mean the projective factor table is wrong."""
    n = len(rhs)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            raise RuntimeError("singular Cartan system; projective factors mis-encoded")
        M[col], M[pivot] = M[pivot], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [v - f * w for v, w in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


@dataclass(frozen=True)
class CartanCertificate:
    ok: bool
    x: tuple  # multiplicity of each projective cover P_{V_s}, s = 1..p
    residual: tuple


def cartan_check(a, b, p):
    """Verify the factor table of one Green correspondent: oracle factors of
    Ind(U_{a,b}) minus the tabulated c_{a,b,t} must be a unique non-negative
    integer combination of projective-cover factor columns."""
    if not 1 <= b <= p - 1:
        raise ValueError(f"b must lie in [1, {p - 1}], got {b}")
    ell = comp_factors_oracle(induce_to_g(uab_module(a, b, p)))
    residual = [ell.mult[t] - closedform.c_abt(a, b, t, p) for t in range(1, p + 1)]
    cartan = [[0] * p for _ in range(p)]
    for s in range(1, p + 1):
        for t, k in closedform.proj_cover_factors(s, p).items():
            cartan[t - 1][s - 1] = k
    x = _solve_exact(cartan, residual)
    ok = all(v.denominator == 1 and v >= 0 for v in x)
    cert = tuple(int(v) if v.denominator == 1 else v for v in x)
    return CartanCertificate(ok, cert, tuple(residual))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass
class VerifyReport:
    p: int
    m: int
    checks: list

    @property
    def all_passed(self):
        return all(c.passed for c in self.checks)

    def summary(self):
        lines = [f"verify p={self.p} m={self.m}"]
        for c in self.checks:
            lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
        lines.append("result: " + ("all checks passed" if self.all_passed else "FAILED"))
        return "\n".join(lines)


def _first_divergence(got, want):
    keys = sorted(set(got) | set(want), key=str)
    for k in keys:
        if got.get(k, 0) != want.get(k, 0):
            return f"first divergence at {k}: oracle {got.get(k, 0)}, closed form {want.get(k, 0)}"
    return "identical"


def verify_full(p, m, force=False):
    """Run the four oracle-versus-closed-form checks for one (p, m)."""
    checks = []
    mod = h0_module(p, m)

    oracle_b = decompose_b_oracle(restrict_to_b(mod))
    closed_b = dict(closedform.b_decomposition(m, p).mult)
    ok = oracle_b == closed_b
    checks.append(
        CheckResult(
            "B-decomposition",
            ok,
            f"{len(closed_b)} summand labels match" if ok else _first_divergence(oracle_b, closed_b),
        )
    )

    oracle_f = comp_factors_oracle(mod, force=force)
    closed_f = closedform.comp_factors_h0(m, p)
    ok = oracle_f.mult == closed_f
    checks.append(
        CheckResult(
            "composition factors",
            ok,
            f"d = {oracle_f.as_tuple()}" if ok else _first_divergence(oracle_f.mult, closed_f),
        )
    )

    gdec = closedform.g_decomposition(m, p)
    total = gdec.total_dim()
    ok = total == dim_h0(p, m)
    checks.append(
        CheckResult(
            "G-decomposition dimension",
            ok,
            f"{total} == dim H0 = {dim_h0(p, m)}" if ok else f"{total} != {dim_h0(p, m)}",
        )
    )

    implied = gdec.implied_factors()
    ok = implied == oracle_f.mult
    checks.append(
        CheckResult(
            "implied factors",
            ok,
            "claimed direct sum reproduces the oracle factors"
            if ok
            else _first_divergence(implied, oracle_f.mult),
        )
    )
    return VerifyReport(p, m, checks)
