"""Christoffel-Darboux kernel and the two-point matrices ``L`` and ``R``."""

from .errors import EqualArguments, NonNormal, RequiresRankOne, SingularPivot
from .linalg import identity, schur_complement, zeros
from .mop import _basis, block_hankel, dual_spec, rh_blocks, rh_inverse, tables


def _row_basis(mvec, x, field):
    """``q x |m|`` matrix whose column ``(l, j)`` is ``x^j e_l``."""
    cols = _basis(mvec)
    out = zeros((len(mvec), len(cols)), field)
    for b, (l, j) in enumerate(cols):
        out[l, b] = x ** j
    return out


def _col_basis(nvec, y, field):
    """``|n| x p`` matrix whose row ``(k, i)`` is ``y^i e_k``."""
    rows = _basis(nvec)
    out = zeros((len(rows), len(nvec)), field)
    for a, (k, i) in enumerate(rows):
        out[a, k] = y ** i
    return out


def kernel_schur(spec, x, y):
    """``K_n(x, y)`` as the Schur complement of ``-[[H, A(y)], [B(x), 0]]``."""
    f = spec.field
    x, y = f.scalar(x), f.scalar(y)
    p, q = spec.p, spec.q
    H = block_hankel(spec)
    n = H.shape[0]
    big = zeros((n + q, n + p), f)
    big[:n, :n] = -H
    big[:n, n:] = -_col_basis(spec.pair.nvec, y, f)
    big[n:, :n] = -_row_basis(spec.pair.mvec, x, f)
    try:
        return schur_complement(big, n, f)
    except SingularPivot as exc:
        raise NonNormal(f"pair {spec.pair} is not normal", pair=spec.pair) from exc


def kernel_rh(spec, x, y):
    """``K_n(x, y) = [0 I] M(x)^{-1} M(y) [I; 0] / (x - y)``."""
    f = spec.field
    x, y = f.scalar(x), f.scalar(y)
    if x == y:
        raise EqualArguments("kernel_rh needs x != y")
    p = spec.p
    prod = rh_inverse(spec, x) @ rh_blocks(spec).evaluate(y)
    return prod[p:, :p] / (x - y)


def _weight_values(spec, t, side):
    W = spec.weights
    f = spec.field
    ws = W.w2 if side == 2 else W.w1
    return [f.scalar(w(t)) for w in ws]


def kernel_scalar(spec, x, y):
    """``w2(x)^T K_n(x, y) w1(y)`` for a rank-one weight system."""
    if not spec.rank_one:
        raise RequiresRankOne("the scalar kernel needs a rank-one weight system")
    K = kernel_schur(spec, x, y)
    w2 = _weight_values(spec, spec.field.scalar(x), 2)
    w1 = _weight_values(spec, spec.field.scalar(y), 1)
    acc = spec.field.zero
    for l in range(spec.q):
        for k in range(spec.p):
            acc += w2[l] * K[l, k] * w1[k]
    return acc


def matrix_L(spec, y, z, route="sum"):
    """``L_n(y, z) = I - (z - y) sum K_n(y, x) W(x) / (z - x)`` (q x q).

    ``route="rh"`` uses ``[0 I] M(y)^{-1} M(z) [0; I]`` instead; it needs
    ``y`` off the support and is the better-conditioned float route.
    """
    f = spec.field
    y, z = f.scalar(y), f.scalar(z)
    rb = rh_blocks(spec)
    rb._check_off_support(z)
    if route == "rh":
        d = rh_blocks(dual_spec(spec))
        return d.m11(y).T @ rb.m22(z) - d.m21(y).T @ rb.m12(z)
    q = spec.q
    out = identity(q, f)
    if y == z:
        return out
    tab = tables(spec.weights, spec.measure)
    acc = zeros((q, q), f)
    for i, x in enumerate(tab.nodes):
        acc = acc + kernel_schur(spec, y, x) @ tab.E[i] / (z - x)
    return out - (z - y) * acc


def matrix_R(spec, z, y, route="sum"):
    """``R_n(z, y) = I - (z - y) sum W(x) K_n(x, y) / (z - x)`` (p x p)."""
    f = spec.field
    y, z = f.scalar(y), f.scalar(z)
    rb = rh_blocks(spec)
    rb._check_off_support(z)
    if route == "rh":
        d = rh_blocks(dual_spec(spec))
        return d.m22(z).T @ rb.m11(y) - d.m12(z).T @ rb.m21(y)
    p = spec.p
    out = identity(p, f)
    if y == z:
        return out
    tab = tables(spec.weights, spec.measure)
    acc = zeros((p, p), f)
    for i, x in enumerate(tab.nodes):
        acc = acc + tab.E[i] @ kernel_schur(spec, x, y) / (z - x)
    return out - (z - y) * acc
