"""Averages of products and ratios of characteristic polynomials.

All formulas are block determinants assembled from the reduced RH blocks
of the ensemble and of the pairs along its chain of multi-indices.
"""

import itertools
from fractions import Fraction

from .errors import ChainDepthExceeded, IdentityMismatch, NegativeComponent, NonNormal, RequiresRankOne
from .kernels import kernel_schur, matrix_L, matrix_R
from .linalg import det, solve, zeros
from .measures import check_points
from .mop import chain_pair, rh_blocks, tables


def _pts(spec, vals):
    return [spec.field.scalar(v) for v in vals]


def chain_blocks(spec, k, chain=None):
    """RH evaluator for chain pair ``k``; NonNormal names the failing pair."""
    try:
        pair = chain_pair(spec.pair, k, chain)
    except NegativeComponent as exc:
        raise ChainDepthExceeded(str(exc)) from exc
    try:
        return rh_blocks(spec.with_pair(pair))
    except NonNormal as exc:
        raise NonNormal(f"chain pair {k} = {pair} is not normal", pair=pair) from exc


def _vandermonde(pts, sign=1):
    """``prod_{i<j} (pts[j] - pts[i])``, or ``(pts[i] - pts[j])`` for ``sign=-1``."""
    out = Fraction(1)
    for i, j in itertools.combinations(range(len(pts)), 2):
        out *= (pts[j] - pts[i]) if sign > 0 else (pts[i] - pts[j])
    return out


def _cross(ys, zs):
    out = Fraction(1)
    for y in ys:
        for z in zs:
            out *= z - y
    return out


def _assemble(spec, rows, size):
    M = zeros((size, size), spec.field)
    r = 0
    for row in rows:
        c = 0
        for block in row:
            h, w = block.shape
            M[r:r + h, c:c + w] = block
            c += w
        r += h
    return M


def _check_equal(spec, a, b, what):
    if not spec.field.eq(a, b):
        raise IdentityMismatch(f"{what}: {a} != {b}")


def avg_char(spec, y):
    """``E[prod_j (y - x_j)] = det M11(y)``."""
    y = spec.field.scalar(y)
    return det(rh_blocks(spec).m11(y), spec.field)


def char_poly_coeffs(spec):
    """Ascending coefficients of ``det M11(y)`` by exact interpolation at ``0..n``."""
    f = spec.field
    n = spec.n
    pts = [f.scalar(i) for i in range(n + 1)]
    V = zeros((n + 1, n + 1), f)
    vals = zeros((n + 1,), f)
    for i, t in enumerate(pts):
        for j in range(n + 1):
            V[i, j] = t ** j
        vals[i] = avg_char(spec, t)
    return list(solve(V, vals, f))


def avg_inv_char(spec, z):
    """``E[prod_j 1/(z - x_j)] = det M22(z)``."""
    z = spec.field.scalar(z)
    check_points((), (z,), spec.measure)
    return det(rh_blocks(spec).m22(z), spec.field)


def avg_ratio(spec, y, z, check=True):
    """``E[prod_j (y - x_j)/(z - x_j)] = det L(y, z) = det R(z, y)``."""
    y, z = _pts(spec, (y, z))
    check_points((y,), (z,), spec.measure) if y != z else check_points((), (z,), spec.measure)
    val = det(matrix_L(spec, y, z), spec.field)
    if check:
        _check_equal(spec, val, det(matrix_R(spec, z, y), spec.field), "det L vs det R")
    return val


def avg_products(spec, ys, chain=None):
    """``E[prod_k prod_j (y_k - x_j)]`` from stacked ``M11`` chain blocks."""
    ys = _pts(spec, ys)
    check_points(ys, (), None)
    K, p = len(ys), spec.p
    if K == 0:
        return spec.field.one
    rows = []
    for j in range(K):
        b = chain_blocks(spec, j, chain)
        rows.append([b.m11(y) for y in ys])
    M = _assemble(spec, rows, K * p)
    return det(M, spec.field) / _vandermonde(ys) ** p


def _inv_depth_check(spec, depth):
    if depth > 1 + min(spec.pair.mvec):
        raise ChainDepthExceeded(
            f"{depth} inverse factors exceed 1 + min(m) = {1 + min(spec.pair.mvec)}")


def avg_inv_products(spec, zs, chain=None):
    """``E[prod_l prod_j 1/(z_l - x_j)]`` from stacked ``M22`` downward chain blocks."""
    zs = _pts(spec, zs)
    check_points((), zs, spec.measure)
    L, q = len(zs), spec.q
    if L == 0:
        return spec.field.one
    _inv_depth_check(spec, L)
    rows = []
    for j in range(L):
        b = chain_blocks(spec, -j, chain)
        rows.append([b.m22(z) for z in zs])
    M = _assemble(spec, rows, L * q)
    return det(M, spec.field) / _vandermonde(zs) ** q


def _r_rows(spec, ys, zs):
    return [[matrix_R(spec, z, y) / (z - y) for y in ys] for z in zs]


def _l_rows(spec, ys, zs):
    return [[matrix_L(spec, y, z) / (z - y) for z in zs] for y in ys]


def _general_r(spec, ys, zs, chain=None):
    """Products-heavy form (``K >= L``): R-grid rows then ``M11`` chain rows."""
    K, L, p = len(ys), len(zs), spec.p
    rows = _r_rows(spec, ys, zs)
    for j in range(K - L):
        b = chain_blocks(spec, j, chain)
        rows.append([b.m11(y) for y in ys])
    M = _assemble(spec, rows, K * p)
    sign = -1 if (L * (K - L)) % 2 else 1
    pref = sign * _cross(ys, zs) / (_vandermonde(ys) * _vandermonde(zs, -1))
    return pref ** p * det(M, spec.field)


def _general_l(spec, ys, zs, chain=None):
    """Ratios-heavy form (``L >= K``): L-grid rows then ``M22`` downward chain rows."""
    K, L, q = len(ys), len(zs), spec.q
    _inv_depth_check(spec, L - K)
    rows = _l_rows(spec, ys, zs)
    for j in range(L - K):
        b = chain_blocks(spec, -j, chain)
        rows.append([b.m22(z) for z in zs])
    M = _assemble(spec, rows, L * q)
    pref = _cross(ys, zs) / (_vandermonde(ys, -1) * _vandermonde(zs))
    return pref ** q * det(M, spec.field)


def _admissible(spec, ys, zs):
    ys, zs = _pts(spec, ys), _pts(spec, zs)
    check_points(ys, zs, spec.measure)
    return ys, zs


def avg_balanced(spec, ys, zs, check=True):
    """``K = L`` two-point form; the L-grid form is computed as a cross-check."""
    ys, zs = _admissible(spec, ys, zs)
    if len(ys) != len(zs):
        raise ValueError("avg_balanced needs as many ys as zs")
    if not ys:
        return spec.field.one
    val = _general_r(spec, ys, zs)
    if check:
        _check_equal(spec, val, _general_l(spec, ys, zs), "R-grid vs L-grid")
    return val


def avg_general(spec, ys, zs, chain=None, check=True):
    """``E[prod_k prod_j (y_k - x_j) / prod_l prod_j (z_l - x_j)]`` for any ``K, L``."""
    ys, zs = _admissible(spec, ys, zs)
    K, L = len(ys), len(zs)
    if K == L:
        val = avg_balanced(spec, ys, zs, check)
        if check and K:
            _check_equal(spec, val, _general_r(spec, ys, zs, chain), "balanced vs general")
        return val
    if K > L:
        return _general_r(spec, ys, zs, chain)
    return _general_l(spec, ys, zs, chain)


def corollary_scalar_relation(spec, y, z):
    """Both sides of ``E[ratio] = 1 - (z - y) sum Khat(y, x) mass / (z - x)``.

    Needs ``q = 1`` and a unit second weight; ``Khat`` is the scalar kernel.
    """
    if not spec.rank_one:
        raise RequiresRankOne("the scalar relation needs a rank-one weight system")
    W = spec.weights
    if spec.q != 1 or W.w2[0].poly.coeffs != (1,) or not W.w2[0].is_polynomial or W.w2[0].zeros:
        raise ValueError("the scalar relation needs q = 1 and w2 = 1")
    f = spec.field
    y, z = _pts(spec, (y, z))
    check_points((), (z,), spec.measure)
    lhs = det(matrix_R(spec, z, y), f)
    tab = tables(spec.weights, spec.measure)
    acc = f.zero
    for x, m in zip(tab.nodes, spec.measure.masses):
        K = kernel_schur(spec, y, x)
        khat = sum((K[0, k] * W.w1[k](x) for k in range(spec.p)), f.zero)
        acc += khat * m / (z - x)
    rhs = f.one - (z - y) * acc
    return lhs, rhs
