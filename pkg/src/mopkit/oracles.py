"""Ground-truth routes for ensemble averages.

``oracle_enumerate`` sums the joint density over every ordered tuple of
distinct nodes; ``oracle_andreief`` collapses that sum to a Gram
determinant of the modified weight.  Neither touches the RH machinery.
"""

import itertools
from math import factorial, prod

import numpy as np

from . import _accel, config
from .errors import EnumerationCapExceeded, NonNormal, RequiresRankOne
from .linalg import EXACT, asmatrix, det, zeros
from .measures import check_points, modified_weight
from .mop import EnsembleSpec, _basis, block_hankel


def _density_factors(spec):
    """Rows ``f_a(x) = x^j w1_k(x)`` and ``g_b(x) = x^j w2_l(x)`` at every node."""
    if not spec.rank_one:
        raise RequiresRankOne("enumeration needs a rank-one weight system")
    f = spec.field
    nodes = spec.measure.nodes
    W = spec.weights
    rows_f, rows_g = _basis(spec.pair.nvec), _basis(spec.pair.mvec)
    F = zeros((len(rows_f), len(nodes)), f)
    G = zeros((len(rows_g), len(nodes)), f)
    for i, x in enumerate(nodes):
        for a, (k, j) in enumerate(rows_f):
            F[a, i] = x ** j * W.w1[k](x)
        for b, (l, j) in enumerate(rows_g):
            G[b, i] = x ** j * W.w2[l](x)
    return F, G


def _node_factors(spec, ys, zs):
    out = []
    for x, m in zip(spec.measure.nodes, spec.measure.masses):
        v = m
        for y in ys:
            v *= y - x
        for z in zs:
            v /= z - x
        out.append(v)
    return out


def _check_cap(N, n):
    cap = config.enum_cap()
    if N ** n > cap:
        raise EnumerationCapExceeded(f"{N}^{n} configurations exceed the cap of {cap}")


def configuration_sum(spec, ys=(), zs=()):
    """``sum_{x in nodes^n} prod r(x_j) det f(x) det g(x)`` (ordered tuples)."""
    f = spec.field
    ys = [f.scalar(y) for y in ys]
    zs = [f.scalar(z) for z in zs]
    check_points(ys, zs, spec.measure)
    F, G = _density_factors(spec)
    r = _node_factors(spec, ys, zs)
    n, N = F.shape
    _check_cap(N, n)
    if not f.exact:
        return _accel.enum_sum(F, G, np.array(r, dtype=np.complex128))
    total = f.zero
    # tuples with a repeated node have two equal columns, so they drop out
    for t in itertools.permutations(range(N), n):
        w = prod((r[i] for i in t), start=f.one)
        if w == 0:
            continue
        cols = list(t)
        total += w * det(F[:, cols], f) * det(G[:, cols], f)
    return total


def normalization_Z(spec):
    """``Z_n = n! det H``."""
    f = spec.field
    d = det(block_hankel(spec), f)
    if f.is_zero(d):
        raise NonNormal(f"pair {spec.pair} is not normal", pair=spec.pair)
    return factorial(spec.n) * d


def oracle_enumerate(spec, ys=(), zs=()):
    return configuration_sum(spec, ys, zs) / normalization_Z(spec)


def oracle_andreief(spec, ys=(), zs=()):
    """``det H[modified weight] / det H``.

    The modified weight carries ``(x - y)/(x - z)`` factors, hence the sign
    ``(-1)^{n (K + L)}`` relative to ``(y - x)/(z - x)``.
    """
    f = spec.field
    ys = tuple(f.scalar(y) for y in ys)
    zs = tuple(f.scalar(z) for z in zs)
    check_points(ys, zs, spec.measure)
    base = det(block_hankel(spec), f)
    if f.is_zero(base):
        raise NonNormal(f"pair {spec.pair} is not normal", pair=spec.pair)
    mod = EnsembleSpec(modified_weight(spec.weights, ys, zs), spec.measure, spec.pair)
    sign = -1 if (spec.n * (len(ys) + len(zs))) % 2 else 1
    return sign * det(block_hankel(mod), f) / base


def cauchy_vandermonde_matrix(xs, zs, field=EXACT):
    """Rows ``x^0 .. x^{n-1}`` followed by rows ``1/(z_i - x)``."""
    xs = [field.scalar(x) for x in xs]
    zs = [field.scalar(z) for z in zs]
    n = len(xs) - len(zs)
    if n < 0:
        raise ValueError("need at least as many x points as z points")
    check_points(xs, zs)
    rows = [[x ** i for x in xs] for i in range(n)]
    rows += [[1 / (z - x) for x in xs] for z in zs]
    return asmatrix(rows, field) if rows else zeros((0, 0), field)


def cauchy_vandermonde(xs, zs, field=EXACT):
    """Closed form of ``det cauchy_vandermonde_matrix(xs, zs)``."""
    xs = [field.scalar(x) for x in xs]
    zs = [field.scalar(z) for z in zs]
    if len(xs) < len(zs):
        raise ValueError("need at least as many x points as z points")
    check_points(xs, zs)
    num = field.one
    for i, j in itertools.combinations(range(len(zs)), 2):
        num *= zs[i] - zs[j]
    for i, j in itertools.combinations(range(len(xs)), 2):
        num *= xs[j] - xs[i]
    den = field.one
    for z in zs:
        for x in xs:
            den *= z - x
    return num / den
