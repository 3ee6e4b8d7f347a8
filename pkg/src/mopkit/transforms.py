"""Christoffel and Uvarov transforms of the reduced RH blocks.

Each transform has a Schur-complement route built from the unmodified
ensemble and a direct route that rebuilds the ensemble with the modified
weight ``prod(x - y_k) / prod(x - z_l) * W(x)``.
"""

from dataclasses import dataclass

from .averages import chain_blocks
from .errors import ChainDepthExceeded, NonNormal, SingularPivot
from .kernels import kernel_schur, matrix_L, matrix_R
from .linalg import EXACT, matrices_equal, schur_complement, zeros
from .measures import check_points, modified_weight
from .mop import EnsembleSpec, rh_blocks


def _pts(spec, vals):
    return [spec.field.scalar(v) for v in vals]


def _schur(spec, rows, lead):
    M = _assemble_rect(spec, rows)
    try:
        return schur_complement(M, lead, spec.field)
    except SingularPivot as exc:
        raise NonNormal(f"leading block of the transform matrix is singular for {spec.pair}") from exc


def _assemble_rect(spec, rows):
    h = sum(row[0].shape[0] for row in rows)
    w = sum(b.shape[1] for b in rows[0])
    M = zeros((h, w), spec.field)
    r = 0
    for row in rows:
        c = 0
        for block in row:
            M[r:r + block.shape[0], c:c + block.shape[1]] = block
            c += block.shape[1]
        r += row[0].shape[0]
    return M


def _ratio(spec, t, num, den):
    v = spec.field.one
    for a in num:
        v *= t - a
    for b in den:
        v /= t - b
    return v


def modified_spec(spec, ys=(), zs=()):
    return EnsembleSpec(modified_weight(spec.weights, ys, zs, spec.measure), spec.measure, spec.pair)


def christoffel_Y11(spec, ys, y, chain=None):
    """``M11`` of the weight ``prod(x - y_k) W(x)`` from chain pairs ``0..K``."""
    ys, (y,) = _pts(spec, ys), _pts(spec, (y,))
    check_points(list(ys) + [y])
    K, p = len(ys), spec.p
    rows = []
    for r in range(K + 1):
        b = chain_blocks(spec, r, chain)
        rows.append([b.m11(t) for t in ys] + [b.m11(y)])
    return _ratio(spec, y, (), ys) * _schur(spec, rows, K * p)


def _uvarov_rows(spec, zs, last, chain):
    L = len(zs)
    if L > min(spec.pair.mvec):
        raise ChainDepthExceeded(f"{L} poles need chain depth {L} > min(m) = {min(spec.pair.mvec)}")
    rows = []
    for r in range(L + 1):
        b = chain_blocks(spec, -r, chain)
        rows.append([b.m22(t) for t in zs] + [last(b)])
    return rows


def uvarov_Y21(spec, zs, z, chain=None):
    """``M21`` of the weight ``W(x) / prod(x - z_l)``."""
    zs, (z,) = _pts(spec, zs), _pts(spec, (z,))
    check_points((), list(zs) + [z], spec.measure)
    rows = _uvarov_rows(spec, zs, lambda b: b.m21(z), chain)
    return _schur(spec, rows, len(zs) * spec.q)


def uvarov_Y22(spec, zs, z, chain=None):
    """``M22`` of the weight ``W(x) / prod(x - z_l)``."""
    zs, (z,) = _pts(spec, zs), _pts(spec, (z,))
    check_points((), list(zs) + [z], spec.measure)
    rows = _uvarov_rows(spec, zs, lambda b: b.m22(z), chain)
    return _ratio(spec, z, (), zs) * _schur(spec, rows, len(zs) * spec.q)


def mixed_christoffel_Y11(spec, ys, zs, y, chain=None):
    """``M11`` of ``prod(x - y_k) / prod(x - z_l) W(x)`` for ``K >= L``."""
    ys, zs, (y,) = _pts(spec, ys), _pts(spec, zs), _pts(spec, (y,))
    check_points(list(ys) + [y], zs, spec.measure)
    K, L, p = len(ys), len(zs), spec.p
    if K < L:
        raise ValueError("mixed Christoffel form needs K >= L")
    rows = [[matrix_R(spec, z, t) / (z - t) for t in ys] + [matrix_R(spec, z, y) / (z - y)]
            for z in zs]
    for r in range(K - L + 1):
        b = chain_blocks(spec, r, chain)
        rows.append([b.m11(t) for t in ys] + [b.m11(y)])
    return _ratio(spec, y, zs, ys) * _schur(spec, rows, K * p)


def mixed_uvarov_blocks(spec, ys, zs, z, chain=None):
    """``(M21, M22)`` of ``prod(x - y_k) / prod(x - z_l) W(x)`` for ``L >= K``.

    In the reduced convention the kernel column of the ``M21`` matrix is
    ``-K_n(y_k, z)``.
    """
    ys, zs, (z,) = _pts(spec, ys), _pts(spec, zs), _pts(spec, (z,))
    check_points(ys, list(zs) + [z], spec.measure)
    K, L, q = len(ys), len(zs), spec.q
    if L < K:
        raise ValueError("mixed Uvarov form needs L >= K")
    if L - K > min(spec.pair.mvec):
        raise ChainDepthExceeded(
            f"depth {L - K} exceeds min(m) = {min(spec.pair.mvec)}")
    grid = [[matrix_L(spec, y, t) / (t - y) for t in zs] for y in ys]
    chain_rows = [chain_blocks(spec, -r, chain) for r in range(L - K + 1)]
    rows21 = [g + [-kernel_schur(spec, y, z)] for g, y in zip(grid, ys)]
    rows21 += [[b.m22(t) for t in zs] + [b.m21(z)] for b in chain_rows]
    rows22 = [g + [matrix_L(spec, y, z) / (z - y)] for g, y in zip(grid, ys)]
    rows22 += [[b.m22(t) for t in zs] + [b.m22(z)] for b in chain_rows]
    m21 = _schur(spec, rows21, L * q)
    m22 = _ratio(spec, z, ys, zs) * _schur(spec, rows22, L * q)
    return m21, m22


def partial_fractions(zs, z, ys=(), field=None):
    """``(c_1..c_L, c)`` with ``sum c_l/(x - z_l) + 1/(x - z) = c prod(x - y_k) / ((x - z) prod(x - z_l))``."""
    field = field or EXACT
    zs = [field.scalar(v) for v in zs]
    ys = [field.scalar(v) for v in ys]
    z = field.scalar(z)
    check_points(ys, list(zs) + [z])
    if len(ys) > len(zs):
        raise ValueError("the decomposition needs K <= L")
    c = field.one
    for a in zs:
        c *= z - a
    for b in ys:
        c /= z - b
    cs = []
    for l, a in enumerate(zs):
        v = c / (a - z)
        for b in ys:
            v *= a - b
        for l2, a2 in enumerate(zs):
            if l2 != l:
                v /= a - a2
        cs.append(v)
    return tuple(cs), c


@dataclass(frozen=True)
class TransformReport:
    kind: str
    ys: tuple
    zs: tuple
    point: object
    schur_route: object
    direct_route: object
    equal: bool


def _direct(spec, ys, zs):
    return rh_blocks(modified_spec(spec, ys, zs))


def certify(kind, spec, ys=(), zs=(), t=None, chain=None):
    """Compare the Schur route of ``kind`` against the modified-weight route."""
    f = spec.field
    ys, zs = tuple(_pts(spec, ys)), tuple(_pts(spec, zs))
    t = f.scalar(t)
    if kind == "christoffel":
        schur, direct = christoffel_Y11(spec, ys, t, chain), _direct(spec, ys, ()).m11(t)
    elif kind == "uvarov21":
        schur, direct = uvarov_Y21(spec, zs, t, chain), _direct(spec, (), zs).m21(t)
    elif kind == "uvarov22":
        schur, direct = uvarov_Y22(spec, zs, t, chain), _direct(spec, (), zs).m22(t)
    elif kind == "mixed_christoffel":
        schur, direct = mixed_christoffel_Y11(spec, ys, zs, t, chain), _direct(spec, ys, zs).m11(t)
    elif kind == "mixed_uvarov":
        schur = mixed_uvarov_blocks(spec, ys, zs, t, chain)
        d = _direct(spec, ys, zs)
        direct = (d.m21(t), d.m22(t))
    else:
        raise ValueError(f"unknown transform {kind!r}")
    if isinstance(schur, tuple):
        equal = all(matrices_equal(a, b, f) for a, b in zip(schur, direct))
    else:
        equal = matrices_equal(schur, direct, f)
    return TransformReport(kind, ys, zs, t, schur, direct, equal)
