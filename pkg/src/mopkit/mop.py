"""Multi-indices, block Hankel moment matrices, vector orthogonal
polynomials and the reduced Riemann-Hilbert matrix.

The classical RH matrix ``Y`` carries factors ``-2*pi*i`` in its second
block row and ``-1/(2*pi*i)`` in its first block column.  We work with
``M = E^{-1} Y E`` for ``E = diag(I_p, -2*pi*i I_q)`` whose blocks are

* ``M11(t)`` rows: type II vector OPs ``P^{(II,k)}_{n+e_k, m}``,
* ``M12(t)`` rows: ``sum M11(x) W(x) / (t - x)``,
* ``M21(t)`` rows: type I vector OPs ``P^{(I,l)}_{n, m-e_l}``,
* ``M22(t)`` rows: ``sum M21(x) W(x) / (t - x)``,

all of them rational in the data.  Determinants of the diagonal blocks,
the two-point matrices and the kernel are unchanged by the conjugation.

Indices ``k`` (first weights) and ``l`` (second weights) are 0-based.
"""

import threading
from dataclasses import dataclass, replace
from functools import lru_cache

from .errors import NegativeComponent, NonNormal, PoleOnSupport, ShapeError, SingularMatrix
from .linalg import det, lu, solve, zeros, identity
from .measures import DiscreteMeasure, Polynomial, WeightMatrix, WeightSystem, effective_masses


@dataclass(frozen=True)
class MultiIndexPair:
    nvec: tuple
    mvec: tuple

    def __post_init__(self):
        nvec, mvec = tuple(int(v) for v in self.nvec), tuple(int(v) for v in self.mvec)
        if any(v < 0 for v in nvec + mvec):
            raise NegativeComponent(f"negative component in {nvec}, {mvec}")
        if sum(nvec) - sum(mvec) not in (0, 1):
            raise ShapeError(f"|n| - |m| must be 0 or 1, got {nvec}, {mvec}")
        object.__setattr__(self, "nvec", nvec)
        object.__setattr__(self, "mvec", mvec)

    @property
    def p(self):
        return len(self.nvec)

    @property
    def q(self):
        return len(self.mvec)

    @property
    def balanced(self):
        return sum(self.nvec) == sum(self.mvec)

    @property
    def n(self):
        return sum(self.mvec)

    def dual(self):
        return MultiIndexPair(self.mvec, self.nvec)

    def __str__(self):
        return f"({','.join(map(str, self.nvec))};{','.join(map(str, self.mvec))})"


def _bump(vec, i, d):
    v = list(vec)
    v[i] += d
    return tuple(v)


@dataclass(frozen=True)
class EnsembleSpec:
    """Weights, measure and a balanced multi-index pair.

    ``n = 0`` is allowed so that chain pairs of depth ``min(m)`` can be
    represented; user-facing documents require ``n >= 1``.
    """

    weights: object
    measure: DiscreteMeasure
    pair: MultiIndexPair

    def __post_init__(self):
        if not isinstance(self.weights, (WeightSystem, WeightMatrix)):
            raise TypeError("weights must be a WeightSystem or WeightMatrix")
        W = self.weights
        if (W.p, W.q) != (self.pair.p, self.pair.q):
            raise ShapeError(f"weight grid is {W.p}x{W.q} but pair has p={self.pair.p}, q={self.pair.q}")
        if not self.pair.balanced:
            raise ShapeError("ensemble pair must satisfy |n| = |m|")
        object.__setattr__(self, "weights", W.embed(self.measure.field))

    @property
    def field(self):
        return self.measure.field

    @property
    def p(self):
        return self.pair.p

    @property
    def q(self):
        return self.pair.q

    @property
    def n(self):
        return self.pair.n

    @property
    def rank_one(self):
        return isinstance(self.weights, WeightSystem)

    def with_pair(self, pair):
        return replace(self, pair=pair)

    def embed(self, field):
        W = self.weights
        return EnsembleSpec(W, self.measure.embed(field), self.pair)


class _Tables:
    """Per-ensemble node data and a lazily filled, lock-guarded moment table."""

    def __init__(self, weights, measure):
        self.field = measure.field
        self.nodes = measure.nodes
        self.E = effective_masses(measure, weights)
        self._moments = {}
        self._lock = threading.Lock()

    def moment(self, k, l, j):
        key = (k, l, j)
        with self._lock:
            v = self._moments.get(key)
        if v is None:
            v = self.field.zero
            for x, e in zip(self.nodes, self.E[:, k, l]):
                v += e * x ** j
            with self._lock:
                self._moments[key] = v
        return v


@lru_cache(maxsize=512)
def tables(weights, measure):
    return _Tables(weights, measure)


def _basis(vec):
    return [(k, i) for k, nk in enumerate(vec) for i in range(nk)]


def moment_matrix(spec, nvec, mvec):
    """``|n| x |m|`` matrix ``[int A_a^T W B_b]`` over the standard bases."""
    t = tables(spec.weights, spec.measure)
    rows, cols = _basis(nvec), _basis(mvec)
    H = zeros((len(rows), len(cols)), spec.field)
    for a, (k, i) in enumerate(rows):
        for b, (l, j) in enumerate(cols):
            H[a, b] = t.moment(k, l, i + j)
    return H


def block_hankel(spec, pair=None):
    pair = pair or spec.pair
    if not pair.balanced:
        raise ShapeError("block Hankel matrix needs |n| = |m|")
    return moment_matrix(spec, pair.nvec, pair.mvec)


def is_normal(spec, pair=None):
    H = block_hankel(spec, pair)
    return not spec.field.is_zero(det(H, spec.field))


@dataclass(frozen=True)
class PolyVector:
    """Vector of polynomials; component ``k`` has degree below ``bounds[k]``."""

    components: tuple
    bounds: tuple

    @classmethod
    def from_coeffs(cls, coeffs, bounds):
        comps, pos = [], 0
        for b in bounds:
            comps.append(Polynomial(tuple(coeffs[pos:pos + b])))
            pos += b
        return cls(tuple(comps), tuple(bounds))

    def __call__(self, t):
        return [c(t) for c in self.components]

    def __len__(self):
        return len(self.components)


def _ops_pair(pair):
    if sum(pair.nvec) != sum(pair.mvec) + 1:
        raise ShapeError("vector OPs need |n| = |m| + 1")


def _coeffs_to_pv(c, nvec):
    return PolyVector.from_coeffs(list(c), nvec)


def _bordered_solve(spec, pair, extra_row, what):
    H = moment_matrix(spec, pair.nvec, pair.mvec)
    size = H.shape[0]
    A = zeros((size, size), spec.field)
    A[:size - 1, :] = H.T
    A[size - 1, :] = extra_row
    rhs = zeros((size,), spec.field)
    rhs[size - 1] = spec.field.one
    try:
        return solve(A, rhs, spec.field)
    except SingularMatrix as exc:
        raise NonNormal(f"{what} system for pair {pair} is singular", pair=pair) from exc


def vector_op_type2(spec, pair, k):
    """Type II OP: component ``k`` monic of degree ``n_k - 1``, orthogonal to ``P_m``."""
    _ops_pair(pair)
    if pair.nvec[k] < 1:
        raise ShapeError(f"component {k} of {pair.nvec} has no monic degree")
    basis = _basis(pair.nvec)
    row = zeros((len(basis),), spec.field)
    row[basis.index((k, pair.nvec[k] - 1))] = spec.field.one
    return _coeffs_to_pv(_bordered_solve(spec, pair, row, "type II"), pair.nvec)


def vector_op_type1(spec, pair, l):
    """Type I OP: orthogonal to ``P_m`` with unit pairing against ``x^{m_l} e_l``."""
    _ops_pair(pair)
    t = tables(spec.weights, spec.measure)
    basis = _basis(pair.nvec)
    row = zeros((len(basis),), spec.field)
    for a, (k, i) in enumerate(basis):
        row[a] = t.moment(k, l, i + pair.mvec[l])
    return _coeffs_to_pv(_bordered_solve(spec, pair, row, "type I"), pair.nvec)


class RHBlocks:
    """Evaluator of the reduced RH matrix ``M(t)`` of a normal ensemble."""

    def __init__(self, spec):
        self.spec = spec
        pair = spec.pair
        self.p, self.q = pair.p, pair.q
        self.field = spec.field
        if not is_normal(spec):
            raise NonNormal(f"pair {pair} is not normal", pair=pair)
        tab = tables(spec.weights, spec.measure)
        self._nodes = tab.nodes
        self.type2 = tuple(
            vector_op_type2(spec, MultiIndexPair(_bump(pair.nvec, k, 1), pair.mvec), k)
            for k in range(self.p))
        # rows with m_l = 0 have no type I polynomial: M21 row 0, M22 row e_l
        self.type1 = tuple(
            vector_op_type1(spec, MultiIndexPair(pair.nvec, _bump(pair.mvec, l, -1)), l)
            if pair.mvec[l] > 0 else None
            for l in range(self.q))
        self._cw2 = [self._weighted(tab, pv) for pv in self.type2]
        self._cw1 = [None if pv is None else self._weighted(tab, pv) for pv in self.type1]
        # orthogonality orders used to deflate float Cauchy sums
        self._ord2 = [list(pair.mvec) for _ in range(self.p)]
        self._ord1 = [[m - (j == l) for j, m in enumerate(pair.mvec)] for l in range(self.q)]

    def _weighted(self, tab, pv):
        N = len(self._nodes)
        out = zeros((N, self.q), self.field)
        for i, x in enumerate(self._nodes):
            vals = pv(x)
            for l in range(self.q):
                acc = self.field.zero
                for k in range(self.p):
                    acc += vals[k] * tab.E[i, k, l]
                out[i, l] = acc
        return out

    def _check_off_support(self, t):
        if any(t == x for x in self._nodes):
            raise PoleOnSupport(f"Cauchy block requested at support point {t}", point=t)

    def _cauchy(self, cw, t, orders):
        self._check_off_support(t)
        out = zeros((self.q,), self.field)
        for l in range(self.q):
            d = 0 if self.field.exact else orders[l]
            acc = self.field.zero
            for x, c in zip(self._nodes, cw[:, l]):
                acc += c * x ** d / (t - x)
            out[l] = acc / t ** d if d else acc
        return out

    def m11(self, t):
        out = zeros((self.p, self.p), self.field)
        for k, pv in enumerate(self.type2):
            out[k, :] = pv(t)
        return out

    def m21(self, t):
        out = zeros((self.q, self.p), self.field)
        for l, pv in enumerate(self.type1):
            if pv is not None:
                out[l, :] = pv(t)
        return out

    def m12(self, t):
        out = zeros((self.p, self.q), self.field)
        for k in range(self.p):
            out[k, :] = self._cauchy(self._cw2[k], t, self._ord2[k])
        return out

    def m22(self, t):
        out = zeros((self.q, self.q), self.field)
        for l in range(self.q):
            if self._cw1[l] is None:
                out[l, l] = self.field.one
            else:
                out[l, :] = self._cauchy(self._cw1[l], t, self._ord1[l])
        return out

    def evaluate(self, t):
        t = self.field.scalar(t)
        p = self.p
        M = zeros((p + self.q, p + self.q), self.field)
        M[:p, :p] = self.m11(t)
        M[:p, p:] = self.m12(t)
        M[p:, :p] = self.m21(t)
        M[p:, p:] = self.m22(t)
        return M

    __call__ = evaluate


@lru_cache(maxsize=512)
def rh_blocks(spec):
    return RHBlocks(spec)


def evaluate(blocks, t):
    return blocks.evaluate(t)


def dual_spec(spec):
    """Swap the multi-indices and transpose the weights."""
    return EnsembleSpec(spec.weights.transpose(), spec.measure, spec.pair.dual())


def rh_inverse(spec, t):
    """``M(t)^{-1}`` read off the dual ensemble, without any inversion."""
    d = rh_blocks(dual_spec(spec))
    t = spec.field.scalar(t)
    p, q = spec.p, spec.q
    out = zeros((p + q, p + q), spec.field)
    out[:p, :p] = d.m22(t).T
    out[:p, p:] = -d.m12(t).T
    out[p:, :p] = -d.m21(t).T
    out[p:, p:] = d.m11(t).T
    return out


def chain_indices(pair, k):
    """Pair number ``k`` of the chain through ``pair`` (round-robin rule).

    Upward steps add one to every ``n`` component and distribute ``p`` unit
    increments over ``m`` cyclically; downward steps subtract one from every
    ``m`` component and take ``q`` unit decrements from ``n`` cyclically,
    skipping exhausted components.
    """
    nvec, mvec = list(pair.nvec), list(pair.mvec)
    p, q = len(nvec), len(mvec)
    for s in range(1, abs(k) + 1):
        if k > 0:
            nvec = [v + 1 for v in nvec]
            start = ((s - 1) * p) % q
            for i in range(p):
                mvec[(start + i) % q] += 1
        else:
            if min(mvec) < 1:
                raise NegativeComponent(
                    f"chain step {-s} would make m negative; depth is limited to min(m) = {min(pair.mvec)}")
            mvec = [v - 1 for v in mvec]
            ptr = ((s - 1) * q) % p
            for _ in range(q):
                for off in range(p):
                    j = (ptr + off) % p
                    if nvec[j] > 0:
                        nvec[j] -= 1
                        ptr = (j + 1) % p
                        break
                else:
                    raise NegativeComponent("chain step would make n negative")
    return MultiIndexPair(tuple(nvec), tuple(mvec))


def validate_chain(pairs, base):
    """Check an explicit chain ``{k: pair}`` against the chain definition."""
    ks = sorted(pairs)
    prev = {0: base}
    for k in [k for k in ks if k > 0] + [k for k in sorted(ks, reverse=True) if k < 0]:
        ref = prev.get(k - 1 if k > 0 else k + 1)
        if ref is None:
            raise ShapeError(f"chain override for step {k} skips a step")
        cur = pairs[k]
        if k > 0:
            ok = (cur.nvec == tuple(v + 1 for v in ref.nvec)
                  and all(a >= b for a, b in zip(cur.mvec, ref.mvec))
                  and sum(cur.mvec) - sum(ref.mvec) == ref.p)
        else:
            ok = (cur.mvec == tuple(v - 1 for v in ref.mvec)
                  and all(a <= b for a, b in zip(cur.nvec, ref.nvec))
                  and sum(ref.nvec) - sum(cur.nvec) == ref.q)
        if not ok:
            raise ShapeError(f"chain override for step {k} violates the chain rule")
        prev[k] = cur
    return pairs


def chain_pair(pair, k, override=None):
    if k == 0:
        return pair
    if override and k in override:
        return override[k]
    if override:
        # keep the chain connected when only some steps are overridden
        step = 1 if k > 0 else -1
        base_k = max((j for j in override if 0 < j * step < k * step), key=abs, default=0)
        base = override[base_k] if base_k else pair
        return chain_indices(base, k - base_k)
    return chain_indices(pair, k)


def biorthogonal_bases(spec):
    """Bases ``(P_i)``, ``(Q_j)`` with ``int P_i^T W Q_j = delta_ij``.

    From ``Pi H = L U``: ``P`` coefficients are the columns of
    ``(L^{-1} Pi)^T`` and ``Q`` coefficients the columns of ``U^{-1}``.
    """
    H = block_hankel(spec)
    n = H.shape[0]
    field = spec.field
    try:
        perm, L, U = lu(H, field)
    except SingularMatrix as exc:
        raise NonNormal(f"pair {spec.pair} is not normal", pair=spec.pair) from exc
    Pi = identity(n, field)[perm]
    CP = solve(L, Pi, field).T
    CQ = solve(U, identity(n, field), field)
    Ps = [_coeffs_to_pv(CP[:, i], spec.pair.nvec) for i in range(n)]
    Qs = [_coeffs_to_pv(CQ[:, j], spec.pair.mvec) for j in range(n)]
    return Ps, Qs


def integrate_pairing(spec, P, Q):
    """``sum_x P(x)^T W(x) Q(x)`` against the ensemble measure."""
    tab = tables(spec.weights, spec.measure)
    acc = spec.field.zero
    for i, x in enumerate(tab.nodes):
        pv, qv = P(x), Q(x)
        for k in range(len(pv)):
            for l in range(len(qv)):
                acc += pv[k] * tab.E[i, k, l] * qv[l]
    return acc
