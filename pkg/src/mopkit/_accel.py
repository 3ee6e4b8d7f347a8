"""Float-path hot loops.

Each kernel exists twice: a numba ``@njit`` version and a pure-numpy
version with identical semantics.  The numba path is used when numba
imports and ``MOPKIT_NUMBA`` is not set to ``0``; see
``benchmarks/bench_accel.py`` for a timing comparison.
"""

import itertools

import numpy as np

from .config import numba_requested

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional speedup
    numba = None

HAVE_NUMBA = numba is not None


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


# ---------------------------------------------------------------- numba side

@_njit
def _lu_inplace_nb(a):
    # returns (sign, singular); a is overwritten by the packed LU factors
    n = a.shape[0]
    sign = 1.0
    for col in range(n):
        piv = col
        best = abs(a[col, col])
        for r in range(col + 1, n):
            v = abs(a[r, col])
            if v > best:
                best = v
                piv = r
        if best == 0.0:
            return sign, True
        if piv != col:
            for c in range(n):
                tmp = a[col, c]
                a[col, c] = a[piv, c]
                a[piv, c] = tmp
            sign = -sign
        inv = 1.0 / a[col, col]
        for r in range(col + 1, n):
            f = a[r, col] * inv
            a[r, col] = f
            for c in range(col + 1, n):
                a[r, c] -= f * a[col, c]
    return sign, False


@_njit
def lu_det_nb(a):
    w = a.copy()
    sign, singular = _lu_inplace_nb(w)
    if singular:
        return 0.0 + 0.0j
    d = sign + 0.0j
    for i in range(w.shape[0]):
        d *= w[i, i]
    return d


@_njit
def lu_solve_nb(a, b, tol):
    # returns (x, ok); ok is False when a pivot falls below tol * max|a|
    n = a.shape[0]
    w = a.copy()
    x = b.copy()
    scale = 0.0
    for i in range(n):
        for j in range(n):
            v = abs(w[i, j])
            if v > scale:
                scale = v
    if n == 0:
        return x, True
    if scale == 0.0:
        return x, False
    for col in range(n):
        piv = col
        best = abs(w[col, col])
        for r in range(col + 1, n):
            v = abs(w[r, col])
            if v > best:
                best = v
                piv = r
        if best <= tol * scale:
            return x, False
        if piv != col:
            for c in range(n):
                tmp = w[col, c]
                w[col, c] = w[piv, c]
                w[piv, c] = tmp
            for c in range(x.shape[1]):
                tmp = x[col, c]
                x[col, c] = x[piv, c]
                x[piv, c] = tmp
        inv = 1.0 / w[col, col]
        for r in range(col + 1, n):
            f = w[r, col] * inv
            if f != 0:
                for c in range(col + 1, n):
                    w[r, c] -= f * w[col, c]
                for c in range(x.shape[1]):
                    x[r, c] -= f * x[col, c]
    for col in range(n - 1, -1, -1):
        inv = 1.0 / w[col, col]
        for c in range(x.shape[1]):
            s = x[col, c]
            for k in range(col + 1, n):
                s -= w[col, k] * x[k, c]
            x[col, c] = s * inv
    return x, True


@_njit
def enum_sum_nb(F, G, r):
    # sum over ordered n-tuples of distinct node indices of
    # prod r[t_j] * det F[:, t] * det G[:, t]
    n = F.shape[0]
    N = F.shape[1]
    total = 0.0 + 0.0j
    if n == 0:
        return 1.0 + 0.0j
    if N < n:
        return total
    idx = np.zeros(n, dtype=np.int64)
    used = np.zeros(N, dtype=np.bool_)
    fm = np.empty((n, n), dtype=np.complex128)
    gm = np.empty((n, n), dtype=np.complex128)
    # iterative depth-first walk over injective maps {0..n-1} -> {0..N-1}
    depth = 0
    idx[0] = -1
    while depth >= 0:
        if idx[depth] >= 0:
            used[idx[depth]] = False
        nxt = idx[depth] + 1
        while nxt < N and used[nxt]:
            nxt += 1
        if nxt >= N:
            idx[depth] = -1
            depth -= 1
            continue
        idx[depth] = nxt
        used[nxt] = True
        if depth < n - 1:
            depth += 1
            idx[depth] = -1
            continue
        w = 1.0 + 0.0j
        for j in range(n):
            w *= r[idx[j]]
        if w != 0:
            for i in range(n):
                for j in range(n):
                    fm[i, j] = F[i, idx[j]]
                    gm[i, j] = G[i, idx[j]]
            total += w * lu_det_nb(fm) * lu_det_nb(gm)
    return total


# ---------------------------------------------------------------- numpy side

def lu_det_np(a):
    w = np.array(a, dtype=np.complex128)
    n = w.shape[0]
    sign = 1.0
    for col in range(n):
        piv = col + int(np.argmax(np.abs(w[col:, col])))
        if w[piv, col] == 0:
            return 0j
        if piv != col:
            w[[col, piv]] = w[[piv, col]]
            sign = -sign
        f = w[col + 1:, col] / w[col, col]
        w[col + 1:, col:] -= np.outer(f, w[col, col:])
    return complex(sign * np.prod(np.diag(w)))


def lu_solve_np(a, b, tol):
    w = np.array(a, dtype=np.complex128)
    x = np.array(b, dtype=np.complex128)
    n = w.shape[0]
    if n == 0:
        return x, True
    scale = np.abs(w).max()
    if scale == 0:
        return x, False
    for col in range(n):
        piv = col + int(np.argmax(np.abs(w[col:, col])))
        if abs(w[piv, col]) <= tol * scale:
            return x, False
        if piv != col:
            w[[col, piv]] = w[[piv, col]]
            x[[col, piv]] = x[[piv, col]]
        f = w[col + 1:, col] / w[col, col]
        w[col + 1:, col:] -= np.outer(f, w[col, col:])
        x[col + 1:] -= np.outer(f, x[col])
    for col in range(n - 1, -1, -1):
        x[col] = (x[col] - w[col, col + 1:] @ x[col + 1:]) / w[col, col]
    return x, True


def enum_sum_np(F, G, r, chunk=4096):
    n, N = F.shape
    if n == 0:
        return 1 + 0j
    total = 0j
    tuples = itertools.permutations(range(N), n)
    while True:
        block = np.array(list(itertools.islice(tuples, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        w = np.prod(r[block], axis=1)
        fm = np.transpose(F[:, block], (1, 0, 2))
        gm = np.transpose(G[:, block], (1, 0, 2))
        total += complex(np.sum(w * np.linalg.det(fm) * np.linalg.det(gm)))
    return total


# ---------------------------------------------------------------- dispatch

def active():
    """Return ``"numba"`` or ``"numpy"`` for the path currently selected."""
    return "numba" if HAVE_NUMBA and numba_requested() else "numpy"


def lu_det(a):
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if active() == "numba":
        return complex(lu_det_nb(a))
    return lu_det_np(a)


def lu_solve(a, b, tol):
    a = np.ascontiguousarray(a, dtype=np.complex128)
    b = np.ascontiguousarray(b, dtype=np.complex128)
    if active() == "numba":
        x, ok = lu_solve_nb(a, b, float(tol))
        return x, bool(ok)
    return lu_solve_np(a, b, tol)


def enum_sum(F, G, r):
    F = np.ascontiguousarray(F, dtype=np.complex128)
    G = np.ascontiguousarray(G, dtype=np.complex128)
    r = np.ascontiguousarray(r, dtype=np.complex128)
    if active() == "numba":
        return complex(enum_sum_nb(F, G, r))
    return enum_sum_np(F, G, r)
