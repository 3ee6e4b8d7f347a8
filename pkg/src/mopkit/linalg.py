"""Dense linear algebra over two scalar fields.

Matrices are plain 2-D numpy arrays.  ``dtype=object`` arrays holding
:class:`fractions.Fraction` entries live in the exact rational field;
``complex128`` arrays live in the tolerance-compared complex float field.
Every routine infers the field from the dtype unless one is passed in.
"""

from fractions import Fraction
from math import lcm

import numpy as np

from . import _accel, config
from .errors import ShapeError, SingularMatrix, SingularPivot


class ExactRational:
    """Arbitrary-precision rationals; equality is exact."""

    name = "exact"
    exact = True
    dtype = object
    zero = Fraction(0)
    one = Fraction(1)

    def scalar(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, complex):
            if x.imag != 0:
                raise TypeError(f"cannot embed {x!r} in the rationals")
            x = x.real
        return Fraction(x)

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == 0

    def __repr__(self):
        return "ExactRational()"

    def __eq__(self, other):
        return isinstance(other, ExactRational)

    def __hash__(self):
        return hash("exact")


class ComplexFloat:
    """Double-precision complex numbers compared with a relative tolerance."""

    name = "float"
    exact = False
    dtype = np.complex128

    def __init__(self, tol=None):
        self.tol = config.tolerance() if tol is None else float(tol)
        self.zero = 0j
        self.one = 1 + 0j

    def scalar(self, x):
        if isinstance(x, str):
            try:
                x = Fraction(x)
            except ValueError:
                return complex(x)
        if isinstance(x, Fraction):
            return complex(x.numerator / x.denominator)
        return complex(x)

    def eq(self, a, b):
        a, b = complex(a), complex(b)
        return abs(a - b) <= self.tol * max(1.0, abs(a), abs(b))

    def is_zero(self, a):
        return abs(a) <= self.tol

    def __repr__(self):
        return f"ComplexFloat(tol={self.tol!r})"

    def __eq__(self, other):
        return isinstance(other, ComplexFloat) and other.tol == self.tol

    def __hash__(self):
        return hash(("float", self.tol))


EXACT = ExactRational()


def field_of(M):
    M = np.asarray(M)
    return EXACT if M.dtype == object else ComplexFloat()


def asmatrix(rows, field=EXACT):
    """Build a 2-D array over ``field`` from nested sequences."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    out = np.empty((len(rows), ncols), dtype=field.dtype)
    for i, r in enumerate(rows):
        if len(r) != ncols:
            raise ShapeError("ragged rows")
        for j, v in enumerate(r):
            out[i, j] = field.scalar(v)
    return out


def convert(M, field):
    """Re-embed an existing matrix into ``field``."""
    M = np.asarray(M)
    out = np.empty(M.shape, dtype=field.dtype)
    flat_in, flat_out = M.reshape(-1), out.reshape(-1)
    for i, v in enumerate(flat_in):
        flat_out[i] = field.scalar(v)
    return out


def zeros(shape, field=EXACT):
    if field.exact:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape, dtype=np.complex128)


def identity(n, field=EXACT):
    out = zeros((n, n), field)
    for i in range(n):
        out[i, i] = field.one
    return out


def _square(M):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {M.shape}")
    return M


def _bareiss(rows):
    n = len(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            lead = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - lead * rk[j]) // prev
        prev = pivot
    return sign * rows[n - 1][n - 1] if n else 1


def det(M, field=None):
    """Determinant: fraction-free Bareiss (exact) or pivoted LU (float)."""
    M = _square(M)
    field = field or field_of(M)
    if not field.exact:
        return _accel.lu_det(M)
    scale = 1
    rows = []
    for r in M:
        r = [Fraction(v) for v in r]
        den = lcm(*(v.denominator for v in r)) if r else 1
        scale *= den
        rows.append([v.numerator * (den // v.denominator) for v in r])
    return Fraction(_bareiss(rows), scale)


def _solve_exact(A, B):
    n = A.shape[0]
    k = B.shape[1]
    aug = [[Fraction(v) for v in A[i]] + [Fraction(v) for v in B[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        row = aug[col]
        inv = 1 / row[col]
        for j in range(col, n + k):
            row[j] *= inv
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                other = aug[r]
                for j in range(col, n + k):
                    if row[j]:
                        other[j] -= f * row[j]
    out = np.empty((n, k), dtype=object)
    for i in range(n):
        for j in range(k):
            out[i, j] = aug[i][n + j]
    return out


def solve(A, B, field=None):
    """Solve ``A X = B``; ``B`` may be a vector or a matrix."""
    A = _square(A)
    B = np.asarray(B)
    vector = B.ndim == 1
    if vector:
        B = B.reshape(-1, 1)
    if B.shape[0] != A.shape[0]:
        raise ShapeError(f"row mismatch: A is {A.shape}, B is {B.shape}")
    field = field or field_of(A)
    if field.exact:
        X = _solve_exact(A, B)
    else:
        X, ok = _accel.lu_solve(A, B, field.tol)
        if not ok:
            raise SingularMatrix("matrix is numerically singular")
    return X[:, 0] if vector else X


def schur_complement(M, k, field=None):
    """Return ``D - C A^{-1} B`` for the split of ``M`` at leading size ``k``."""
    M = np.asarray(M)
    if M.ndim != 2 or k < 0 or k > min(M.shape):
        raise ShapeError(f"cannot split shape {M.shape} at {k}")
    field = field or field_of(M)
    A, B = M[:k, :k], M[:k, k:]
    C, D = M[k:, :k], M[k:, k:]
    if k == 0:
        return D.copy()
    try:
        X = solve(A, B, field)
    except SingularMatrix as exc:
        raise SingularPivot("leading block is singular") from exc
    return D - C @ X


def is_zero_matrix(M, field=None):
    M = np.asarray(M)
    field = field or field_of(M)
    return all(field.is_zero(v) for v in M.reshape(-1))


def matrices_equal(A, B, field=None):
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape:
        return False
    field = field or field_of(A)
    return all(field.eq(a, b) for a, b in zip(A.reshape(-1), B.reshape(-1)))


def lu(A, field=None):
    """Row-pivoted ``P A = L U``; returns ``(perm, L, U)`` with ``P = I[perm]``.

    Exact matrices pivot on the first nonzero entry, float matrices on the
    largest modulus.
    """
    A = _square(A)
    field = field or field_of(A)
    n = A.shape[0]
    U = A.copy()
    L = identity(n, field)
    perm = list(range(n))
    for col in range(n):
        cand = range(col, n)
        if field.exact:
            piv = next((r for r in cand if U[r, col] != 0), None)
        else:
            piv = max(cand, key=lambda r: abs(U[r, col]))
            if field.is_zero(U[piv, col]):
                piv = None
        if piv is None:
            raise SingularMatrix("matrix is singular")
        if piv != col:
            U[[col, piv]] = U[[piv, col]]
            L[[col, piv], :col] = L[[piv, col], :col]
            perm[col], perm[piv] = perm[piv], perm[col]
        for r in range(col + 1, n):
            f = U[r, col] / U[col, col]
            L[r, col] = f
            U[r, col:] = U[r, col:] - f * U[col, col:]
    return perm, L, U
