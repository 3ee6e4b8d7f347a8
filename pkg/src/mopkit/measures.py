"""Discrete measures, weight functions and moments.

Every integral in the package is a finite sum against a
:class:`DiscreteMeasure`, so the exact path never leaves the rationals.
Continuous weights enter only through Gaussian quadrature presets on the
float path.
"""

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DuplicatePoint, PoleOnSupport, ShapeError, UnknownPreset
from .linalg import EXACT, ComplexFloat


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial, coefficients in ascending degree."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def of(cls, coeffs, field=EXACT):
        return cls(tuple(field.scalar(c) for c in coeffs))

    @classmethod
    def monomial(cls, k, field=EXACT):
        return cls((field.zero,) * k + (field.one,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                for i in range(n)))

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Polynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def embed(self, field):
        return Polynomial(tuple(field.scalar(c) for c in self.coeffs))


ONE = Polynomial((Fraction(1),))


@dataclass(frozen=True)
class Weight:
    """``poly(x) * prod(x - zeros) / prod(x - poles) * exp(rate * x)``.

    The exponential factor is only meaningful on the float path.
    """

    poly: Polynomial = ONE
    zeros: tuple = ()
    poles: tuple = ()
    rate: object = 0

    def __call__(self, x):
        v = self.poly(x)
        for a in self.zeros:
            v *= x - a
        for b in self.poles:
            d = x - b
            if d == 0:
                raise PoleOnSupport(f"weight has a pole at support point {x}", point=x)
            v /= d
        if self.rate:
            v *= cmath.exp(self.rate * x)
        return v

    def __mul__(self, other):
        return Weight(self.poly * other.poly, self.zeros + other.zeros,
                      self.poles + other.poles, self.rate + other.rate)

    def times(self, zeros=(), poles=()):
        return Weight(self.poly, self.zeros + tuple(zeros), self.poles + tuple(poles), self.rate)

    @property
    def is_polynomial(self):
        return not self.poles and not self.rate

    def embed(self, field):
        if field.exact and self.rate:
            raise TypeError("exponential weights need the float field")
        return Weight(self.poly.embed(field), tuple(field.scalar(a) for a in self.zeros),
                      tuple(field.scalar(b) for b in self.poles),
                      field.scalar(self.rate) if self.rate else 0)


def as_weight(w, field=EXACT):
    if isinstance(w, Weight):
        return w
    if isinstance(w, Polynomial):
        return Weight(w)
    if isinstance(w, (str, int, Fraction, float, complex)):
        w = (w,)
    return Weight(Polynomial.of(w, field))


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite signed measure ``sum masses[i] * delta(nodes[i])``."""

    nodes: tuple
    masses: tuple
    field: object = EXACT

    def __post_init__(self):
        nodes = tuple(self.field.scalar(x) for x in self.nodes)
        masses = tuple(self.field.scalar(m) for m in self.masses)
        if not nodes:
            raise ShapeError("a measure needs at least one node")
        if len(nodes) != len(masses):
            raise ShapeError("nodes and masses differ in length")
        if len(set(nodes)) != len(nodes):
            raise DuplicatePoint("measure nodes must be pairwise distinct")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "masses", masses)

    def __len__(self):
        return len(self.nodes)

    def embed(self, field):
        return DiscreteMeasure(self.nodes, self.masses, field)

    def contains(self, t):
        return any(t == x for x in self.nodes)


@dataclass(frozen=True)
class WeightSystem:
    """Rank-one weight ``W = w1 w2^T`` (``p`` first weights, ``q`` second)."""

    w1: tuple
    w2: tuple

    def __post_init__(self):
        object.__setattr__(self, "w1", tuple(as_weight(w) for w in self.w1))
        object.__setattr__(self, "w2", tuple(as_weight(w) for w in self.w2))
        if not self.w1 or not self.w2:
            raise ShapeError("need p >= 1 and q >= 1")

    @property
    def p(self):
        return len(self.w1)

    @property
    def q(self):
        return len(self.w2)

    def matrix(self):
        return WeightMatrix(tuple(tuple(a * b for b in self.w2) for a in self.w1))

    def transpose(self):
        return WeightSystem(self.w2, self.w1)

    def embed(self, field):
        return WeightSystem(tuple(w.embed(field) for w in self.w1),
                            tuple(w.embed(field) for w in self.w2))


@dataclass(frozen=True)
class WeightMatrix:
    """General ``p x q`` grid of weight functions."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_weight(w) for w in row) for row in self.entries)
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ShapeError("weight matrix must be a non-empty rectangular grid")
        object.__setattr__(self, "entries", rows)

    @property
    def p(self):
        return len(self.entries)

    @property
    def q(self):
        return len(self.entries[0])

    def matrix(self):
        return self

    def transpose(self):
        return WeightMatrix(tuple(zip(*self.entries)))

    def embed(self, field):
        return WeightMatrix(tuple(tuple(w.embed(field) for w in row) for row in self.entries))


GeneralWeightMatrix = WeightMatrix


def moment(measure, w, j):
    """``sum_i masses[i] * nodes[i]**j * w(nodes[i])``."""
    if j < 0:
        raise ValueError("moment exponent must be non-negative")
    w = as_weight(w, measure.field)
    return sum((m * x ** j * w(x) for x, m in zip(measure.nodes, measure.masses)),
               measure.field.zero)


def effective_masses(measure, weights):
    """Array ``E[i, k, l] = masses[i] * W_{k,l}(nodes[i])``."""
    W = weights.matrix()
    out = np.empty((len(measure), W.p, W.q), dtype=measure.field.dtype)
    for i, (x, m) in enumerate(zip(measure.nodes, measure.masses)):
        for k in range(W.p):
            for l in range(W.q):
                out[i, k, l] = m * W.entries[k][l](x)
    return out


def check_points(ys=(), zs=(), measure=None):
    pts = list(ys) + list(zs)
    if len(set(pts)) != len(pts):
        raise DuplicatePoint(f"points must be pairwise distinct: {pts}")
    if measure is not None:
        for z in zs:
            if measure.contains(z):
                raise PoleOnSupport(f"point {z} lies on the support", point=z)


def modified_weight(W, ys=(), zs=(), measure=None):
    """Multiply every entry of ``W`` by ``prod(x - ys) / prod(x - zs)``.

    A rank-one :class:`WeightSystem` stays rank-one (the factor is put on
    the first weights); a :class:`WeightMatrix` is modified entrywise.
    """
    ys, zs = tuple(ys), tuple(zs)
    check_points(ys, zs, measure)
    if isinstance(W, WeightSystem):
        return WeightSystem(tuple(w.times(ys, zs) for w in W.w1), W.w2)
    return WeightMatrix(tuple(tuple(w.times(ys, zs) for w in row) for row in W.entries))


def quadrature_preset(family, N, params=None, tol=None):
    """``N``-point Gauss rule as a float-field measure.

    ``gauss-hermite`` integrates against ``exp(-x^2)`` on the real line;
    ``gauss-legendre`` against ``dx`` on ``[a, b]`` (default ``[-1, 1]``).
    """
    params = params or {}
    if N < 1:
        raise ValueError("need at least one quadrature point")
    if family == "gauss-hermite":
        x, w = np.polynomial.hermite.hermgauss(N)
    elif family == "gauss-legendre":
        x, w = np.polynomial.legendre.leggauss(N)
        a, b = float(params.get("a", -1)), float(params.get("b", 1))
        x = 0.5 * (b - a) * x + 0.5 * (b + a)
        w = 0.5 * (b - a) * w
    else:
        raise UnknownPreset(f"unknown quadrature family {family!r}")
    return DiscreteMeasure(tuple(complex(v) for v in x), tuple(complex(v) for v in w),
                           ComplexFloat(tol))
