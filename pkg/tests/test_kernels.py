from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

import _suite as S
from mopkit.errors import EqualArguments, PoleOnSupport, RequiresRankOne
from mopkit.kernels import kernel_rh, kernel_scalar, kernel_schur, matrix_L, matrix_R
from mopkit.linalg import det, identity
from mopkit.measures import Polynomial, WeightMatrix
from mopkit.mop import EnsembleSpec, biorthogonal_bases

points = st.fractions(min_value=-6, max_value=6, max_denominator=7)


def test_kernel_examples():
    assert kernel_schur(S.e1(1), F(3), F(-7))[0, 0] == 1
    assert kernel_schur(S.e1(2), 0, 1)[0, 0] == 0
    assert kernel_schur(S.e1(2), F(1, 2), F(1, 2))[0, 0] == 1
    assert kernel_rh(S.e1(1), 3, 5)[0, 0] == 1
    assert kernel_rh(S.e1(2), 3, 5)[0, 0] == 46
    assert (kernel_rh(S.e2(), 2, -2) == kernel_schur(S.e2(), 2, -2)).all()


@given(points, points)
def test_kernel_is_the_bivariate_polynomial(x, y):
    assert kernel_schur(S.e1(2), x, y)[0, 0] == 2 - 2 * x - 2 * y + 4 * x * y


def test_kernel_rh_errors():
    with pytest.raises(EqualArguments):
        kernel_rh(S.e1(), 3, 3)
    with pytest.raises(PoleOnSupport):
        kernel_rh(S.e1(), 1, 3)


def test_kernel_from_biorthogonal_bases():
    for spec in (S.e2(), S.p2q2()):
        Ps, Qs = biorthogonal_bases(spec)
        x, y = F(5, 3), F(-2, 7)
        K = kernel_schur(spec, x, y)
        for l in range(spec.q):
            for k in range(spec.p):
                assert K[l, k] == sum(Q(x)[l] * P(y)[k] for P, Q in zip(Ps, Qs))


def test_kernel_degree_bounds():
    spec = S.p2q2()
    # entry (l, k) has degree <= m_l - 1 in x: finite differences of order m_l vanish
    from math import comb
    for l, ml in enumerate(spec.pair.mvec):
        for k in range(spec.p):
            diff = sum((-1) ** (ml - i) * comb(ml, i) * kernel_schur(spec, F(i), F(1, 3))[l, k]
                       for i in range(ml + 1))
            assert diff == 0


def test_scalar_kernel():
    assert kernel_scalar(S.e1(2), 0, 1) == 0
    assert kernel_scalar(S.e1(1), F(2), F(9)) == 1
    K = kernel_schur(S.e2(), 0, 0)
    assert kernel_scalar(S.e2(), 0, 0) == K[0, 0] * 1 + K[0, 1] * 0
    spec = EnsembleSpec(WeightMatrix(((1,), (Polynomial.of([0, 1]),))), S.e2().measure, S.e2().pair)
    with pytest.raises(RequiresRankOne):
        kernel_scalar(spec, 0, 0)


def test_L_and_R_examples():
    assert matrix_L(S.e1(1), 0, 2)[0, 0] == F(-1, 2)
    assert matrix_R(S.e1(1), 2, 0)[0, 0] == F(-1, 2)
    assert (matrix_L(S.e2(), F(5), F(5)) == identity(1)).all()
    assert (matrix_R(S.e2(), F(5), F(5)) == identity(2)).all()
    assert (matrix_L(S.e1(1), 3, 2) == matrix_L(S.e1(1), 3, 2, route="rh")).all()
    assert det(matrix_R(S.e2(), 3, 0)) == det(matrix_L(S.e2(), 0, 3))
    with pytest.raises(PoleOnSupport):
        matrix_L(S.e1(1), 3, 1)


@given(points, points)
def test_det_L_equals_det_R(y, z):
    spec = S.p2q2()
    if z in spec.measure.nodes or y == z:
        return
    assert det(matrix_L(spec, y, z)) == det(matrix_R(spec, z, y))
