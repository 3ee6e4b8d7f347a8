from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

import _suite as S
from mopkit.errors import NegativeComponent, NonNormal, PoleOnSupport, ShapeError
from mopkit.linalg import det, identity
from mopkit.mop import (EnsembleSpec, MultiIndexPair, biorthogonal_bases, block_hankel, chain_indices,
                        chain_pair, dual_spec, integrate_pairing, is_normal, rh_blocks, rh_inverse,
                        validate_chain, vector_op_type1, vector_op_type2)


def coeffs(pv):
    return [p.coeffs for p in pv.components]


def test_block_hankel_examples():
    assert block_hankel(S.e1(2)).tolist() == [[1, F(1, 2)], [F(1, 2), F(1, 2)]]
    assert block_hankel(S.e2()).tolist() == [[1, 0], [0, F(2, 3)]]
    assert block_hankel(S.e1(1)).tolist() == [[1]]


def test_normality_examples():
    assert is_normal(S.e1(2))
    assert not is_normal(S.e1(3))
    assert is_normal(S.e2())


def test_pair_validation():
    with pytest.raises(ShapeError):
        MultiIndexPair((2,), (0,))
    with pytest.raises(NegativeComponent):
        MultiIndexPair((-1, 2), (1,))
    with pytest.raises(ShapeError):
        EnsembleSpec(S.e1().weights, S.e1().measure, MultiIndexPair((2,), (1,)))


def test_type2_examples():
    assert coeffs(vector_op_type2(S.e1(), MultiIndexPair((2,), (1,)), 0)) == [(F(-1, 2), 1)]
    assert coeffs(vector_op_type2(S.e2(), MultiIndexPair((2, 1), (2,)), 0)) == [(0, 1), (-1,)]
    assert coeffs(vector_op_type2(S.e2(), MultiIndexPair((1, 2), (2,)), 1)) == [(F(-2, 3),), (0, 1)]


def test_type1_examples():
    assert coeffs(vector_op_type1(S.e1(), MultiIndexPair((1,), (0,)), 0)) == [(1,)]
    assert coeffs(vector_op_type1(S.e1(), MultiIndexPair((2,), (1,)), 0)) == [(-2, 4)]


def test_type2_singular_system():
    with pytest.raises(NonNormal):
        vector_op_type2(S.e1(3), MultiIndexPair((4,), (3,)), 0)


def test_rh_matrix_examples():
    b = rh_blocks(S.e1())
    M = b.evaluate(2)
    assert M.tolist() == [[F(3, 2), F(1, 8)], [1, F(3, 4)]]
    assert det(M) == 1
    m11 = rh_blocks(S.e2()).m11(F(1))
    assert m11.tolist() == [[1, -1], [F(-2, 3), 1]] and det(m11) == F(1, 3)
    with pytest.raises(PoleOnSupport):
        b.evaluate(1)
    with pytest.raises(NonNormal):
        rh_blocks(S.e1(3))


def test_zero_component_convention():
    spec = S.e1(1).with_pair(MultiIndexPair((0,), (0,)))
    b = rh_blocks(spec)
    assert b.m21(F(3))[0, 0] == 0 and b.m22(F(3))[0, 0] == 1
    assert b.m11(F(3))[0, 0] == 1
    assert det(b.evaluate(F(3))) == 1


@pytest.mark.parametrize("spec", S.reference_suite()[::4], ids=lambda s: str(s.pair))
def test_inverse_from_dual(spec):
    for t in S.TS[:3]:
        assert (rh_inverse(spec, t) @ rh_blocks(spec).evaluate(t) == identity(spec.p + spec.q)).all()
        assert det(rh_blocks(spec).evaluate(t)) == 1


def test_dual_is_involution():
    s = S.e2()
    assert dual_spec(dual_spec(s)) == s
    d = dual_spec(s)
    assert (d.p, d.q) == (1, 2)
    y = F(7, 3)
    assert det(rh_blocks(d).m11(y)) == y * y - F(2, 3)
    assert det(rh_blocks(S.e1()).m22(2)) == det(rh_blocks(dual_spec(S.e1())).m22(2)) == F(3, 4)


def test_chain_examples():
    assert chain_indices(MultiIndexPair((1,), (1,)), 1) == MultiIndexPair((2,), (2,))
    assert chain_indices(MultiIndexPair((1, 1), (2,)), 1) == MultiIndexPair((2, 2), (4,))
    assert chain_indices(MultiIndexPair((2,), (2,)), -1) == MultiIndexPair((1,), (1,))
    with pytest.raises(NegativeComponent):
        chain_indices(MultiIndexPair((1,), (1,)), -2)


pairs = st.integers(1, 3).flatmap(lambda p: st.integers(1, 3).flatmap(
    lambda q: st.tuples(st.lists(st.integers(0, 3), min_size=p, max_size=p),
                        st.lists(st.integers(1, 3), min_size=q, max_size=q))))


@given(pairs, st.integers(1, 3))
def test_chain_steps_follow_rule(raw, k):
    nvec, mvec = raw
    extra = sum(mvec) - sum(nvec)
    if extra < 0:
        return
    nvec = list(nvec)
    nvec[0] += extra
    base = MultiIndexPair(tuple(nvec), tuple(mvec))
    p, q = base.p, base.q
    up = chain_indices(base, k)
    assert up.nvec == tuple(v + k for v in base.nvec)
    assert sum(up.mvec) == sum(base.mvec) + k * p
    assert validate_chain({j: chain_indices(base, j) for j in range(1, k + 1)}, base)
    depth = min(min(mvec), k)
    down = chain_indices(base, -depth) if sum(base.nvec) >= depth * q else None
    if down is not None:
        assert down.mvec == tuple(v - depth for v in base.mvec)


def test_chain_override():
    base = MultiIndexPair((1, 1), (2,))
    override = {-1: MultiIndexPair((1, 0), (1,))}
    assert chain_pair(base, -1, override) == MultiIndexPair((1, 0), (1,))
    assert chain_pair(base, 1, override) == chain_indices(base, 1)
    with pytest.raises(ShapeError):
        validate_chain({-1: MultiIndexPair((2, 0), (1,))}, base)


@pytest.mark.parametrize("spec", [S.e1(1), S.e1(2), S.e2(), S.p2q2()], ids=str)
def test_biorthogonal_bases(spec):
    Ps, Qs = biorthogonal_bases(spec)
    gram = [[integrate_pairing(spec, P, Q) for Q in Qs] for P in Ps]
    assert gram == identity(len(Ps)).tolist()


def test_m11_rows_monic_and_orthogonal():
    for spec in S.reference_suite():
        b = rh_blocks(spec)
        for k, P in enumerate(b.type2):
            assert P.components[k].degree == spec.pair.nvec[k]
            assert P.components[k].coeffs[-1] == 1
