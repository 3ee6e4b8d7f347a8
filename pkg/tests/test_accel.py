import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mopkit import _accel

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")

finite = st.floats(min_value=-5, max_value=5, allow_nan=False)


@needs_numba
@given(st.integers(1, 5).flatmap(lambda n: st.lists(finite, min_size=n * n, max_size=n * n)))
def test_det_paths_agree(vals):
    n = int(round(len(vals) ** 0.5))
    a = np.array(vals, dtype=complex).reshape(n, n)
    ref = np.linalg.det(a)
    for d in (_accel.lu_det_nb(a.copy()), _accel.lu_det_np(a)):
        assert abs(d - ref) <= 1e-9 * max(1.0, abs(ref)) * 10 ** n


@needs_numba
def test_solve_paths_agree():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    b = rng.normal(size=(6, 2)).astype(complex)
    x1, ok1 = _accel.lu_solve_nb(a, b, 1e-12)
    x2, ok2 = _accel.lu_solve_np(a, b, 1e-12)
    assert ok1 and ok2
    assert np.allclose(x1, np.linalg.solve(a, b)) and np.allclose(x2, x1)
    sing = np.ones((3, 3), dtype=complex)
    assert not _accel.lu_solve_nb(sing, np.ones((3, 1), dtype=complex), 1e-12)[1]
    assert not _accel.lu_solve_np(sing, np.ones((3, 1), dtype=complex), 1e-12)[1]


@needs_numba
def test_enumeration_paths_agree():
    rng = np.random.default_rng(5)
    F = rng.normal(size=(3, 6)).astype(complex)
    G = rng.normal(size=(3, 6)).astype(complex)
    r = rng.uniform(0.1, 1, size=6).astype(complex)
    a, b = _accel.enum_sum_nb(F, G, r), _accel.enum_sum_np(F, G, r)
    assert abs(a - b) <= 1e-10 * max(1.0, abs(a))
    assert _accel.enum_sum_np(F[:0], G[:0], r) == 1


def test_env_flag_selects_numpy():
    code = "from mopkit import _accel; print(_accel.active())"
    env = dict(os.environ, MOPKIT_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True).stdout.strip()
    assert out == "numpy"


def test_numpy_path_end_to_end(monkeypatch):
    from fractions import Fraction

    import _suite as S
    from mopkit.averages import avg_general
    from mopkit.linalg import ComplexFloat
    from mopkit.oracles import oracle_enumerate

    monkeypatch.setenv("MOPKIT_NUMBA", "0")
    assert _accel.active() == "numpy"
    spec = S.p2q2()
    fs = spec.embed(ComplexFloat())
    ys, zs = (Fraction(5, 2),), (Fraction(11, 2),)
    exact = complex(avg_general(spec, ys, zs))
    assert abs(avg_general(fs, ys, zs) - exact) <= 1e-9 * abs(exact)
    assert abs(oracle_enumerate(fs, ys, zs) - exact) <= 1e-9 * abs(exact)
