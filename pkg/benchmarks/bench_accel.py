"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_accel.py [--repeat 5]

Covers the three float hot spots: LU determinant, LU solve and the
configuration enumeration behind the brute-force oracle.
"""

import argparse
import time

import numpy as np

from mopkit import _accel


def best_of(fn, repeat):
    fn()  # warm-up (includes JIT compilation on the numba side)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    b = rng.normal(size=(8, 3)).astype(complex)
    mats = [rng.normal(size=(6, 6)).astype(complex) for _ in range(2000)]
    F = rng.normal(size=(4, 14)).astype(complex)
    G = rng.normal(size=(4, 14)).astype(complex)
    r = rng.uniform(0.1, 1, size=14).astype(complex)
    return [
        ("det 6x6 x2000", lambda: [_accel.lu_det_nb(m) for m in mats],
         lambda: [_accel.lu_det_np(m) for m in mats]),
        ("solve 8x8 x2000", lambda: [_accel.lu_solve_nb(a, b, 1e-12) for _ in range(2000)],
         lambda: [_accel.lu_solve_np(a, b, 1e-12) for _ in range(2000)]),
        ("enumerate n=4 N=14", lambda: _accel.enum_sum_nb(F, G, r), lambda: _accel.enum_sum_np(F, G, r)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'case':<22}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, fast, slow in cases(np.random.default_rng(args.seed)):
        tf, ts = best_of(fast, args.repeat), best_of(slow, args.repeat)
        print(f"{name:<22}{tf:>12.5f}{ts:>12.5f}{ts / tf:>10.1f}")


if __name__ == "__main__":
    main()
