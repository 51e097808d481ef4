"""Compare the numba and pure-numpy GF(2) elimination kernels.

Usage: python3 benchmarks/bench_gf2.py [--sizes 16,32,64,128] [--repeat 20]

Both kernels are checked for identical output before timing.  The numba
kernel is warmed up once so compilation is excluded.
"""

import argparse
import time

import numpy as np

from zxsearch._accel import NUMBA_AVAILABLE
from zxsearch.oracle._gf2 import solve_gf2_numba, solve_gf2_numpy


def best_of(fn, a, b, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(a, b)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="16,32,64,128")
    p.add_argument("--repeat", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    if not NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed")

    rng = np.random.default_rng(args.seed)
    warm = rng.integers(0, 2, (4, 4), dtype=np.uint8)
    solve_gf2_numba(warm, warm)

    print(f"{'n':>5} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for n in (int(s) for s in args.sizes.split(",")):
        # square systems with n right-hand sides, as in one gflow layer
        a = rng.integers(0, 2, (n, n), dtype=np.uint8)
        b = np.eye(n, dtype=np.uint8)
        ok1, x1 = solve_gf2_numpy(a, b)
        ok2, x2 = solve_gf2_numba(a, b)
        assert np.array_equal(ok1, ok2) and np.array_equal(x1, x2)
        t_np = best_of(solve_gf2_numpy, a, b, args.repeat)
        t_nb = best_of(solve_gf2_numba, a, b, args.repeat)
        print(f"{n:>5} {t_np * 1e3:>10.3f} {t_nb * 1e3:>10.3f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
