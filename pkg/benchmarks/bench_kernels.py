"""Compare the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--agents 30] [--dim 10] [--repeat 200]

Reports the best time per call for each backend, the speedup, and whether
the outputs agree (bit-exact for the sweep, to rounding for objectives).
"""

import argparse
import timeit

import numpy as np

from kmgwo._kernels import _pykernels

try:
    from kmgwo._kernels import _ckernels
except ImportError:
    _ckernels = None


def bench(label, fn_py, fn_c, args, repeat, exact):
    t_py = min(timeit.repeat(lambda: fn_py(*args), number=1, repeat=repeat))
    line = f"{label:<16} numpy {t_py * 1e6:10.1f} us"
    if fn_c is None:
        print(line + "   (compiled backend not built)")
        return
    t_c = min(timeit.repeat(lambda: fn_c(*args), number=1, repeat=repeat))
    a, b = fn_py(*args), fn_c(*args)
    same = np.array_equal(a, b) if exact else np.allclose(a, b, rtol=1e-12, atol=0.0)
    print(line + f"   cython {t_c * 1e6:10.1f} us   speedup {t_py / t_c:6.1f}x   agree={same}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--agents", type=int, default=30)
    ap.add_argument("--dim", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    n, d = args.agents, args.dim
    pos = rng.uniform(-100, 100, (n, d))
    lead = rng.uniform(-100, 100, (3, d))
    draws = rng.random((n, d, 6))
    lo, hi = np.full(d, -100.0), np.full(d, 100.0)
    c = _ckernels

    bench("gwo_sweep", _pykernels.gwo_sweep, c and c.gwo_sweep, (pos, lead, 1.3, draws, lo, hi), args.repeat, True)
    X18 = rng.uniform(-4, 4, (n, 18))
    bench("lennard_jones", _pykernels.lennard_jones, c and c.lennard_jones, (X18,), args.repeat, False)
    X9 = rng.uniform(-8192, 8192, (n, 9))
    bench("chebyshev", _pykernels.chebyshev, c and c.chebyshev, (X9,), args.repeat, False)


if __name__ == "__main__":
    main()
