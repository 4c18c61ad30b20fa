"""Benchmark the compiled quadratic-core kernels against the pure-Python
fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from foldcore._kernels import fallback

try:
    from foldcore._kernels import _quad as compiled
except ImportError:
    compiled = None

OVERFLOW = 1e8


def timeit(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


CASES = [
    ("quad_orbit (1e6 steps)",
     lambda m: m.quad_orbit(-1.0, 3.9, 0.7, 1_000_000, OVERFLOW)),
    ("quad_lyapunov (1e6 samples)",
     lambda m: m.quad_lyapunov(-1.0, 3.9, 0.7, 1000, 1_000_000, OVERFLOW)),
    ("quad_sweep (600 b, 2000+200+4000)",
     lambda m: m.quad_sweep(-1.0, np.arange(2.8, 4.0, 0.002), 2000, 200, 4000, OVERFLOW)),
    ("quad_pair_sep (1e6 steps)",
     lambda m: m.quad_pair_sep(-1.0, 3.9, 0.7, 1e-10, 1_000_000, 0.1, OVERFLOW)),
]


def main():
    print(f"{'kernel':38s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, call in CASES:
        t_py, _ = timeit(call, fallback)
        if compiled is not None:
            t_c, _ = timeit(call, compiled)
            print(f"{name:38s} {t_py:9.4f}s {t_c:9.4f}s {t_py / t_c:7.1f}x")
        else:
            print(f"{name:38s} {t_py:9.4f}s {'n/a':>10s} {'n/a':>8s}")
    if compiled is None:
        print("compiled extension not available; build with pip install -e .")


if __name__ == "__main__":
    main()
