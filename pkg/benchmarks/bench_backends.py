#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Run: python benchmarks/bench_backends.py [--quick]
"""

import argparse
import time

from trapfun import _kernels_py
from trapfun.contours import crossing_point_lower, crossing_point_upper

try:
    from trapfun import _kernels_c
except ImportError:
    _kernels_c = None

CASES = [
    ("P(1, 1)       h=1/16", "pq_lower_sum",
     lambda k, h: k.pq_lower_sum(1.0, 1.0, crossing_point_lower(1.0, 1.0), h), 1.0 / 16),
    ("P(1000, 1000) h=1/64", "pq_lower_sum",
     lambda k, h: k.pq_lower_sum(1000.0, 1000.0, crossing_point_lower(1000.0, 1000.0), h), 1.0 / 64),
    ("Q(10, 10)     h=1/32", "q_upper_sum",
     lambda k, h: k.q_upper_sum(10.0, 10.0, crossing_point_upper(10.0, 10.0) / 10.0, h), 1.0 / 32),
    ("1/Gamma(10.5) h=1/32", "rgamma_sum",
     lambda k, h: k.rgamma_sum(10.5, 11.5, h), 1.0 / 32),
    ("C(0.1,0.1;100) h=1/32", "chf_sum",
     lambda k, h: k.chf_sum(0.1, 0.1, 100.0, False, h), 1.0 / 32),
    ("2F1 core (.3,.7;1.5;-2) h=1/32", "f21_sum",
     lambda k, h: k.f21_sum(0.3, 0.7, 0.8, -2.0, h), 1.0 / 32),
]


def best_of(fn, repeats, loops):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(loops):
            fn()
        best = min(best, (time.perf_counter() - t0) / loops)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="fewer repeats (CI smoke run)")
    args = ap.parse_args()
    repeats = 3 if args.quick else 7
    loops_c = 20 if args.quick else 200
    loops_p = 3 if args.quick else 20

    print(f"{'case':<32} {'pure':>12} {'compiled':>12} {'speedup':>9}")
    for label, _, call, h in CASES:
        t_pure = best_of(lambda: call(_kernels_py, h), repeats, loops_p)
        if _kernels_c is None:
            print(f"{label:<32} {t_pure * 1e6:>10.1f}us {'n/a':>12} {'n/a':>9}")
            continue
        t_comp = best_of(lambda: call(_kernels_c, h), repeats, loops_c)
        # identical algorithm, so the results must agree
        rp = call(_kernels_py, h)
        rc = call(_kernels_c, h)
        assert rp[2] == rc[2], (label, rp[2], rc[2])
        print(f"{label:<32} {t_pure * 1e6:>10.1f}us {t_comp * 1e6:>10.1f}us "
              f"{t_pure / t_comp:>8.1f}x")
    if _kernels_c is None:
        print("\ncompiled extension not built; showing pure-Python timings only")


if __name__ == "__main__":
    main()
