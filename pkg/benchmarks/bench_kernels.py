"""Compare the compiled and pure-Python standard-monomial counters.

    python benchmarks/bench_kernels.py --repeat 3
"""

import argparse
import time

from bubblekit import kernels

CASES = {
    "A1 m=400": ([(0, 0, 2)], [1, 1, 1], 399),
    "A3 m=400": ([(0, 0, 4)], [2, 2, 1], 799),
    "ODP m=200": ([(2, 0, 0, 0)], [1, 1, 1, 1], 199),
    "total space m=120": ([(0, 0, 0, 4), (1, 0, 0, 3)], [1, 2, 2, 1], 119),
    "mixed leads": ([(0, 0, 0, 3), (1, 1, 0, 0), (0, 2, 1, 0)], [2, 3, 1, 5], 400),
}


def timed(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return value, best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.count_standard_compiled is None:
        print("compiled extension not built; only the Python backend is timed")
    print(f"{'case':<20}{'count':>12}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name, case in CASES.items():
        n_py, t_py = timed(kernels.count_standard_py, case, args.repeat)
        if kernels.count_standard_compiled is None:
            print(f"{name:<20}{n_py:>12}{t_py:>12.4f}{'-':>12}{'-':>10}")
            continue
        n_c, t_c = timed(kernels.count_standard_compiled, case, args.repeat)
        assert n_c == n_py, (name, n_c, n_py)
        print(f"{name:<20}{n_c:>12}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
