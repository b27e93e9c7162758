"""Compare the compiled census kernel against the pure-Python fallback.

Usage: python3 benchmarks/bench_census.py [max_n]
"""

import sys
import time

from bellhop import _census_py

try:
    from bellhop import _fastcensus
except ImportError:
    _fastcensus = None


def timeit(fn, n):
    t0 = time.perf_counter()
    result = fn(n)
    return time.perf_counter() - t0, result


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 12
    print(f"{'n':>3} {'partitions':>12} {'python (s)':>12} {'native (s)':>12} {'speedup':>8}")
    for n in range(8, max_n + 1):
        t_py, counts_py = timeit(_census_py.census_counts, n)
        total = sum(counts_py.values())
        if _fastcensus is not None:
            t_c, counts_c = timeit(_fastcensus.census_counts, n)
            assert counts_c == counts_py, f"kernel mismatch at n={n}"
            print(f"{n:>3} {total:>12} {t_py:>12.4f} {t_c:>12.4f} {t_py / t_c:>7.1f}x")
        else:
            print(f"{n:>3} {total:>12} {t_py:>12.4f} {'n/a':>12} {'':>8}")


if __name__ == "__main__":
    main()
