"""Pure-Python census kernel: fallback when the compiled extension is absent.

Iterates every restricted growth string of length n in lexicographic order
and tallies partitions by their block-size multiset.
"""

from __future__ import annotations


def census_counts(n: int) -> dict[tuple[int, ...], int]:
    """Counts of set partitions of {1..n} keyed by sorted block sizes."""
    if n < 1:
        raise ValueError("n must be positive")
    a = [0] * n          # restricted growth string: a[j] <= b[j-1] + 1
    b = [0] * n          # b[j] = max(a[0..j])
    counts: dict[tuple[int, ...], int] = {}
    while True:
        nblocks = b[n - 1] + 1
        sizes = [0] * nblocks
        for v in a:
            sizes[v] += 1
        key = tuple(sorted(sizes))
        counts[key] = counts.get(key, 0) + 1
        j = n - 1
        while j > 0 and a[j] > b[j - 1]:
            j -= 1
        if j == 0:
            return counts
        a[j] += 1
        b[j] = max(b[j - 1], a[j])
        for i in range(j + 1, n):
            a[i] = 0
            b[i] = b[i - 1]
