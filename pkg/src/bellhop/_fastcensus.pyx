# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled census kernel: same contract as bellhop._census_py.census_counts.

The restricted-growth-string sweep visits B(n) partitions; keeping the
inner loop in C makes n = 13..14 practical.
"""

from libc.stdlib cimport malloc, free


def census_counts(int n):
    """Counts of set partitions of {1..n} keyed by sorted block sizes."""
    if n < 1:
        raise ValueError("n must be positive")
    cdef int *a = <int *> malloc(n * sizeof(int))
    cdef int *b = <int *> malloc(n * sizeof(int))
    cdef int *sizes = <int *> malloc(n * sizeof(int))
    if a == NULL or b == NULL or sizes == NULL:
        free(a); free(b); free(sizes)
        raise MemoryError()
    cdef dict counts = {}
    cdef int i, j, v, nblocks, tmp
    cdef tuple key
    cdef object cur
    for i in range(n):
        a[i] = 0
        b[i] = 0
    try:
        while True:
            nblocks = b[n - 1] + 1
            for i in range(nblocks):
                sizes[i] = 0
            for i in range(n):
                sizes[a[i]] += 1
            # insertion sort; block counts are tiny
            for i in range(1, nblocks):
                tmp = sizes[i]
                j = i - 1
                while j >= 0 and sizes[j] > tmp:
                    sizes[j + 1] = sizes[j]
                    j -= 1
                sizes[j + 1] = tmp
            key = tuple([sizes[i] for i in range(nblocks)])
            cur = counts.get(key)
            if cur is None:
                counts[key] = 1
            else:
                counts[key] = cur + 1
            j = n - 1
            while j > 0 and a[j] > b[j - 1]:
                j -= 1
            if j == 0:
                return counts
            a[j] += 1
            b[j] = b[j - 1] if b[j - 1] > a[j] else a[j]
            for i in range(j + 1, n):
                a[i] = 0
                b[i] = b[i - 1]
    finally:
        free(a)
        free(b)
        free(sizes)
