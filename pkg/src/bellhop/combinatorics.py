"""Exact integer combinatorics: Stirling and Bell numbers, Bell polynomials,
truncated Dobinski evaluation with certified tail bounds, and set-partition
enumeration with the block-size census.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import math

import mpmath

from .errors import ResourceLimitError
from .hopf import Monomial

ENUMERATION_LIMIT = 14

try:
    from bellhop._fastcensus import census_counts as _census_counts

    HAVE_NATIVE_CENSUS = True
except ImportError:  # extension not built; pure-Python fallback
    from bellhop._census_py import census_counts as _census_counts

    HAVE_NATIVE_CENSUS = False


# --------------------------------------------------------------------------
# Stirling / Bell numbers
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    # row S(n, 0..n) via S(n,k) = k S(n-1,k) + S(n-1,k-1)
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = k * (prev[k] if k <= n - 1 else 0) + prev[k - 1]
    return tuple(row)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind; 0 when k > n or (k=0, n>0)."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        return 0
    return _stirling_row(n)[k]


def bell(n: int) -> int:
    """Number of partitions of an n-element set; bell(0) = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(_stirling_row(n))


def bell_polynomial(n: int, y) -> Fraction:
    """Exact evaluation of sum_k S(n,k) y^k at rational y."""
    y = Fraction(y)
    row = _stirling_row(n)
    acc = Fraction(0)
    power = Fraction(1)
    for k in range(n + 1):
        if k > 0:
            power *= y
        acc += row[k] * power
    return acc


def partition_count(n: int) -> int:
    """Number of integer partitions of n, by the parts-bounded recurrence.

    Independent of the census path; used to cross-check its key count.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    # p(n, k) = partitions of n into parts <= k
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        table[0][k] = 1
    for m in range(1, n + 1):
        for k in range(1, n + 1):
            table[m][k] = table[m][k - 1] + (table[m - k][k] if m >= k else 0)
    return table[n][n] if n > 0 else 1


# --------------------------------------------------------------------------
# Dobinski evaluation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DobinskiResult:
    """Truncated Dobinski value with a certified bound on the omitted tail."""

    value: mpmath.mpf
    tail_bound: mpmath.mpf
    terms_used: int
    precision: int


def _dobinski_tail_start(n: int, K: int, y_ceiling: int) -> int:
    # From index k0 on, successive terms k^n y^k / k! shrink by at least 1/2:
    # the ratio is (1+1/k)^n * y/(k+1) <= e^(1/2) * y/(k+1) once k >= 2n,
    # and e^(1/2)/(k+1) <= 1/2 once k >= 3 (for y <= 1; scale by y otherwise).
    return max(K + 1, 2 * n, 3, 4 * y_ceiling)


def dobinski_bell(n: int, K: int, precision: int = 50) -> DobinskiResult:
    """(1/e) sum_{k=0}^{K} k^n / k!  with a certified tail bound.

    The exact Bell number lies within value +/- tail_bound up to
    working-precision representation error.
    """
    return dobinski_bell_poly(n, 1, K, precision)


def dobinski_bell_poly(n: int, y, K: int, precision: int = 50) -> DobinskiResult:
    """e^{-y} sum_{k=0}^{K} (k^n / k!) y^k  with a certified tail bound."""
    if K < 1:
        raise ValueError("K must be >= 1")
    if precision < 10:
        raise ValueError("precision below 10 digits gives a meaningless certificate")
    y = Fraction(y)
    if y <= 0:
        raise ValueError("y must be positive")

    def term(k: int) -> Fraction:
        kn = 1 if (k == 0 and n == 0) else k**n  # 0^0 = 1 by convention
        return Fraction(kn) * y**k / math.factorial(k)

    partial = sum(term(k) for k in range(K + 1))
    k0 = _dobinski_tail_start(n, K, -(-y.numerator // y.denominator))
    # explicit terms up to the geometric regime, then a factor-2 cap
    tail_frac = sum(term(k) for k in range(K + 1, k0)) + 2 * term(k0)
    # Padding so the prefactor multiplication's roundoff stays far below
    # the certified truncation tail, however tight that tail is.
    ratio = partial / tail_frac
    guard = 10 + len(str(1 + ratio.numerator // ratio.denominator))
    with mpmath.workdps(precision + guard):
        prefactor = mpmath.e ** (-mpmath.mpf(y.numerator) / y.denominator)
        value = prefactor * partial.numerator / partial.denominator
        tail = prefactor * tail_frac.numerator / tail_frac.denominator
        out_value = +value
        out_tail = +tail
    return DobinskiResult(out_value, out_tail, K + 1, precision)


# --------------------------------------------------------------------------
# Set partitions and the diagram census
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1..n}; blocks are canonically sorted by least element."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise ValueError("empty block")
            if seen.intersection(block):
                raise ValueError("blocks are not disjoint")
            seen.update(block)
        if seen != set(range(1, self.n + 1)):
            raise ValueError(f"blocks do not cover 1..{self.n}")
        canonical = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", canonical)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(b) for b in self.blocks))

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


@dataclass(frozen=True)
class DiagramCensus:
    """Partitions of {1..n} grouped by block-size multiset, keyed by the
    monomial coding a size-k block as the letter y_k."""

    n: int
    counts: dict[Monomial, int]

    def total(self) -> int:
        return sum(self.counts.values())


def _check_limit(n: int, limit: int):
    if n < 1:
        raise ValueError("n must be positive")
    if n > limit:
        raise ResourceLimitError(
            f"set-partition enumeration for n={n} exceeds the limit {limit}"
        )


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length n, lexicographically."""
    a = [0] * n
    b = [0] * n  # running prefix maxima
    while True:
        yield tuple(a)
        j = n - 1
        while j > 0 and a[j] > b[j - 1]:
            j -= 1
        if j == 0:
            return
        a[j] += 1
        b[j] = max(b[j - 1], a[j])
        for i in range(j + 1, n):
            a[i] = 0
            b[i] = b[i - 1]


def enumerate_set_partitions(n: int, limit: int = ENUMERATION_LIMIT) -> Iterator[SetPartition]:
    """Every partition of {1..n} exactly once, in restricted-growth-string
    lexicographic order (blocks come out sorted by least element)."""
    _check_limit(n, limit)
    for rgs in restricted_growth_strings(n):
        nblocks = max(rgs) + 1
        blocks: list[list[int]] = [[] for _ in range(nblocks)]
        for i, v in enumerate(rgs, start=1):
            blocks[v].append(i)
        yield SetPartition(n, tuple(tuple(b) for b in blocks))


def diagram_census(n: int, limit: int = ENUMERATION_LIMIT) -> DiagramCensus:
    """Tally all partitions of {1..n} by block-size multiset.

    Uses the compiled kernel when available; the pure-Python kernel is the
    fallback and the reference for tests.
    """
    _check_limit(n, limit)
    raw = _census_counts(n)
    return DiagramCensus(n, {Monomial(sizes): count for sizes, count in raw.items()})
