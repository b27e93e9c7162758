"""Truncated exponential-generating-function arithmetic with exact rational
coefficients, plus the moment/connected-moment (W <-> V) transforms.

A series of order N stores a_0..a_N and represents sum a_n x^n / n!.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import bell


@dataclass(frozen=True)
class EGFSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_sequence(cls, seq: Sequence) -> "EGFSeries":
        return cls(tuple(seq))

    @classmethod
    def identity(cls, order: int) -> "EGFSeries":
        """The series 1 (neutral for multiplication)."""
        return cls((Fraction(1),) + (Fraction(0),) * order)

    @classmethod
    def zero(cls, order: int) -> "EGFSeries":
        return cls((Fraction(0),) * (order + 1))

    def __mul__(self, other: "EGFSeries") -> "EGFSeries":
        return egf_mul(self, other)

    def __add__(self, other: "EGFSeries") -> "EGFSeries":
        n = min(self.order, other.order)
        return EGFSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    def __eq__(self, other) -> bool:
        return isinstance(other, EGFSeries) and self.coeffs == other.coeffs

    def truncate(self, order: int) -> "EGFSeries":
        if order >= self.order:
            return self
        return EGFSeries(self.coeffs[: order + 1])

    def to_json(self) -> str:
        return json.dumps(
            {"order": self.order, "coefficients": [str(c) for c in self.coeffs]}
        )

    @classmethod
    def from_json(cls, text: str) -> "EGFSeries":
        data = json.loads(text)
        coeffs = tuple(Fraction(c) for c in data["coefficients"])
        if len(coeffs) != data["order"] + 1:
            raise ValueError("coefficient count does not match order")
        return cls(coeffs)


def egf_mul(a: EGFSeries, b: EGFSeries) -> EGFSeries:
    """Binomial convolution: c_n = sum_k C(n,k) a_k b_{n-k}."""
    n = min(a.order, b.order)
    coeffs = [
        sum((math.comb(m, k) * a.coeffs[k] * b.coeffs[m - k] for k in range(m + 1)),
            Fraction(0))
        for m in range(n + 1)
    ]
    return EGFSeries(tuple(coeffs))


def _exp_coeffs(c: Sequence, zero, one) -> list:
    # a_0 = 1;  a_n = sum_{k=1..n} C(n-1, k-1) c_k a_{n-k}
    n = len(c) - 1
    a = [one] + [zero] * n
    for m in range(1, n + 1):
        acc = zero
        for k in range(1, m + 1):
            acc = acc + math.comb(m - 1, k - 1) * c[k] * a[m - k]
        a[m] = acc
    return a


def _log_coeffs(a: Sequence, zero) -> list:
    # inversion of the exp recurrence; c_0 = 0
    n = len(a) - 1
    c = [zero] * (n + 1)
    for m in range(1, n + 1):
        acc = a[m]
        for k in range(1, m):
            acc = acc - math.comb(m - 1, k - 1) * c[k] * a[m - k]
        c[m] = acc
    return c


def egf_exp(c: EGFSeries) -> EGFSeries:
    """exp of a series with zero constant term, exact, same order."""
    if c.coeffs[0] != 0:
        raise ValueError("egf_exp needs a zero constant term")
    return EGFSeries(tuple(_exp_coeffs(c.coeffs, Fraction(0), Fraction(1))))


def egf_log(a: EGFSeries) -> EGFSeries:
    """log of a series with constant term 1; inverse of egf_exp."""
    if a.coeffs[0] != 1:
        raise ValueError("egf_log needs constant term 1")
    return EGFSeries(tuple(_log_coeffs(a.coeffs, Fraction(0))))


def bell_egf(order: int) -> EGFSeries:
    """The series whose n-th coefficient is the n-th Bell number."""
    return EGFSeries(tuple(Fraction(bell(n)) for n in range(order + 1)))


def w_to_v(w: Sequence) -> list:
    """Connected moments V_1..V_N from moments W_0..W_N (W_0 must be 1).

    The W series is the exponential of the V series.  Exact for rational
    input; complex/float input stays in that arithmetic.
    """
    if not w or w[0] != 1:
        raise ValueError("w_to_v needs W_0 = 1")
    exact = all(isinstance(x, (int, Fraction)) for x in w)
    if exact:
        seq = [Fraction(x) for x in w]
        return _log_coeffs(seq, Fraction(0))[1:]
    seq = [complex(x) for x in w]
    return _log_coeffs(seq, 0j)[1:]


def v_to_w(v: Sequence) -> list:
    """Moments W_0..W_N from connected moments V_1..V_N; inverts w_to_v."""
    exact = all(isinstance(x, (int, Fraction)) for x in v)
    if exact:
        seq = [Fraction(0)] + [Fraction(x) for x in v]
        return _exp_coeffs(seq, Fraction(0), Fraction(1))
    seq = [0j] + [complex(x) for x in v]
    return _exp_coeffs(seq, 0j, 1 + 0j)
