"""Numeric routes to the free-boson canonical partition function.

The radial coherent-state integral reduces the 2-D trace to
Z = integral_0^inf exp(-alpha y) dy with alpha = 1 - e^(-beta epsilon);
this module evaluates it in closed form, by cutoff-regularized quadrature,
and through the truncated Bell-polynomial expansion, and it reproduces the
term-wise divergence of the illegal sum/integral interchange.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .boson import BosonExpression, CoherentParam, word_moments
from .combinatorics import _stirling_row
from .egf import w_to_v
from .errors import QuadratureError


@dataclass(frozen=True)
class ModelParams:
    """beta (inverse temperature) and epsilon (energy scale), both > 0."""

    beta: float
    epsilon: float

    def __post_init__(self):
        if self.beta <= 0 or self.epsilon <= 0:
            raise ValueError("beta and epsilon must be positive")

    @property
    def x(self) -> float:
        return -self.beta * self.epsilon

    @property
    def alpha(self) -> float:
        return -math.expm1(self.x)  # 1 - e^x, in (0, 1)


@dataclass(frozen=True)
class QuadratureConfig:
    cutoff: float
    method: str = "analytic"        # "analytic" | "gauss"
    panels: int = 64
    points_per_panel: int = 16
    tolerance: float = 1e-10

    def __post_init__(self):
        if self.cutoff <= 0:
            raise ValueError("cutoff must be positive")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.method not in ("analytic", "gauss"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.panels < 1 or self.points_per_panel < 2:
            raise ValueError("need at least 1 panel and 2 points per panel")


@dataclass(frozen=True)
class DivergenceReport:
    """Growth of one term of the illegal interchange as the cutoff rises."""

    n: int
    alpha: float
    cutoffs: tuple[float, ...]
    values: tuple[float, ...]
    monotone: bool


def closed_form_Z(p: ModelParams) -> float:
    """1 / (1 - e^(-beta epsilon))."""
    return 1.0 / p.alpha


def integrand(y: float, p: ModelParams) -> float:
    """exp(-alpha y): the Bell-polynomial generating function at (x, y)."""
    if y < 0:
        raise ValueError("y must be nonnegative")
    return math.exp(-p.alpha * y)


def _composite_gauss(f, lo: float, hi: float, panels: int, points: int) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(points)
    edges = np.linspace(lo, hi, panels + 1)
    total = 0.0
    for i in range(panels):
        a, b = edges[i], edges[i + 1]
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        ys = mid + half * nodes
        total += half * float(np.dot(weights, f(ys)))
    return total


def regularized_Z(p: ModelParams, q: QuadratureConfig) -> tuple[float, float]:
    """integral_0^M exp(-alpha y) dy, with an error estimate.

    The analytic route returns (1 - e^(-alpha M)) / alpha; the quadrature
    route integrates numerically and Richardson-checks against doubled
    panels.  Converges to closed_form_Z at rate e^(-alpha M) / alpha.
    """
    alpha, M = p.alpha, q.cutoff
    analytic = -math.expm1(-alpha * M) / alpha
    if q.method == "analytic":
        return analytic, abs(analytic) * 1e-15
    f = lambda ys: np.exp(-alpha * ys)
    coarse = _composite_gauss(f, 0.0, M, q.panels, q.points_per_panel)
    fine = _composite_gauss(f, 0.0, M, 2 * q.panels, q.points_per_panel)
    estimate = abs(fine - coarse)
    if estimate > q.tolerance:
        raise QuadratureError("regularized_Z quadrature", fine, estimate)
    return fine, estimate


def termwise_partial(n: int, p: ModelParams, M: float) -> float:
    """n-th term of the illegal interchange, cut off at M:
    (-alpha)^n / n! * M^(n+1) / (n+1).  Unbounded in M for every fixed n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if M <= 0:
        raise ValueError("M must be positive")
    return (-p.alpha) ** n / math.factorial(n) * M ** (n + 1) / (n + 1)


def divergence_report(n: int, p: ModelParams, cutoffs: Sequence[float]) -> DivergenceReport:
    """termwise_partial at each cutoff, flagging strict growth in magnitude."""
    cutoffs = tuple(sorted(cutoffs))
    values = tuple(termwise_partial(n, p, M) for M in cutoffs)
    mags = [abs(v) for v in values]
    monotone = all(a < b for a, b in zip(mags, mags[1:]))
    return DivergenceReport(n, p.alpha, cutoffs, values, monotone)


def regularized_series_Z(p: ModelParams, M: float, N: int) -> float:
    """sum_{n=0}^{N} (-alpha)^n / n! * M^(n+1) / (n+1).

    The legal order of operations: finite cutoff first, so summation and
    integration commute; as N grows this converges to
    (1 - e^(-alpha M)) / alpha at fixed M.
    """
    if M <= 0:
        raise ValueError("M must be positive")
    if N < 0:
        raise ValueError("N must be nonnegative")
    terms = []
    t = float(M)  # n = 0 term
    for n in range(N + 1):
        terms.append(t)
        t = t * (-p.alpha * M) / (n + 2)  # term ratio: (-alpha M) / (n+2)
    return math.fsum(terms)


def _bell_poly_coeffs(x: float, N: int) -> list[Fraction]:
    """g_k = sum_{n=k}^{N} S(n,k) x^n / n!, so that
    sum_{n<=N} B_n(y) x^n/n! = sum_k g_k y^k.  Exact in x."""
    xf = Fraction(x)
    rows = [_stirling_row(n) for n in range(N + 1)]
    xpow = [Fraction(1)]
    for _ in range(N):
        xpow.append(xpow[-1] * xf)
    fact = [math.factorial(n) for n in range(N + 1)]
    gs = []
    for k in range(N + 1):
        g = Fraction(0)
        for n in range(k, N + 1):
            s = rows[n][k] if k <= n else 0
            if s:
                g += s * xpow[n] / fact[n]
        gs.append(g)
    return gs


def combinatorial_Z(
    p: ModelParams,
    M: float,
    N: int,
    panels: int = 64,
    points_per_panel: int = 16,
    tolerance: float = 1e-8,
) -> float:
    """Numerically integrate the order-N truncation of the Bell-polynomial
    sum, sum_{n<=N} B_n(y) x^n / n!, over [0, M].

    Converges to closed_form_Z as M and N grow jointly (N first).  The
    truncation is an alternating series in n whose terms grow with both
    |x| y and N; at fixed N the usable cutoff M is limited accordingly.
    """
    if M <= 0:
        raise ValueError("M must be positive")
    if N < 0:
        raise ValueError("N must be nonnegative")
    gs = np.array([float(g) for g in _bell_poly_coeffs(p.x, N)])

    def f(ys: np.ndarray) -> np.ndarray:
        out = np.zeros_like(ys)
        for g in gs[::-1]:  # Horner
            out = out * ys + g
        return out

    coarse = _composite_gauss(f, 0.0, M, panels, points_per_panel)
    fine = _composite_gauss(f, 0.0, M, 2 * panels, points_per_panel)
    estimate = abs(fine - coarse)
    scale = max(1.0, abs(fine))
    if estimate > tolerance * scale:
        raise QuadratureError("combinatorial_Z quadrature", fine, estimate)
    return fine


@dataclass(frozen=True)
class GeneralFResult:
    """Moments, connected moments, and the truncated integrand F(x, z)."""

    w_moments: tuple
    v_sequence: tuple
    f_value: complex | float
    exp_form_value: complex | float

    @property
    def discrepancy(self) -> float:
        return abs(complex(self.f_value) - complex(self.exp_form_value))


def general_F(w: BosonExpression, x: float, z, N: int) -> GeneralFResult:
    """Truncated coherent-state integrand F(x, z) = sum_{n<=N} W_n x^n / n!
    for a general word w, with W_n = <z| w^n |z>, plus the V_n obtained from
    the W_n and the exponential form exp(sum_{n<=N} V_n x^n / n!)."""
    moments = word_moments(w, N, z)
    vs = w_to_v(moments)
    f_value = sum(complex(moments[n]) * x**n / math.factorial(n) for n in range(N + 1))
    exponent = sum(complex(vs[n - 1]) * x**n / math.factorial(n) for n in range(1, N + 1))
    exp_form = complex(np.exp(exponent))
    if f_value.imag == 0 and exp_form.imag == 0:
        return GeneralFResult(tuple(moments), tuple(vs), f_value.real, exp_form.real)
    return GeneralFResult(tuple(moments), tuple(vs), f_value, exp_form)
