"""Closed-form constants, exponent maps and summability curves.

Everything here is an exact Gamma-function expression evaluated in log
space, plus the bisection inverting the strictly decreasing coupling
``lambda_of_alpha``. The only numerics are ``ln_gamma`` calls; all heavy
quadrature lives in :mod:`fhlab.kernel`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NearPoleWarning
from .specfun import digamma, ln_gamma

NEAR_POLE_MARGIN = 1e-6


@dataclass(frozen=True)
class FracParams:
    """Ambient problem parameters: dimension N >= 2 and order s in (0,1) with N > 2s."""

    N: int
    s: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise DomainError(f"N must be an integer >= 2, got {self.N!r}")
        if not 0.0 < self.s < 1.0:
            raise DomainError(f"s must lie in (0, 1), got {self.s!r}")
        if self.N <= 2.0 * self.s:
            raise DomainError(f"need N > 2s, got N={self.N}, s={self.s}")

    @property
    def half_gap(self) -> float:
        """(N - 2s)/2, the upper limit of the alpha range."""
        return 0.5 * (self.N - 2.0 * self.s)


@dataclass(frozen=True)
class HardyCoupling:
    """Mutually consistent (lambda, alpha, gamma, gamma_bar) tuple."""

    lam: float
    alpha: float
    gamma: float
    gamma_bar: float


@dataclass(frozen=True)
class SummabilityPoint:
    """One m-point on the J/P summability curves with derived exponents."""

    m: float
    J: float
    P: float
    m_star_star: float
    m_star: float
    alpha0: float
    D: float
    near_pole: bool
    j_le_p: bool
    d_ge_theta: bool


def hardy_constant(p: FracParams) -> float:
    """Sharp constant of the fractional Hardy inequality."""
    n, s = p.N, p.s
    return math.exp(
        2.0 * s * math.log(2.0)
        + 2.0 * ln_gamma((n + 2.0 * s) / 4.0)
        - 2.0 * ln_gamma((n - 2.0 * s) / 4.0)
    )


def normalization_constant(p: FracParams) -> float:
    """Multiplier making the PV singular integral match the symbol |xi|^(2s).

    Equals the inverse of int (1-cos xi_1)/|xi|^(N+2s) dxi; with
    |Gamma(-s)| = Gamma(1-s)/s this is s 4^s Gamma((N+2s)/2) / (pi^(N/2) Gamma(1-s)).
    """
    n, s = p.N, p.s
    return math.exp(
        2.0 * s * math.log(2.0)
        - 0.5 * n * math.log(math.pi)
        + ln_gamma((n + 2.0 * s) / 2.0)
        + math.log(s)
        - ln_gamma(1.0 - s)
    )


def lambda_of_alpha(p: FracParams, alpha: float) -> float:
    """The coupling for which |x|^(-(N-2s)/2 +- alpha) solves the homogeneous equation."""
    n, s = p.N, p.s
    if not 0.0 <= alpha < p.half_gap:
        raise DomainError(f"alpha must lie in [0, {p.half_gap}), got {alpha!r}")
    return math.exp(
        2.0 * s * math.log(2.0)
        + ln_gamma((n + 2.0 * s + 2.0 * alpha) / 4.0)
        + ln_gamma((n + 2.0 * s - 2.0 * alpha) / 4.0)
        - ln_gamma((n - 2.0 * s + 2.0 * alpha) / 4.0)
        - ln_gamma((n - 2.0 * s - 2.0 * alpha) / 4.0)
    )


def alpha_of_lambda(p: FracParams, lam: float, max_iter: int = 200) -> float:
    """Invert the strictly decreasing lambda(alpha) by bisection."""
    big = hardy_constant(p)
    if not 0.0 < lam <= big * (1.0 + 1e-14):
        raise DomainError(f"lambda must lie in (0, Lambda], got {lam!r}")
    if lam >= big:
        return 0.0
    tol = 1e-12 * big
    lo, hi = 0.0, p.half_gap * (1.0 - 1e-15)
    if lambda_of_alpha(p, hi) > lam:
        return hi
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        val = lambda_of_alpha(p, mid)
        if abs(val - lam) <= tol:
            return mid
        if val > lam:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def coupling(p: FracParams, lam: float) -> HardyCoupling:
    """Populate the (lambda, alpha, gamma, gamma_bar) tuple for a given coupling."""
    alpha = alpha_of_lambda(p, lam)
    return HardyCoupling(
        lam=lam,
        alpha=alpha,
        gamma=p.half_gap - alpha,
        gamma_bar=p.half_gap + alpha,
    )


def ground_state_shift(p: FracParams, gamma: float) -> float:
    """Shift Phi(gamma) appearing in the ground-state representation."""
    if not 0.0 < gamma < p.half_gap:
        raise DomainError(f"gamma must lie in (0, {p.half_gap}), got {gamma!r}")
    return power_multiplier(p, gamma) - hardy_constant(p)


def power_multiplier(p: FracParams, beta: float) -> float:
    """mu(beta) with (-Lap)^s |x|^(-beta) = mu(beta) |x|^(-beta-2s), 0 < beta < N-2s."""
    n, s = p.N, p.s
    if not 0.0 < beta < n - 2.0 * s:
        raise DomainError(f"beta must lie in (0, {n - 2.0 * s}), got {beta!r}")
    return math.exp(
        2.0 * s * math.log(2.0)
        + ln_gamma((beta + 2.0 * s) / 2.0)
        + ln_gamma((n - beta) / 2.0)
        - ln_gamma((n - beta - 2.0 * s) / 2.0)
        - ln_gamma(beta / 2.0)
    )


def m_left_endpoint(p: FracParams) -> float:
    """Left endpoint 2N/(N+2s) of the shared J/P domain."""
    return 2.0 * p.N / (p.N + 2.0 * p.s)


def m_right_endpoint(p: FracParams) -> float:
    """Right endpoint N/(2s) of the m-domain."""
    return p.N / (2.0 * p.s)


def curve_J(p: FracParams, m: float) -> float:
    """Coupling threshold below which L^m data give the full summability gain."""
    n, s = p.N, p.s
    if not 1.0 < m < m_right_endpoint(p):
        raise DomainError(f"m must lie in (1, {m_right_endpoint(p)}), got {m!r}")
    return hardy_constant(p) * 4.0 * n * (m - 1.0) * (n - 2.0 * m * s) / (
        m * m * (n - 2.0 * s) ** 2
    )


def alpha0_of_m(p: FracParams, m: float) -> float:
    """alpha_0(m) = (N+2s)/2 - N/m."""
    return 0.5 * (p.N + 2.0 * p.s) - p.N / m


def curve_P(p: FracParams, m: float) -> float:
    """Counterexample threshold: the Gamma-ratio form of lambda(alpha_0(m))."""
    n, s = p.N, p.s
    if not m_left_endpoint(p) <= m < m_right_endpoint(p):
        raise DomainError(
            f"m must lie in [{m_left_endpoint(p)}, {m_right_endpoint(p)}), got {m!r}"
        )
    c = n / (2.0 * m) - s
    if c < NEAR_POLE_MARGIN:
        warnings.warn(
            f"curve_P at m={m}: Gamma argument N/(2m)-s = {c:.3e} is nearly at a pole",
            NearPoleWarning,
            stacklevel=2,
        )
    return math.exp(
        2.0 * s * math.log(2.0)
        + ln_gamma((n + 2.0 * s) / 2.0 - n / (2.0 * m))
        + ln_gamma(n / (2.0 * m))
        - ln_gamma(n / 2.0 - n / (2.0 * m))
        - ln_gamma(c)
    )


def theta_constant(p: FracParams) -> float:
    """Theta(N,s) = [4N/(N-2s)^2] Gamma^2((N+2s)/4)/Gamma^2((N-2s)/4)."""
    n, s = p.N, p.s
    return hardy_constant(p) * 4.0 * n / ((n - 2.0 * s) ** 2 * 2.0 ** (2.0 * s))


def curve_D(p: FracParams, m: float) -> float:
    """D(m) = [m^2/((m-1)(N-2sm))] * (P-curve Gamma ratio); increasing, >= Theta."""
    n, s = p.N, p.s
    return (
        m * m / ((m - 1.0) * (n - 2.0 * s * m))
        * curve_P(p, m) / 2.0 ** (2.0 * s)
    )


def sobolev_exponents(p: FracParams, m: float) -> tuple[float, float]:
    """(m**_s, m*_s) = (mN/(N-2ms), mN/(N-ms))."""
    n, s = p.N, p.s
    if not 1.0 < m < m_right_endpoint(p):
        raise DomainError(f"m must lie in (1, {m_right_endpoint(p)}), got {m!r}")
    return m * n / (n - 2.0 * m * s), m * n / (n - m * s)


def digamma_combination(p: FracParams, m: float) -> float:
    """K(m) = psi(a) - psi(b) + psi(c) - psi(d) controlling the sign of D'."""
    n, s = p.N, p.s
    a = (n + 2.0 * s) / 2.0 - n / (2.0 * m)
    b = n / 2.0 - n / (2.0 * m)
    c = n / (2.0 * m) - s
    d = n / (2.0 * m)
    if min(a, b, c, d) <= 0.0:
        raise DomainError(f"digamma arguments must be positive, got {(a, b, c, d)}")
    return digamma(a) - digamma(b) + digamma(c) - digamma(d)


def critical_exponent(p: FracParams, lam: float) -> float:
    """p_+(lambda) = 1 + 2s/gamma(lambda); no positive solution above it."""
    cpl = coupling(p, lam)
    return 1.0 + 2.0 * p.s / cpl.gamma


def curve_comparison(p: FracParams, m_grid) -> list[SummabilityPoint]:
    """Evaluate J, P, m**, m*, alpha0 and D on a grid, flagging violations."""
    theta = theta_constant(p)
    lam_big = hardy_constant(p)
    points = []
    prev_d = -math.inf
    for m in np.atleast_1d(np.asarray(m_grid, dtype=float)):
        m = float(m)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", NearPoleWarning)
            jv = curve_J(p, m)
            pv = curve_P(p, m)
            dv = curve_D(p, m)
            near_pole = any(issubclass(w.category, NearPoleWarning) for w in caught)
        mss, ms = sobolev_exponents(p, m)
        points.append(
            SummabilityPoint(
                m=m,
                J=jv,
                P=pv,
                m_star_star=mss,
                m_star=ms,
                alpha0=alpha0_of_m(p, m),
                D=dv,
                near_pole=near_pole,
                j_le_p=jv <= pv + 1e-12 * lam_big,
                d_ge_theta=dv >= theta * (1.0 - 1e-12) and dv >= prev_d - abs(dv) * 1e-12,
            )
        )
        prev_d = dv
    return points


def algebraic_inequality_gap(s1: float, s2: float, a: float) -> float:
    """Gap of (s1-s2)(s1^a-s2^a) >= [4a/(a+1)^2](s1^((a+1)/2)-s2^((a+1)/2))^2."""
    if s1 < 0.0 or s2 < 0.0 or a <= 0.0:
        raise DomainError("requires s1, s2 >= 0 and a > 0")
    half = 0.5 * (a + 1.0)
    return (s1 - s2) * (s1 ** a - s2 ** a) - (4.0 * a / (a + 1.0) ** 2) * (
        s1 ** half - s2 ** half
    ) ** 2
