"""Radial reduction of the fractional Laplacian via the angular kernel.

The N-dimensional singular integrals collapse to one radial variable through

    D_kappa(tau) = [2 pi^((N-1)/2) / Gamma((N-1)/2)]
                   * int_0^pi sin^(N-2)(theta) (1 - 2 tau cos(theta) + tau^2)^(-(N+kappa)/2) dtheta,

which blows up like |1-tau|^(-1-kappa) at tau = 1 and satisfies
D(1/tau) = tau^(N+kappa) D(tau). ``AngularKernel`` tabulates the bounded
factor W = D * (1-tau)^(1+kappa) on a grid uniform in log(1-tau) and
interpolates it with a monotone cubic; everything downstream evaluates
millions of kernel values through that table. ``angular_kernel_value`` is
the slow adaptive reference used by the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, QuadratureError, SingularityError
from .hardy import FracParams, normalization_constant
from .quadrature import (
    adaptive_integrate,
    gauss_jacobi01,
    gauss_legendre,
    geometric_panels,
    linear_pair_weighted,
)
from .specfun import ln_gamma

TAU_EPS = 1e-8  # tabulation reaches 1 - tau = TAU_EPS


def surface_area(N: int) -> float:
    """|S^(N-1)| = 2 pi^(N/2) / Gamma(N/2)."""
    return 2.0 * math.pi ** (N / 2.0) / math.exp(ln_gamma(N / 2.0))


def _angular_prefactor(N: int) -> float:
    return 2.0 * math.pi ** ((N - 1) / 2.0) / math.exp(ln_gamma((N - 1) / 2.0))


def _validate_kernel_args(p: FracParams, kappa: float) -> None:
    if p.N < 2:
        raise DomainError("angular kernel requires N >= 2")
    if kappa <= 0.0:
        raise DomainError(f"kappa must be positive, got {kappa!r}")


def angular_kernel_value(p: FracParams, kappa: float, tau: float,
                         rel_tol: float = 1e-10) -> float:
    """D_kappa(tau) by adaptive quadrature (reference path, one tau at a time)."""
    _validate_kernel_args(p, kappa)
    tau = float(tau)
    if tau <= 0.0:
        raise DomainError(f"tau must be positive, got {tau!r}")
    if tau == 1.0:
        raise SingularityError("the angular kernel diverges at tau = 1")
    n, c = p.N, _angular_prefactor(p.N)
    expo = -(p.N + kappa) / 2.0
    one_minus_tau_sq = (1.0 - tau) ** 2

    def integrand(theta):
        # 1 - 2 tau cos(theta) + tau^2 written without cancellation
        q = one_minus_tau_sq + 4.0 * tau * np.sin(0.5 * theta) ** 2
        return np.sin(theta) ** (n - 2) * q ** expo

    delta = abs(1.0 - tau)
    if delta < 1e-3:
        # dyadic initial subdivision toward theta = 0 where the near-pole sits
        edges = np.concatenate(([0.0], delta * 2.0 ** np.arange(0, 40, dtype=float), [np.pi]))
        edges = np.unique(np.clip(edges, 0.0, np.pi))
    else:
        edges = None
    return c * adaptive_integrate(integrand, 0.0, np.pi, rel_tol=rel_tol,
                                  initial_edges=edges)


def _theta_integral_batch(taus: np.ndarray, N: int, kappa: float,
                          order: int = 16) -> np.ndarray:
    """Composite quadrature of the angular integral for many tau < 1 at once.

    Panels are geometric toward theta = 0 at the scale of each tau's
    distance to 1; taus are bucketed by that scale so each bucket shares one
    panel set.
    """
    x, w = gauss_legendre(order)
    out = np.empty_like(taus)
    delta = np.abs(1.0 - taus)
    levels = np.ceil(np.log2(np.pi / np.minimum(delta, np.pi / 2))).astype(int)
    levels = np.maximum(levels, 1)
    expo = -(N + kappa) / 2.0
    for k in np.unique(levels):
        idx = np.where(levels == k)[0]
        dmin = float(delta[idx].min())
        edges = np.concatenate(([0.0], dmin * 2.0 ** np.arange(0, k + 1, dtype=float)))
        edges = np.unique(np.append(np.clip(edges, 0.0, np.pi), np.pi))
        a = edges[:-1]
        h = np.diff(edges)
        nodes = (a[:, None] + h[:, None] * x[None, :]).ravel()
        wts = (h[:, None] * w[None, :]).ravel() * np.sin(nodes) ** (N - 2)
        sin_half_sq = np.sin(0.5 * nodes) ** 2
        t = taus[idx][:, None]
        q = ((1.0 - t) ** 2 + 4.0 * t * sin_half_sq[None, :]) ** expo
        out[idx] = q @ wts
    return out * _angular_prefactor(N)


class AngularKernel:
    """Tabulated D_kappa with monotone-cubic interpolation of its smooth factor.

    Construction is done once; evaluation is pure and safe to share. The
    table covers tau in [0, 1 - TAU_EPS]; tau > 1 goes through the exact
    symmetry identity and 1 - tau < TAU_EPS through the limiting power law.
    """

    def __init__(self, params: FracParams, kappa: float, n_tab: int = 4096,
                 tol: float = 1e-10):
        _validate_kernel_args(params, kappa)
        self.params = params
        self.N = params.N
        self.kappa = float(kappa)
        self.tol = tol
        self._u = np.linspace(math.log(TAU_EPS), 0.0, n_tab)  # u = log(1 - tau)
        taus = -np.expm1(self._u)  # decreasing: 1 - TAU_EPS ... 0
        dvals = _theta_integral_batch(taus, self.N, self.kappa)
        self._w = dvals * np.exp((1.0 + self.kappa) * self._u)
        self._interp = PchipInterpolator(self._u, self._w, extrapolate=False)
        self._u_min = self._u[0]
        self.singular_coefficient = float(self._w[0])
        self._ext_cache: dict[float, tuple] = {}

    # -- point evaluation ---------------------------------------------------

    def _w_of_u(self, u: np.ndarray) -> np.ndarray:
        return self._interp(np.maximum(u, self._u_min))

    def value(self, tau) -> np.ndarray | float:
        """D_kappa(tau) for tau > 0, tau != 1 (vectorized)."""
        t = np.asarray(tau, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        if np.any(t <= 0.0):
            raise DomainError("tau must be positive")
        if np.any(t == 1.0):
            raise SingularityError("the angular kernel diverges at tau = 1")
        out = np.empty_like(t)
        lo = t < 1.0
        if np.any(lo):
            u = np.log1p(-t[lo])
            out[lo] = self._w_of_u(u) * np.exp(-(1.0 + self.kappa) * u)
        hi = ~lo
        if np.any(hi):
            ti = 1.0 / t[hi]
            u = np.log1p(-ti)
            out[hi] = t[hi] ** (-(self.N + self.kappa)) \
                * self._w_of_u(u) * np.exp(-(1.0 + self.kappa) * u)
        return float(out[0]) if scalar else out

    def w_tilde(self, tau) -> np.ndarray:
        """D_kappa(tau) * |1-tau|^(1+kappa), bounded through tau = 1."""
        t = np.atleast_1d(np.asarray(tau, dtype=float))
        out = np.empty_like(t)
        lo = t <= 1.0
        if np.any(lo):
            out[lo] = self._w_of_u(np.log1p(-np.minimum(t[lo], 1.0 - 1e-300)))
        hi = ~lo
        if np.any(hi):
            out[hi] = t[hi] ** (1.0 - self.N) * self._w_of_u(np.log1p(-1.0 / t[hi]))
        return out

    # -- exterior mass Q ----------------------------------------------------

    def _build_ext(self, shift: float):
        """Tabulate Q(r) = int_0^r sigma^(kappa+shift-1) D(sigma) dsigma on (0,1)."""
        beta = self.kappa + shift
        if beta <= 0.0:
            raise DomainError(f"exterior-mass exponent must be positive, got {beta}")
        x, w = gauss_legendre(12)

        def seg(a, b):
            nodes = a[:, None] + (b - a)[:, None] * x[None, :]
            vals = nodes ** (beta - 1.0) * self.value(nodes.ravel()).reshape(nodes.shape)
            return (b - a) * (vals @ w)

        # inner piece: log grid in r up to 1/2
        r_lo = np.exp(np.linspace(math.log(1e-10), math.log(0.5), 600))
        xj, wj = gauss_jacobi01(16, 0.0, beta - 1.0)
        first = r_lo[0] ** beta * float(
            np.dot(self.value(r_lo[0] * xj), wj))
        q_lo = first + np.concatenate(([0.0], np.cumsum(seg(r_lo[:-1], r_lo[1:]))))
        t_lo = PchipInterpolator(np.log(r_lo), q_lo * r_lo ** (-beta), extrapolate=False)

        # outer piece: log grid in 1 - r down to TAU_EPS
        v = np.linspace(math.log(0.5), math.log(TAU_EPS), 900)
        r_hi = 1.0 - np.exp(v)
        q_hi = q_lo[-1] + np.concatenate(([0.0], np.cumsum(seg(r_hi[:-1], r_hi[1:]))))
        # tabulate in -v = -log(1-r), an increasing variable as r -> 1
        s_hi = PchipInterpolator(-v, q_hi * np.exp(self.kappa * v), extrapolate=False)
        return beta, t_lo, s_hi, float(r_lo[0]), q_lo[0] / r_lo[0] ** beta

    def exterior_mass(self, r, shift: float = 0.0) -> np.ndarray:
        """Q(r) = int_0^r sigma^(kappa+shift-1) D_kappa(sigma) dsigma, r in (0, 1)."""
        key = round(float(shift), 14)
        if key not in self._ext_cache:
            self._ext_cache[key] = self._build_ext(shift)
        beta, t_lo, s_hi, r_min, t_limit = self._ext_cache[key]
        rr = np.atleast_1d(np.asarray(r, dtype=float))
        if np.any((rr <= 0.0) | (rr >= 1.0)):
            raise DomainError("exterior mass is defined for r in (0, 1)")
        out = np.empty_like(rr)
        tiny = rr <= r_min
        out[tiny] = t_limit * rr[tiny] ** beta
        mid = (~tiny) & (rr <= 0.5)
        out[mid] = t_lo(np.log(rr[mid])) * rr[mid] ** beta
        top = rr > 0.5
        if np.any(top):
            v = -np.log1p(-np.maximum(rr[top], 0.5))
            v = np.minimum(v, -math.log(TAU_EPS))
            out[top] = s_hi(v) * np.exp(self.kappa * np.log1p(-rr[top]))
        return out

    def dump_rows(self, taus) -> list[tuple[float, float]]:
        """(tau, D) pairs for inspection dumps."""
        return [(float(t), float(self.value(t))) for t in np.asarray(taus, float)]


_KERNEL_CACHE: dict[tuple, AngularKernel] = {}


def get_kernel(p: FracParams, kappa: float, n_tab: int = 4096) -> AngularKernel:
    """Shared kernel tabulation per (N, kappa); immutable after construction."""
    key = (p.N, round(float(kappa), 14), n_tab)
    if key not in _KERNEL_CACHE:
        _KERNEL_CACHE[key] = AngularKernel(p, kappa, n_tab=n_tab)
    return _KERNEL_CACHE[key]


# -- radial profiles ---------------------------------------------------------


@dataclass(frozen=True)
class PowerProfile:
    """g(r) = coef * r^exponent on all of (0, inf)."""

    exponent: float
    coef: float = 1.0


@dataclass(frozen=True)
class SumProfile:
    """Finite sum of power profiles."""

    parts: tuple[PowerProfile, ...]


@dataclass(frozen=True)
class SampledProfile:
    """Piecewise-linear radial profile vanishing identically for r >= 1."""

    r: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if r.ndim != 1 or r.shape != v.shape or r.size < 2:
            raise DomainError("sampled profile needs matching 1-D r/value arrays")
        if np.any(np.diff(r) <= 0.0) or r[0] != 0.0:
            raise DomainError("sample radii must be strictly increasing from r = 0")
        if abs(r[-1] - 1.0) > 1e-14 or v[-1] != 0.0:
            raise DomainError("sampled profiles must end with value 0 at r = 1")
        if not np.all(np.isfinite(v)):
            raise DomainError("sample values must be finite")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "values", v)


RadialProfile = PowerProfile | SumProfile | SampledProfile


def profile_eval(g: RadialProfile, r) -> np.ndarray:
    """Evaluate a profile at radii r (vectorized)."""
    rr = np.asarray(r, dtype=float)
    if isinstance(g, PowerProfile):
        return g.coef * rr ** g.exponent
    if isinstance(g, SumProfile):
        return sum(profile_eval(part, rr) for part in g.parts)
    return np.interp(rr, g.r, g.values, left=g.values[0], right=0.0)


def _scaled_difference(g: RadialProfile, r: float, tau: np.ndarray) -> np.ndarray:
    """g(r) - g(r*tau), using expm1 so the tau -> 1 cancellation stays exact."""
    if isinstance(g, PowerProfile):
        return -g.coef * r ** g.exponent * np.expm1(g.exponent * np.log(tau))
    if isinstance(g, SumProfile):
        return sum(_scaled_difference(part, r, tau) for part in g.parts)
    return profile_eval(g, r) - profile_eval(g, r * tau)


def _power_parts(g: RadialProfile) -> tuple[PowerProfile, ...]:
    if isinstance(g, PowerProfile):
        return (g,)
    if isinstance(g, SumProfile):
        return g.parts
    raise DomainError("apply_pointwise needs a power or sum-of-powers profile "
                      "(locally C^2); sampled profiles are not smooth enough")


def _pv_bracket(p: FracParams, g: RadialProfile, r: float,
                tau: np.ndarray) -> np.ndarray:
    """g(r)(tau^(N-1)+tau^(2s-1)) - g(r tau) tau^(N-1) - g(r/tau) tau^(2s-1).

    The bracket vanishes to second order at tau = 1, where direct evaluation
    loses all precision; for log(tau) small it is summed as the exponential
    series  -sum_k L^k/k! * sum_j sign_j A_j^k  per power part.
    """
    n, s = p.N, p.s
    L = np.log(tau)
    small = np.abs(L) < 0.05
    out = np.zeros_like(tau)
    parts = _power_parts(g)
    if np.any(~small):
        t = tau[~small]
        d1 = _scaled_difference(g, r, t)
        d2 = _scaled_difference(g, r, 1.0 / t)
        out[~small] = t ** (n - 1) * d1 + t ** (2.0 * s - 1.0) * d2
    if np.any(small):
        ls = L[small]
        acc = np.zeros_like(ls)
        for part in parts:
            e = part.exponent
            bases = np.array([n - 1.0 + e, n - 1.0, 2.0 * s - 1.0 - e, 2.0 * s - 1.0])
            signs = np.array([-1.0, 1.0, -1.0, 1.0])
            term = np.ones_like(ls)  # L^k / k!
            series = np.zeros_like(ls)
            powers = bases.copy()      # bases^1
            for k in range(1, 26):
                term *= ls / k
                if k >= 2:
                    series += term * float(np.dot(signs, powers))
                powers *= bases
            acc += part.coef * r ** e * series
        out[small] = acc
    return out


def sample_profile(fn, nodes) -> SampledProfile:
    """Sample a callable onto the given radii, forcing the exterior-zero end."""
    r = np.asarray(nodes, dtype=float)
    v = np.asarray(fn(r), dtype=float).copy()
    v[-1] = 0.0
    return SampledProfile(r, v)


# -- pointwise operator -------------------------------------------------------


def apply_pointwise(p: FracParams, g: RadialProfile, r: float,
                    kernel: AngularKernel | None = None,
                    rel_tol: float = 1e-7) -> float:
    """(-Lap)^s g at radius r via the folded principal-value form.

    Evaluates a_{N,s} r^(-2s) * int_0^1 [g(r)(tau^(N-1)+tau^(2s-1))
    - g(r tau) tau^(N-1) - g(r/tau) tau^(2s-1)] D_2s(tau) dtau; the bracket
    vanishes to second order at tau = 1. Requires g locally C^2 near r, so
    power-type profiles away from the origin.
    """
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r!r}")
    s = p.s
    kern = kernel if kernel is not None else get_kernel(p, 2.0 * s)
    parts = _power_parts(g)

    def evaluate(order: int, lev0: int, lev1: int) -> float:
        tau0 = 1e-7
        stub_delta = 1e-10
        x, w = gauss_legendre(order)
        edges = np.concatenate((
            geometric_panels(tau0, 0.5, toward="left", levels=lev0),
            geometric_panels(0.5, 1.0 - stub_delta, toward="right", levels=lev1)[1:],
        ))
        a, h = edges[:-1], np.diff(edges)
        nodes = (a[:, None] + h[:, None] * x[None, :]).ravel()
        wts = (h[:, None] * w[None, :]).ravel()
        total = float(np.dot(_pv_bracket(p, g, r, nodes) * kern.value(nodes), wts))

        # [0, tau0] exactly through the exterior-mass primitives
        stub = profile_eval(g, r) * (
            float(kern.exterior_mass(tau0, shift=p.N - 2.0 * s))
            + float(kern.exterior_mass(tau0, shift=0.0)))
        for part in parts:
            e = part.exponent
            stub -= part.coef * r ** e * (
                float(kern.exterior_mass(tau0, shift=p.N - 2.0 * s + e))
                + float(kern.exterior_mass(tau0, shift=-e)))
        total += stub

        # Jacobi stub on [1 - stub_delta, 1], weight (1-tau)^(1-2s); the
        # smooth cofactor is constant there to O(stub_delta)
        xj, wj = gauss_jacobi01(8, 1.0 - 2.0 * s, 0.0)
        tj = 1.0 - stub_delta * (1.0 - xj)
        smooth = _pv_bracket(p, g, r, tj) / (1.0 - tj) ** 2 * kern.w_tilde(tj)
        total += stub_delta ** (2.0 - 2.0 * s) * float(np.dot(smooth, wj))
        return total

    coarse = evaluate(12, 26, 31)
    fine = evaluate(18, 34, 35)
    denom = max(abs(fine), 1e-300)
    if abs(fine - coarse) > 50.0 * rel_tol * denom:
        raise QuadratureError(
            f"apply_pointwise failed to converge: {coarse} vs {fine}")
    return normalization_constant(p) * r ** (-2.0 * s) * fine


# -- quadratic/q-power double forms -------------------------------------------


def _r_rule(sample_r: np.ndarray, order: int, rw: float,
            last_alpha: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Bare (nodes, weights) over [r0, 1] aligned with the sample intervals.

    The returned pair satisfies sum F(r_i) W_i ~ int F(r) dr for integrands
    carrying a power r^rw at r = 0 and optionally (1-r)^last_alpha at r = 1;
    the singular factors are divided back out of the Jacobi weights, so
    callers always evaluate the full integrand.
    """
    nodes, wts = [], []
    xg, wg = gauss_legendre(order)
    intervals = list(zip(sample_r[:-1], sample_r[1:]))
    last = None
    if last_alpha is not None and len(intervals) > 1:
        last = intervals.pop()
    if sample_r[0] == 0.0 and rw != 0.0:
        _, b = intervals.pop(0)
        xj, wj = gauss_jacobi01(order, 0.0, rw)
        nodes.append(b * xj)
        wts.append(b ** (rw + 1.0) * wj / (b * xj) ** rw)
    for a, b in intervals:
        h = b - a
        nodes.append(a + h * xg)
        wts.append(h * wg)
    if last is not None:
        a, b = last
        h = b - a
        xj, wj = gauss_jacobi01(order, last_alpha, 0.0)
        r = a + h * xj
        nodes.append(r)
        wts.append(h ** (last_alpha + 1.0) * wj / (b - r) ** last_alpha)
    order_idx = np.argsort(np.concatenate(nodes), kind="stable")
    return np.concatenate(nodes)[order_idx], np.concatenate(wts)[order_idx]


def _tau_rule(order: int, end_alpha: float, subdiv: int = 1,
              end_delta: float = 1e-8):
    """Tau rule on (0,1): graded Gauss panels plus a Jacobi stub at 1.

    ``subdiv`` splits every graded panel uniformly, so refinement moves the
    panel edges as well as the order (needed to expose misalignment with
    the kinks of piecewise-linear profiles). Returns (mid_nodes,
    mid_weights, jac_nodes, jac_weights); the Jacobi weights absorb
    (1-tau)^end_alpha, so the stub integrand must be the smooth cofactor.
    """
    xg, wg = gauss_legendre(order)
    edges = np.concatenate((
        geometric_panels(0.0, 0.5, toward="left", levels=20),
        geometric_panels(0.5, 1.0 - end_delta, toward="right", levels=25)[1:],
    ))
    if subdiv > 1:
        a, b = edges[:-1], edges[1:]
        frac = np.arange(1, subdiv) / subdiv
        extra = (a[:, None] + (b - a)[:, None] * frac[None, :]).ravel()
        edges = np.unique(np.concatenate((edges, extra)))
    a, h = edges[:-1], np.diff(edges)
    nodes = (a[:, None] + h[:, None] * xg[None, :]).ravel()
    wts = (h[:, None] * wg[None, :]).ravel()
    xj, wj = gauss_jacobi01(8, end_alpha, 0.0)
    jac_nodes = 1.0 - end_delta * (1.0 - xj)
    jac_wts = end_delta ** (end_alpha + 1.0) * wj
    return nodes, wts, jac_nodes, jac_wts


def _double_form(p: FracParams, g: SampledProfile, kappa: float, q: float,
                 rw: float, tw: float, ext_shift: float,
                 order: int = 8, rel_tol: float = 5e-3,
                 refine_check: bool = True) -> float:
    """2 * omega * [interior (r, tau<1) double integral + exterior strip].

    Computes omega * int_0^inf r^rw int_0^inf |g(r)-g(r tau)|^q tau^tw
    D_kappa(tau) dtau dr for exterior-zero g, folded onto tau < 1.
    """
    kern = get_kernel(p, kappa)
    omega = surface_area(p.N)
    end_alpha = q - 1.0 - kappa  # power of (1-tau) left at the diagonal

    def evaluate(o: int, subdiv: int) -> float:
        r_nodes, r_wts = _r_rule(g.r, o, rw)
        tn, tmw, tjn, tjw = _tau_rule(o + 2, end_alpha, subdiv=subdiv)
        gr = profile_eval(g, r_nodes)

        diff = np.abs(gr[:, None] - profile_eval(g, r_nodes[:, None] * tn[None, :]))
        inner = (diff ** q) @ (tmw * kern.value(tn) * tn ** tw)

        diff_j = np.abs(gr[:, None] - profile_eval(g, r_nodes[:, None] * tjn[None, :]))
        smooth = (diff_j / (1.0 - tjn[None, :])) ** q \
            * (kern.w_tilde(tjn) * tjn ** tw)[None, :]
        inner += smooth @ tjw

        interior = float(np.dot(r_nodes ** rw * inner, r_wts))

        # exterior strip: |g(r)|^q r^rw Q(r), with Q ~ (1-r)^(-kappa) and
        # |g|^q ~ (1-r)^q near the boundary
        rq, wq = _r_rule(g.r, o, rw, last_alpha=q - kappa)
        gq = np.abs(profile_eval(g, rq)) ** q
        qv = kern.exterior_mass(np.minimum(rq, 1.0 - 1e-13), shift=ext_shift)
        ext = float(np.dot(gq * rq ** rw * qv, wq))
        return 2.0 * omega * (interior + ext)

    coarse = evaluate(order, 1)
    if not refine_check:
        return coarse
    fine = evaluate(order + 4, 2)
    denom = max(abs(fine), 1e-300)
    if abs(fine - coarse) > rel_tol * denom and denom > 1e-30:
        raise QuadratureError(
            f"double-form quadrature did not settle: {coarse} vs {fine}")
    return fine


def gagliardo_seminorm(p: FracParams, g: SampledProfile, kappa: float, q: float,
                       rel_tol: float = 5e-3, refine_check: bool = True) -> float:
    """omega * iint |g(r)-g(r tau)|^q tau^(N-1) D_kappa(tau) r^(N-1-kappa) dtau dr.

    The (kappa, q) pair covers W^(s1,q) seminorms with kappa = q*s1; q = 2,
    kappa = 2s gives the doubled Gagliardo integral (multiply by a_{N,s}/2
    for the energy).
    """
    if not isinstance(g, SampledProfile):
        raise DomainError("gagliardo_seminorm needs an exterior-zero sampled profile")
    if q < 1.0:
        raise DomainError(f"q must be >= 1, got {q!r}")
    s1 = kappa / q
    if not 0.0 < s1 < 1.0:
        raise DomainError(f"kappa/q must lie in (0,1), got {s1!r}")
    return _double_form(p, g, kappa, q, rw=p.N - 1.0 - kappa, tw=p.N - 1.0,
                        ext_shift=0.0, rel_tol=rel_tol, refine_check=refine_check)


def hardy_quotient(p: FracParams, g: SampledProfile) -> float:
    """Rayleigh quotient of the Hardy inequality for one profile."""
    mass = weighted_l2(p, g, weight_exponent=2.0 * p.s)
    if mass <= 0.0:
        raise DomainError("hardy_quotient needs a profile that is not identically zero")
    semi = gagliardo_seminorm(p, g, 2.0 * p.s, 2.0)
    return 0.5 * normalization_constant(p) * semi / mass


def weighted_l2(p: FracParams, g: SampledProfile, weight_exponent: float) -> float:
    """omega * int g^2 r^(N-1-weight_exponent) dr, exact for piecewise-linear g."""
    r, v = g.r, g.values
    pw = p.N - 1.0 - weight_exponent
    total = 0.0
    for a, b, va, vb in zip(r[:-1], r[1:], v[:-1], v[1:]):
        if va == 0.0 and vb == 0.0:
            continue
        slope = (vb - va) / (b - a)
        c0 = va - slope * a
        total += linear_pair_weighted(a, b, c0, slope, c0, slope, pw)
    return surface_area(p.N) * total


def weighted_forms(p: FracParams, v: SampledProfile, gamma: float) -> tuple[float, float]:
    """Pair (int v^2 dmu, iint (v(x)-v(y))^2 dnu) for the ground-state weights."""
    if not 0.0 <= gamma < p.half_gap:
        raise DomainError(f"gamma must lie in [0, {p.half_gap}), got {gamma!r}")
    mass = weighted_l2(p, v, weight_exponent=2.0 * gamma)
    semi = _double_form(
        p, v, 2.0 * p.s, 2.0,
        rw=p.N - 1.0 - 2.0 * gamma - 2.0 * p.s,
        tw=p.N - 1.0 - gamma,
        ext_shift=gamma,
    )
    return mass, semi
