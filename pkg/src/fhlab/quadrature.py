"""Deterministic panel quadrature built on fixed-order Gauss rules.

The adaptive driver bisects panels depth-first in a fixed order, so results
are bit-reproducible for a given integrand and tolerance. Rules of order
>= 10 are used throughout; Gauss-Jacobi rules absorb endpoint power
singularities where the exponent is known.
"""

from __future__ import annotations

import functools
import math

import numpy as np
from scipy.special import roots_jacobi

from .errors import QuadratureError


@functools.lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


@functools.lru_cache(maxsize=64)
def gauss_jacobi01(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1] for weight (1-x)^alpha * x^beta."""
    x, w = roots_jacobi(n, alpha, beta)
    # map [-1,1] -> [0,1]; weight transforms with factor 2^(alpha+beta+1)
    return 0.5 * (x + 1.0), w / 2.0 ** (alpha + beta + 1.0)


def geometric_panels(a: float, b: float, *, toward: str, levels: int,
                     ratio: float = 2.0, include_stub: bool = True) -> np.ndarray:
    """Panel edges on [a, b] geometrically refined toward one endpoint.

    Returns an increasing array of edges. With ``include_stub`` the innermost
    panel reaches the endpoint itself; otherwise the grading stops at
    distance (b-a)*ratio^-levels.
    """
    if b <= a:
        raise ValueError("empty panel range")
    h = b - a
    offs = h * ratio ** (-np.arange(levels + 1, dtype=float))
    if toward == "left":
        edges = a + offs[::-1]
        if include_stub:
            edges = np.concatenate(([a], edges))
    elif toward == "right":
        edges = b - offs
        if include_stub:
            edges = np.concatenate((edges, [b]))
    else:
        raise ValueError(f"toward must be 'left' or 'right', got {toward!r}")
    return np.unique(edges)


def fixed_panel_integrate(f, edges: np.ndarray, order: int = 16) -> float:
    """Composite Gauss integration over the given panel edges (vectorized f)."""
    x, w = gauss_legendre(order)
    a = edges[:-1]
    h = np.diff(edges)
    nodes = a[:, None] + h[:, None] * x[None, :]
    vals = f(nodes.ravel()).reshape(nodes.shape)
    return float(np.einsum("pq,q,p->", vals, w, h))


def adaptive_integrate(f, a: float, b: float, *, rel_tol: float = 1e-10,
                       abs_floor: float = 0.0, order: int = 15,
                       max_depth: int = 60, initial_edges=None) -> float:
    """Adaptive bisection with fixed-order Gauss panels, deterministic order.

    ``f`` must accept a 1-D ndarray. Convergence of a panel is judged by
    comparing one whole-panel rule against the two half-panel rules; the
    half-panel value is kept. Raises QuadratureError when max_depth panels
    still disagree.
    """
    x, w = gauss_legendre(order)

    def panel(lo: float, hi: float) -> float:
        h = hi - lo
        return h * float(np.dot(f(lo + h * x), w))

    if initial_edges is None:
        edges = [a, b]
    else:
        edges = list(np.unique(np.clip(np.asarray(initial_edges, float), a, b)))
        if edges[0] != a:
            edges.insert(0, a)
        if edges[-1] != b:
            edges.append(b)

    # coarse value used to give the relative tolerance a scale
    scale = max(sum(abs(panel(lo, hi)) for lo, hi in zip(edges[:-1], edges[1:])),
                1e-300)
    tol_global = max(rel_tol * scale, abs_floor)

    total = 0.0
    # stack of (lo, hi, whole_value, depth); processed deterministically
    stack = [(lo, hi, panel(lo, hi), 0) for lo, hi in zip(edges[:-1], edges[1:])]
    stack.reverse()
    span = b - a
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = panel(lo, mid)
        right = panel(mid, hi)
        better = left + right
        err = abs(better - whole)
        width = hi - lo
        pos = max(abs(lo), abs(hi))
        # budget proportional to the larger of the panel's mass share and
        # width share (the kernels here are positive, so mass shares sum to
        # one), floored at the FP noise of the panel values; that noise
        # grows like eps * pos/width once the width itself is formed by
        # cancellation of nearly equal endpoints
        share = max(abs(better) / scale, width / span)
        noise = 2.2e-16 * (abs(better) + abs(whole)) * max(1.0, pos / max(width, 1e-300))
        local_tol = max(tol_global * share, 4.0 * noise)
        if err <= local_tol or width <= 1e-13 * pos:
            total += better
        elif depth >= max_depth:
            raise QuadratureError(
                f"adaptive quadrature stalled on [{lo}, {hi}] at depth {depth} "
                f"(err={err:.3e}, tol={local_tol:.3e})"
            )
        else:
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))
    return total


def power_moment(a: float, b: float, p: float) -> float:
    """Exact integral of r^p over [a, b] (b > a >= 0, p > -1 when a == 0)."""
    if p == -1.0:
        return math.log(b / a)
    q = p + 1.0
    if a == 0.0:
        if q <= 0.0:
            raise ValueError(f"divergent power moment: exponent {p} at 0")
        return b ** q / q
    return (b ** q - a ** q) / q


def linear_pair_weighted(a: float, b: float, c0: float, c1: float,
                         d0: float, d1: float, p: float) -> float:
    """Exact integral of (c0 + c1 r)(d0 + d1 r) r^p over [a, b]."""
    return (
        c0 * d0 * power_moment(a, b, p)
        + (c0 * d1 + c1 * d0) * power_moment(a, b, p + 1.0)
        + c1 * d1 * power_moment(a, b, p + 2.0)
    )
