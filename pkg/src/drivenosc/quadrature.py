"""Adaptive quadrature kernels used across the library.

Two routines, both deterministic:

* ``adaptive_simpson``  -- scalar integrands; interval bisection driven by
  the classic Richardson error estimate.  Robust on integrands with kinks
  (e.g. |force|), which is what it is used for.
* ``adaptive_gauss_kronrod`` -- vector-valued integrands; a global
  worst-interval-first refinement of the 7/15 Gauss-Kronrod pair.  Used for
  the inhomogeneous-response integrals, where the integrand is a smooth
  2-vector away from known breakpoints.

Known non-smooth points (pulse edges, table knots, |.| zero crossings) are
passed in as ``breakpoints`` so neither routine has to discover them.
"""

from __future__ import annotations

import heapq
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import NumericError

# 7/15 Gauss-Kronrod pair on [-1, 1] (positive abscissae; rule is symmetric).
_XGK = np.array([
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0,
])
_WGK = np.array([
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278,
])
# Gauss-7 weights, aligned with the odd-index (embedded) abscissae above.
_WG = np.array([
    0.1294849661688697, 0.2797053914892767,
    0.3818300505051189, 0.4179591836734694,
])

_KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # 15 ascending nodes
_KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Positions of the embedded Gauss-7 nodes within the 15-node layout.
_GAUSS_IDX = np.array([1, 3, 5, 7, 9, 11, 13])
_GAUSS_WEIGHTS = np.concatenate([_WG[:-1], _WG[::-1]])


def _segments(a: float, b: float, breakpoints: Iterable[float]) -> list[tuple[float, float]]:
    pts = sorted(p for p in breakpoints if a < p < b)
    edges = [a] + pts + [b]
    return [(lo, hi) for lo, hi in zip(edges, edges[1:]) if hi > lo]


def _gk15(f: Callable[[float], np.ndarray], a: float, b: float):
    """One 15-point Kronrod pass; returns (value, error estimate)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    vals = np.array([np.asarray(f(mid + half * x), dtype=float) for x in _KRONROD_NODES])
    kron = half * np.tensordot(_KRONROD_WEIGHTS, vals, axes=1)
    gauss = half * np.tensordot(_GAUSS_WEIGHTS, vals[_GAUSS_IDX], axes=1)
    # |K15 - G7| overestimates the K15 error; conservative but safe.
    err = float(np.max(np.abs(kron - gauss)))
    return kron, max(err, 1e-300)


def adaptive_gauss_kronrod(
    f: Callable[[float], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-10,
    breakpoints: Sequence[float] = (),
    limit: int = 4000,
) -> np.ndarray:
    """Integrate a vector-valued f over [a, b] to ~tol (absolute, with a
    relative floor at the integral's own scale).

    Raises NumericError (carrying the partial estimate) if the interval
    budget is exhausted first.
    """
    if b == a:
        probe = np.asarray(f(a), dtype=float)
        return np.zeros_like(probe)
    sign = 1.0
    if b < a:
        a, b = b, a
        sign = -1.0

    heap = []
    total = None
    total_err = 0.0
    for lo, hi in _segments(a, b, breakpoints):
        val, err = _gk15(f, lo, hi)
        total = val if total is None else total + val
        total_err += err
        heapq.heappush(heap, (-err, lo, hi, val, err))

    n = len(heap)
    while heap:
        scale = max(1.0, float(np.max(np.abs(total))))
        if total_err <= tol * scale:
            return sign * total
        if n >= limit:
            raise NumericError(
                f"quadrature did not converge within {limit} subintervals "
                f"(error estimate {total_err:.3e})",
                partial=sign * total,
            )
        _, lo, hi, val, err = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        lval, lerr = _gk15(f, lo, mid)
        rval, rerr = _gk15(f, mid, hi)
        total = total - val + lval + rval
        total_err = total_err - err + lerr + rerr
        heapq.heappush(heap, (-lerr, lo, mid, lval, lerr))
        heapq.heappush(heap, (-rerr, mid, hi, rval, rerr))
        n += 1
    return sign * (total if total is not None else 0.0)


def fixed_gauss_kronrod(
    f: Callable[[float], np.ndarray],
    a: float,
    b: float,
    breakpoints: Sequence[float] = (),
    panel_len: float | None = None,
) -> np.ndarray:
    """Non-adaptive 15-point panels over [a, b], split at breakpoints.

    Intended for integrands that are analytic between the given
    breakpoints and resolved by panels of length <= panel_len; a single
    15-point rule on such a panel is accurate to rounding.
    """
    if b == a:
        return np.zeros_like(np.asarray(f(a), dtype=float))
    sign = 1.0
    if b < a:
        a, b = b, a
        sign = -1.0
    total = None
    for lo, hi in _segments(a, b, breakpoints):
        n = 1 if panel_len is None else max(1, int(np.ceil((hi - lo) / panel_len)))
        edges = np.linspace(lo, hi, n + 1)
        for p0, p1 in zip(edges, edges[1:]):
            val, _ = _gk15(f, p0, p1)
            total = val if total is None else total + val
    return sign * total


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    breakpoints: Sequence[float] = (),
    max_depth: int = 48,
) -> float:
    """Integrate a scalar f over [a, b] by adaptive Simpson bisection."""
    if b == a:
        return 0.0
    sign = 1.0
    if b < a:
        a, b = b, a
        sign = -1.0

    segs = _segments(a, b, breakpoints)
    # Absolute tolerance anchored to the coarse whole-interval estimate.
    coarse = sum(_simpson_value(f, lo, hi)[0] for lo, hi in segs)
    eps = tol * max(1.0, abs(coarse))

    total = 0.0
    for lo, hi in segs:
        eps_seg = eps * (hi - lo) / (b - a)
        total += _simpson_recurse(f, lo, hi, eps_seg, max_depth)
    return sign * total


def _simpson_value(f, a, b):
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb), fa, fm, fb


def _simpson_recurse(f, a, b, eps, depth):
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_step(f, a, b, fa, fm, fb, whole, eps, depth)


def _simpson_step(f, a, b, fa, fm, fb, whole, eps, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * eps or (b - a) < 1e-14 * max(1.0, abs(a) + abs(b)):
        return left + right + delta / 15.0
    if depth <= 0:
        raise NumericError(
            f"adaptive Simpson hit maximum depth on [{a}, {b}]",
            partial=left + right + delta / 15.0,
        )
    half = 0.5 * eps
    return (
        _simpson_step(f, a, m, fa, flm, fm, left, half, depth - 1)
        + _simpson_step(f, m, b, fm, frm, fb, right, half, depth - 1)
    )
