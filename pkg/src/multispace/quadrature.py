"""Adaptive Simpson quadrature for scalar integrands."""

from __future__ import annotations

import math
from typing import Callable

from .errors import QuadratureError

MAX_INTERVALS = 2**20


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rtol: float = 1e-8,
    max_intervals: int = MAX_INTERVALS,
) -> float:
    """Integrate ``f`` over ``[a, b]`` with Richardson-corrected adaptive Simpson.

    The tolerance is relative to the first whole-interval estimate and is
    halved on each bisection. Raises :class:`QuadratureError` once more than
    ``max_intervals`` subintervals would be needed.
    """
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(f, b, a, rtol, max_intervals)
    fa, fb = f(a), f(b)
    fm = f(0.5 * (a + b))
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    tol = rtol * abs(whole) if whole != 0.0 else rtol
    stack = [(a, b, fa, fm, fb, whole, tol)]
    total = 0.0
    intervals = 1
    while stack:
        lo, hi, flo, fmid, fhi, est, etol = stack.pop()
        c = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + c), 0.5 * (c + hi)
        flm, frm = f(lm), f(rm)
        left = (c - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - c) / 6.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - est
        if abs(delta) <= 15.0 * etol or c <= lo or hi <= c:
            total += left + right + delta / 15.0
            continue
        if intervals >= max_intervals:
            raise QuadratureError(f"adaptive Simpson did not converge within {max_intervals} intervals")
        intervals += 1
        stack.append((c, hi, fmid, frm, fhi, right, 0.5 * etol))
        stack.append((lo, c, flo, flm, fmid, left, 0.5 * etol))
    if not math.isfinite(total):
        raise QuadratureError("integral is not finite")
    return total


def composite_simpson(f: Callable[[float], float], a: float, b: float, steps: int) -> float:
    """Plain Simpson rule on ``steps`` (even) uniform subintervals."""
    if steps < 2 or steps % 2:
        raise ValueError("steps must be a positive even number")
    h = (b - a) / steps
    acc = f(a) + f(b)
    for i in range(1, steps):
        acc += (4.0 if i % 2 else 2.0) * f(a + i * h)
    return acc * h / 3.0
