"""Numeric inner loops.

Loop kernels are compiled with numba when ``USE_NUMBA`` is true. Where a loop
has a natural vectorised form, a numpy twin exists and the public name binds
to it when numba is off; scalar loops (adaptive Simpson) just run as plain
Python. Set ``MULTISPACE_NO_NUMBA=1`` to force the fallback path.
"""

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("MULTISPACE_NO_NUMBA", "").lower() not in (
    "1",
    "true",
    "yes",
)


def _jit(fn):
    if not USE_NUMBA:
        return fn
    return numba.njit(cache=True)(fn)


# --------------------------------------------------------------------------
# closest "bad" pair for the uniform-continuity grid search
#
# Grid spacings differ in the last few ulps, so a pair only replaces the
# current best when it is closer by more than TIE_RTOL; equal-spacing ties
# then resolve to the first pair in traversal order.

TIE_RTOL = 1e-9


def _closest_bad_pair_loop(points, images, eps):
    n = points.shape[0]
    dim = points.shape[1]
    kdim = images.shape[1]
    best2 = np.inf
    bi = -1
    bj = -1
    for i in range(n - 1):
        for j in range(i + 1, n):
            d2 = 0.0
            for k in range(dim):
                diff = points[i, k] - points[j, k]
                d2 += diff * diff
            if d2 >= best2 * (1.0 - TIE_RTOL):
                continue
            g2 = 0.0
            for k in range(kdim):
                diff = images[i, k] - images[j, k]
                g2 += diff * diff
            if math.sqrt(g2) >= eps:
                best2 = d2
                bi = i
                bj = j
    return math.sqrt(best2), bi, bj


def _closest_bad_pair_numpy(points, images, eps):
    n = points.shape[0]
    best2 = np.inf
    bi = -1
    bj = -1
    for i in range(n - 1):
        d2 = ((points[i + 1 :] - points[i]) ** 2).sum(axis=1)
        g = np.sqrt(((images[i + 1 :] - images[i]) ** 2).sum(axis=1))
        cand = np.where(g >= eps, d2, np.inf)
        # first j that the sequential scan would keep
        k = -1
        run = best2
        for j in np.flatnonzero(cand < best2 * (1.0 - TIE_RTOL)):
            if cand[j] < run * (1.0 - TIE_RTOL):
                run = cand[j]
                k = j
        if k >= 0:
            best2 = cand[k]
            bi = i
            bj = i + 1 + k
    return math.sqrt(best2), bi, bj


closest_bad_pair_loop = _jit(_closest_bad_pair_loop)


# --------------------------------------------------------------------------
# Townsend-Wohlfarth scale factor cubed, and its adaptive Simpson integral


def _tw_s3(t, m, lambda0, r_c, t1, hyperbolic):
    zeta = math.sqrt(3.0 + 6.0 / m)
    x = lambda0 * zeta * abs(t + t1)
    den = math.sinh(x) if hyperbolic else math.sin(x)
    k = lambda0 * zeta * r_c / ((m - 1.0) * den)
    s2 = k ** (m / (m - 1.0)) * math.exp(-((m + 2.0) / (m - 1.0)) * lambda0 * t)
    return s2 * math.sqrt(s2)


tw_s3 = _jit(_tw_s3)


def _tw_proper_time(a, b, rtol, max_intervals, m, lambda0, r_c, t1, hyperbolic):
    """Adaptive Simpson of S^3 on [a, b]; returns (value, intervals, converged)."""
    fa = tw_s3(a, m, lambda0, r_c, t1, hyperbolic)
    fb = tw_s3(b, m, lambda0, r_c, t1, hyperbolic)
    fm = tw_s3(0.5 * (a + b), m, lambda0, r_c, t1, hyperbolic)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    tol = rtol * abs(whole) if whole != 0.0 else rtol
    # rows of (lo, hi, f(lo), f(mid), f(hi), estimate, tolerance)
    size = 256
    st = np.empty((size, 7))
    st[0, 0] = a
    st[0, 1] = b
    st[0, 2] = fa
    st[0, 3] = fm
    st[0, 4] = fb
    st[0, 5] = whole
    st[0, 6] = tol
    top = 1
    total = 0.0
    intervals = 1
    ok = True
    while top > 0:
        top -= 1
        lo = st[top, 0]
        hi = st[top, 1]
        flo = st[top, 2]
        fmid = st[top, 3]
        fhi = st[top, 4]
        est = st[top, 5]
        etol = st[top, 6]
        c = 0.5 * (lo + hi)
        flm = tw_s3(0.5 * (lo + c), m, lambda0, r_c, t1, hyperbolic)
        frm = tw_s3(0.5 * (c + hi), m, lambda0, r_c, t1, hyperbolic)
        left = (c - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - c) / 6.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - est
        if abs(delta) <= 15.0 * etol or c <= lo or hi <= c:
            total += left + right + delta / 15.0
            continue
        if intervals >= max_intervals:
            ok = False
            total += left + right + delta / 15.0
            continue
        intervals += 1
        if top + 2 > size:
            grown = np.empty((2 * size, 7))
            grown[:size] = st
            st = grown
            size *= 2
        st[top, 0] = c
        st[top, 1] = hi
        st[top, 2] = fmid
        st[top, 3] = frm
        st[top, 4] = fhi
        st[top, 5] = right
        st[top, 6] = 0.5 * etol
        top += 1
        st[top, 0] = lo
        st[top, 1] = c
        st[top, 2] = flo
        st[top, 3] = flm
        st[top, 4] = fmid
        st[top, 5] = left
        st[top, 6] = 0.5 * etol
        top += 1
    return total, intervals, ok


tw_proper_time = _jit(_tw_proper_time)


# --------------------------------------------------------------------------
# composite Simpson on a uniform grid (brute-force quadrature)


def _simpson_tw_loop(a, b, steps, m, lambda0, r_c, t1, hyperbolic):
    h = (b - a) / steps
    acc = tw_s3(a, m, lambda0, r_c, t1, hyperbolic) + tw_s3(
        b, m, lambda0, r_c, t1, hyperbolic
    )
    for i in range(1, steps):
        w = 4.0 if i % 2 == 1 else 2.0
        acc += w * tw_s3(a + i * h, m, lambda0, r_c, t1, hyperbolic)
    return acc * h / 3.0


simpson_tw_loop = _jit(_simpson_tw_loop)


def simpson_tw_numpy(a, b, steps, m, lambda0, r_c, t1, hyperbolic):
    t = np.linspace(a, b, steps + 1)
    zeta = math.sqrt(3.0 + 6.0 / m)
    x = lambda0 * zeta * np.abs(t + t1)
    den = np.sinh(x) if hyperbolic else np.sin(x)
    k = lambda0 * zeta * r_c / ((m - 1.0) * den)
    s2 = k ** (m / (m - 1.0)) * np.exp(-((m + 2.0) / (m - 1.0)) * lambda0 * t)
    y = s2 * np.sqrt(s2)
    w = np.full(steps + 1, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return float(np.dot(w, y) * (b - a) / steps / 3.0)


if USE_NUMBA:
    closest_bad_pair = closest_bad_pair_loop
    simpson_tw = simpson_tw_loop
else:
    closest_bad_pair = _closest_bad_pair_numpy
    simpson_tw = simpson_tw_numpy

closest_bad_pair_numpy = _closest_bad_pair_numpy
