"""Kasner exponents and the Townsend-Wohlfarth accelerating cosmology.

Kasner
    ``ds^2 = -dt^2 + t^(2 mu) dx_3^2 + t^(2 nu) ds^2(T^m)`` is a vacuum solution
    iff ``3 mu + m nu = 1`` and ``3 mu^2 + m nu^2 = 1``. The exponent ``nu`` is
    solved from those two rules; the textbook-style formula
    ``nu = (3 -+ sqrt(3m(m+2))) / (3(m+3))`` only satisfies them at m = 3.

Townsend-Wohlfarth
    Four-dimensional Einstein-frame scale factor ``S(t)`` with proper time
    ``d tau = S^3 dt``::

        K(t)   = lambda0 zeta r_c / ((m-1) f(lambda0 zeta |t + t1|))
        phi(t) = (ln K - 3 lambda0 t) / (m-1)
        S^2    = K^(m/(m-1)) exp(-(m+2)/(m-1) lambda0 t),   zeta = sqrt(3 + 6/m)

    with ``f = sinh`` for compactification on a hyperbolic space (the default)
    and ``f = sin`` for the trigonometric variant. Only ``f = sinh`` produces
    the expansion factor of about 3.04 at m = 7; the trigonometric form gives
    about 2.39 on its first branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .errors import DomainError, NoAccelerationWindow, QuadratureError
from .quadrature import MAX_INTERVALS, adaptive_simpson

SUM_RULE_TOL = 1e-12


# --------------------------------------------------------------------------
# Kasner


@dataclass(frozen=True)
class KasnerSolution:
    m: int
    branch: str
    mu: float
    nu: float

    @property
    def linear_residual(self) -> float:
        return 3.0 * self.mu + self.m * self.nu - 1.0

    @property
    def quadratic_residual(self) -> float:
        return 3.0 * self.mu**2 + self.m * self.nu**2 - 1.0


def kasner_exponents(m: int, branch: str = "plus") -> KasnerSolution:
    """Exponents ``(mu, nu)`` of the vacuum Kasner metric with ``m`` extra dimensions."""
    if int(m) != m or m < 1:
        raise DomainError("m must be an integer >= 1")
    if branch not in ("plus", "minus"):
        raise DomainError("branch must be 'plus' or 'minus'")
    m = int(m)
    sign = 1.0 if branch == "plus" else -1.0
    root = math.sqrt(3.0 * m * (m + 2))
    mu = (3.0 + sign * root) / (3.0 * (m + 3))
    nu = (m - sign * root) / (m * (m + 3))
    sol = KasnerSolution(m, branch, mu, nu)
    assert abs(sol.linear_residual) <= SUM_RULE_TOL and abs(sol.quadratic_residual) <= SUM_RULE_TOL
    return sol


def kasner_exponents_printed(m: int, branch: str = "plus") -> tuple[float, float]:
    """The symmetric ``(mu, nu)`` pair as commonly printed; fails the sum rules unless m = 3."""
    sign = 1.0 if branch == "plus" else -1.0
    root = math.sqrt(3.0 * m * (m + 2))
    return (3.0 + sign * root) / (3.0 * (m + 3)), (3.0 - sign * root) / (3.0 * (m + 3))


def kasner_acceleration_check(mu: float, t: float) -> tuple[float, float, float]:
    """``a = t^mu`` and its first two derivatives."""
    if not t > 0:
        raise DomainError("Kasner time must be positive")
    return t**mu, mu * t ** (mu - 1.0), mu * (mu - 1.0) * t ** (mu - 2.0)


def time_shift_scale(mu: float, t_inf: float, t):
    """``a = (t_inf - t)^mu`` and its first two derivatives in t.

    Accepts scalar or array ``t``; every sample must satisfy ``t < t_inf``.
    """
    tau = t_inf - np.asarray(t, dtype=float)
    if np.any(tau <= 0):
        raise DomainError("time-shifted scale factor needs t < t_inf")
    a = tau**mu
    da = -mu * tau ** (mu - 1.0)
    d2a = mu * (mu - 1.0) * tau ** (mu - 2.0)
    if np.ndim(a) == 0:
        return float(a), float(da), float(d2a)
    return a, da, d2a


# --------------------------------------------------------------------------
# Townsend-Wohlfarth


@dataclass(frozen=True)
class TWCosmology:
    m: int
    lambda0: float = 1.0
    r_c: float = 1.0
    t1: float = 0.0
    kind: str = "sinh"

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise DomainError("m must be an integer >= 2")
        if not (self.lambda0 > 0 and self.r_c > 0):
            raise DomainError("lambda0 and r_c must be positive")
        if self.kind not in ("sinh", "sin"):
            raise DomainError("kind must be 'sinh' or 'sin'")

    @property
    def zeta(self) -> float:
        return math.sqrt(3.0 + 6.0 / self.m)

    @property
    def rate(self) -> float:
        """``lambda0 * zeta``: the argument of f per unit of shifted time."""
        return self.lambda0 * self.zeta

    @property
    def hyperbolic(self) -> bool:
        return self.kind == "sinh"

    def branches(self) -> list[tuple[float, float]]:
        """Open t-intervals on which the state is defined."""
        if self.hyperbolic:
            return [(-math.inf, -self.t1), (-self.t1, math.inf)]
        return [(-self.t1, math.pi / self.rate - self.t1)]

    def branch_of(self, t0: float, t1: Optional[float] = None) -> tuple[float, float]:
        hi_t = t0 if t1 is None else t1
        lo, hi = min(t0, hi_t), max(t0, hi_t)
        for a, b in self.branches():
            if a < lo and hi < b:
                return a, b
        raise DomainError(f"[{lo}, {hi}] is not inside a single regular branch {self.branches()}")


@dataclass(frozen=True)
class TWState:
    t: float
    K: float
    phi: float
    S: float


def _k(cfg: TWCosmology, t):
    x = cfg.rate * np.abs(t + cfg.t1)
    den = np.sinh(x) if cfg.hyperbolic else np.sin(x)
    return cfg.rate * cfg.r_c / ((cfg.m - 1) * den)


def tw_state(cfg: TWCosmology, t: float) -> TWState:
    cfg.branch_of(t)
    m = cfg.m
    k = float(_k(cfg, t))
    phi = (math.log(k) - 3.0 * cfg.lambda0 * t) / (m - 1)
    s2 = k ** (m / (m - 1)) * math.exp(-((m + 2) / (m - 1)) * cfg.lambda0 * t)
    return TWState(float(t), k, phi, math.sqrt(s2))


def tw_scale(cfg: TWCosmology, t) -> np.ndarray:
    """Vectorised ``S(t)`` without domain checks."""
    m = cfg.m
    s2 = _k(cfg, t) ** (m / (m - 1)) * np.exp(-((m + 2) / (m - 1)) * cfg.lambda0 * np.asarray(t))
    return np.sqrt(s2)


def tw_log_derivatives(cfg: TWCosmology, t):
    """First and second t-derivatives of ``ln S``."""
    m = cfg.m
    u = np.asarray(t, dtype=float) + cfg.t1
    x = cfg.rate * np.abs(u)
    if cfg.hyperbolic:
        cot = np.cosh(x) / np.sinh(x)
        inv_f2 = 1.0 / np.sinh(x) ** 2
    else:
        cot = np.cos(x) / np.sin(x)
        inv_f2 = 1.0 / np.sin(x) ** 2
    weight = m / (2.0 * (m - 1))
    drift = (m + 2) * cfg.lambda0 / (2.0 * (m - 1))
    d1 = -weight * cfg.rate * np.sign(u) * cot - drift
    d2 = weight * cfg.rate**2 * inv_f2
    return d1, d2


def tw_expansion_rate(cfg: TWCosmology, t):
    """``dS/dtau`` where ``d tau = S^3 dt``."""
    d1, _ = tw_log_derivatives(cfg, t)
    return d1 / tw_scale(cfg, t) ** 2


def tw_acceleration(cfg: TWCosmology, t):
    """``d^2 S / d tau^2``."""
    d1, d2 = tw_log_derivatives(cfg, t)
    return (d2 - 2.0 * d1 * d1) / tw_scale(cfg, t) ** 5


def proper_time(
    cfg: Optional[TWCosmology],
    t0: float,
    t1: float,
    rtol: float = 1e-8,
    scale: Optional[Callable[[float], float]] = None,
) -> float:
    """``int_{t0}^{t1} S(t)^3 dt``.

    ``scale`` replaces the closed-form ``S`` (no domain check is then made).
    """
    if scale is not None:
        return adaptive_simpson(lambda t: float(scale(t)) ** 3, t0, t1, rtol)
    cfg.branch_of(t0, t1)
    if t0 == t1:
        return 0.0
    lo, hi, sign = (t0, t1, 1.0) if t0 < t1 else (t1, t0, -1.0)
    value, _, ok = _kernels.tw_proper_time(
        float(lo), float(hi), float(rtol), MAX_INTERVALS,
        float(cfg.m), float(cfg.lambda0), float(cfg.r_c), float(cfg.t1), cfg.hyperbolic,
    )
    if not ok or not math.isfinite(value):
        raise QuadratureError(f"proper time on [{lo}, {hi}] did not converge")
    return sign * value


@dataclass(frozen=True)
class AccelerationWindow:
    t_enter: float
    t_exit: float
    expansion_factor: float
    definition: str = "S(t_exit) / S(t_enter) over the maximal interval with dS/dtau > 0 and d2S/dtau2 > 0"


def _window_indicator(cfg: TWCosmology, t):
    d1, d2 = tw_log_derivatives(cfg, t)
    return np.minimum(d1, d2 - 2.0 * d1 * d1)


def _refine(cfg: TWCosmology, lo: float, hi: float, tol: float) -> float:
    """Bisect the sign change of the window indicator on ``[lo, hi]``."""
    flo = _window_indicator(cfg, lo) > 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (_window_indicator(cfg, mid) > 0) == flo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def tw_acceleration_window(
    cfg: TWCosmology, scan_resolution: int = 100_000, span: float = 20.0, tol: float = 1e-10
) -> AccelerationWindow:
    """Locate the epoch of accelerated expansion and its expansion factor.

    Scans each regular branch on a uniform grid of ``scan_resolution`` points
    (hyperbolic branches are truncated at ``|lambda0 zeta (t + t1)| <= span``),
    bisects the endpoints to ``tol`` and returns the interval with the largest
    ``S(t_exit) / S(t_enter)``.
    """
    if scan_resolution < 1000:
        raise DomainError("scan_resolution must be >= 1000")
    windows = []
    for a, b in cfg.branches():
        a = max(a, -cfg.t1 - span / cfg.rate)
        b = min(b, -cfg.t1 + span / cfg.rate)
        pad = (b - a) / (scan_resolution + 1)
        t = np.linspace(a + pad, b - pad, scan_resolution)
        on = _window_indicator(cfg, t) > 0
        edges = np.flatnonzero(np.diff(on.astype(np.int8)))
        starts = [i for i in edges if not on[i]]
        ends = [i for i in edges if on[i]]
        if on[0]:
            starts.insert(0, None)
        if on[-1]:
            ends.append(None)
        for s, e in zip(starts, ends):
            if s is None or e is None:
                # touches the end of the scanned region: not a closed window
                continue
            t_enter = _refine(cfg, t[s], t[s + 1], tol)
            t_exit = _refine(cfg, t[e], t[e + 1], tol)
            factor = float(tw_scale(cfg, t_exit) / tw_scale(cfg, t_enter))
            windows.append(AccelerationWindow(float(t_enter), float(t_exit), factor))
    if not windows:
        raise NoAccelerationWindow(f"no accelerating interval found for {cfg}")
    return max(windows, key=lambda w: w.expansion_factor)
