"""Special-relativistic kinematics and the Friedmann line element.

Boosts are along the x-axis. Event arrays may be batched: any function taking
an event accepts an array whose last axis holds ``(x, y, z, t)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, DomainError

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class AbsoluteEvent:
    """Newtonian event ``(x1, x2, x3 | t)``: position plus an independent time."""

    x: tuple
    t: float

    def __post_init__(self):
        x = tuple(float(v) for v in self.x)
        if len(x) != 3 or not all(map(math.isfinite, x + (float(self.t),))):
            raise DomainError("absolute event needs three finite coordinates and a finite time")
        object.__setattr__(self, "x", x)


@dataclass(frozen=True)
class BoostParams:
    v: float
    c: float = 1.0

    def __post_init__(self):
        if not self.c > 0:
            raise DomainError("light speed c must be positive")
        if not abs(self.v) < self.c:
            raise DomainError(f"boost speed |v|={abs(self.v)} must be below c={self.c}")

    @property
    def beta(self) -> float:
        return self.v / self.c

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.beta**2)


def event(x, y, z, t) -> np.ndarray:
    """Relative event ``(x, y, z, t)`` as a float array."""
    return np.array([x, y, z, t], dtype=float)


def _events(e) -> np.ndarray:
    e = np.asarray(e, dtype=float)
    if e.shape[-1] != 4:
        raise DimensionMismatch(f"events need 4 components on the last axis, got {e.shape}")
    if not np.all(np.isfinite(e)):
        raise DomainError("event components must be finite")
    return e


def interval_absolute(a1: AbsoluteEvent, a2: AbsoluteEvent) -> tuple[float, float]:
    """Signed time difference ``a1.t - a2.t`` and Euclidean spatial distance."""
    dt = float(a1.t) - float(a2.t)
    return dt, math.dist(a1.x, a2.x)


def spacetime_interval_sq(b1, b2, c: float = 1.0):
    """``-c^2 dt^2 + |dx|^2`` between relative events (spacelike positive)."""
    d = _events(b1) - _events(b2)
    spatial = (d[..., :3] ** 2).sum(axis=-1)
    out = -(c**2) * d[..., 3] ** 2 + spatial
    return float(out) if np.ndim(out) == 0 else out


def lorentz_boost(e, b: BoostParams):
    """Coordinates of ``e`` in a frame moving with velocity ``b.v`` along x.

    The time row uses ``v/c^2``; this equals the ``v/c`` form at c = 1 and is
    the one that keeps the interval invariant for other c.
    """
    e = _events(e)
    g = b.gamma
    x, y, z, t = np.moveaxis(e, -1, 0)
    out = np.stack(
        [
            (x - b.v * t) * g,
            y,
            z,
            (t - (b.v / b.c**2) * x) * g,
        ],
        axis=-1,
    )
    return out


def compose_speeds(v1: float, v2: float, c: float = 1.0) -> float:
    """Relativistic sum of collinear speeds."""
    return (v1 + v2) / (1.0 + v1 * v2 / c**2)


def velocity_transform(u, b: BoostParams):
    """Velocity ``u`` in the frame moving with ``b.v`` along x.

    Evaluated in units of c so that ``u = (+-c, 0, 0)`` maps to itself exactly.
    """
    u = np.asarray(u, dtype=float)
    if u.shape[-1] != 3:
        raise DimensionMismatch("velocities are 3-vectors")
    beta = b.beta
    w = u / b.c
    den = 1.0 - beta * w[..., 0]
    if np.any(den == 0.0):
        raise DomainError("velocity composition denominator vanishes (u_x * v = c^2)")
    shrink = math.sqrt(1.0 - beta * beta)
    out = np.stack(
        [
            (w[..., 0] - beta) / den,
            w[..., 1] * shrink / den,
            w[..., 2] * shrink / den,
        ],
        axis=-1,
    )
    return out * b.c


def anti_vector(v) -> np.ndarray:
    """The vector that cancels ``v``."""
    return -np.asarray(v, dtype=float)


# --------------------------------------------------------------------------
# general metrics


@dataclass(frozen=True)
class MetricForm:
    dimension: int
    g: Callable[[np.ndarray], np.ndarray]

    def at(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise DimensionMismatch(f"coordinates need shape ({self.dimension},), got {x.shape}")
        m = np.asarray(self.g(x), dtype=float)
        if m.shape != (self.dimension, self.dimension):
            raise DimensionMismatch(f"metric returned shape {m.shape}")
        if not np.allclose(m, m.T, rtol=0.0, atol=SYMMETRY_TOL):
            raise DomainError("metric is not symmetric")
        return m


def minkowski(c: float = 1.0, spatial: int = 3) -> MetricForm:
    """``diag(-c^2, 1, ..., 1)`` in ``(t, x, y, z)`` ordering."""
    diag = np.array([-(c**2)] + [1.0] * spatial)
    mat = np.diag(diag)
    return MetricForm(spatial + 1, lambda x: mat)


def general_interval_sq(metric: MetricForm, x, dx) -> float:
    dx = np.asarray(dx, dtype=float)
    if dx.shape != (metric.dimension,):
        raise DimensionMismatch(f"displacement needs shape ({metric.dimension},), got {dx.shape}")
    return float(dx @ metric.at(x) @ dx)


@dataclass(frozen=True)
class FriedmannParams:
    K: float
    a: Callable[[float], float]
    c: float = 1.0

    def __post_init__(self):
        if not self.c > 0:
            raise DomainError("light speed c must be positive")


def _friedmann_diag(p: FriedmannParams, t: float, r: float, theta: float) -> np.ndarray:
    radial = 1.0 - p.K * r * r
    if not radial > 0:
        raise DomainError(f"1 - K r^2 = {radial} <= 0: coordinate singularity")
    a = float(p.a(t))
    if not (math.isfinite(a) and a > 0):
        raise DomainError(f"scale factor a({t}) = {a} must be positive and finite")
    a2 = a * a
    return np.array(
        [-(p.c**2), a2 / radial, a2 * r * r, a2 * r * r * math.sin(theta) ** 2]
    )


def friedmann_interval_sq(p: FriedmannParams, coords, d) -> float:
    """Line element of a homogeneous isotropic cosmos in ``(t, r, theta, phi)``."""
    t, r, theta, _ = (float(v) for v in coords)
    d = np.asarray(d, dtype=float)
    if d.shape != (4,):
        raise DimensionMismatch("displacement needs (dt, dr, dtheta, dphi)")
    return float(np.dot(_friedmann_diag(p, t, r, theta), d * d))


def friedmann_metric(p: FriedmannParams) -> MetricForm:
    return MetricForm(4, lambda x: np.diag(_friedmann_diag(p, x[0], x[1], x[2])))


# --------------------------------------------------------------------------
# cosmos classification


class CosmosKind(enum.Enum):
    STATIC = "Static"
    CONTRACTING = "Contracting"
    EXPANDING = "Expanding"

    def __str__(self):
        return self.value


def scale_derivative(a: Callable[[float], float], t: float, h: float | None = None) -> float:
    if h is None:
        h = 1e-5 * max(1.0, abs(t))
    if not h > 0:
        raise DomainError("step h must be positive")
    hi, lo = float(a(t + h)), float(a(t - h))
    if not (math.isfinite(hi) and math.isfinite(lo)):
        raise DomainError(f"scale factor is not finite near t={t}")
    return (hi - lo) / (2.0 * h)


def classify_cosmos(
    a: Callable[[float], float], t: float, h: float | None = None, zero_band: float = 1e-7
) -> CosmosKind:
    """Static, contracting or expanding according to the sign of da/dt."""
    rate = scale_derivative(a, t, h)
    if abs(rate) <= zero_band:
        return CosmosKind.STATIC
    return CosmosKind.EXPANDING if rate > 0 else CosmosKind.CONTRACTING
