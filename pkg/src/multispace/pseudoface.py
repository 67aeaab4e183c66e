"""Pseudo-faces: continuous maps of R^m into a deformed copy of R^n.

A :class:`PseudoFaceMap` bundles the composed map ``p`` (already carrying the
deformation ``omega``), the deformation itself, and optionally a right
inverse ``section`` used to conjugate self-maps of the source space.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import (
    DimensionMismatch,
    DomainError,
    EmptySlice,
    MissingSection,
    NonFiniteImage,
    SingularSlice,
)

Vector = Callable[[np.ndarray], np.ndarray]

SECTION_ATOL = 1e-9
DEFAULT_GRID = 64


def _as_vector(x, dim: Optional[int] = None, name: str = "point") -> np.ndarray:
    v = np.atleast_1d(np.asarray(x, dtype=float))
    if v.ndim != 1:
        raise DimensionMismatch(f"{name} must be a flat vector, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"{name} has length {v.shape[0]}, expected {dim}")
    return v


@dataclass(frozen=True)
class PseudoFaceMap:
    """Continuous map ``p: R^m -> (R^n, omega)``.

    ``p`` is the composed map into the pseudo-metric space; ``omega`` is kept
    for reference and for building ``p`` in the helper constructors.
    """

    source_dim: int
    target_dim: int
    omega: Vector
    p: Vector
    section: Optional[Vector] = None

    def __post_init__(self):
        if self.source_dim < 1 or self.target_dim < 1:
            raise DimensionMismatch("source_dim and target_dim must be >= 1")

    def __call__(self, point) -> np.ndarray:
        return evaluate_pseudo_face(self, point)

    def check_section(self, samples: Sequence) -> None:
        """Raise if ``p(section(y)) != y`` on any of ``samples``."""
        if self.section is None:
            raise MissingSection("map has no section")
        for y in samples:
            y = _as_vector(y, self.target_dim, "sample")
            back = _as_vector(self.p(_as_vector(self.section(y), self.source_dim)), self.target_dim)
            if not np.allclose(back, y, rtol=0.0, atol=SECTION_ATOL):
                raise MissingSection(f"section is not a right inverse of p at {y.tolist()}")


def projection_face(omega: Vector, source_dim: int, target_dim: int, section=None) -> PseudoFaceMap:
    """Face obtained by dropping trailing coordinates then deforming.

    ``p(x_1..x_m) = omega(x_1..x_n)``.
    """
    if source_dim < target_dim:
        raise DimensionMismatch("projection needs source_dim >= target_dim")

    def p(x):
        return np.asarray(omega(np.asarray(x, dtype=float)[:target_dim]), dtype=float)

    return PseudoFaceMap(source_dim, target_dim, omega, p, section)


def scaled_ball_face(sigma: float, n: int) -> PseudoFaceMap:
    """``p(x_1..x_n, t) = sigma * t * (x_1..x_n)``; the last source coordinate is t."""

    def p(point):
        point = np.asarray(point, dtype=float)
        return sigma * point[-1] * point[:-1]

    return PseudoFaceMap(n + 1, n, lambda x: np.asarray(x, dtype=float), p)


def angle_face(n: int) -> PseudoFaceMap:
    """Angle deformation: a point of R^{n+1} goes to twice its angle with the t-axis."""

    def p(point):
        return np.array([angle_field_sample(point)])

    return PseudoFaceMap(n + 1, 1, lambda x: np.asarray(x, dtype=float), p)


def evaluate_pseudo_face(fmap: PseudoFaceMap, point) -> np.ndarray:
    x = _as_vector(point, fmap.source_dim)
    y = _as_vector(fmap.p(x), fmap.target_dim, "image")
    return y


# --------------------------------------------------------------------------
# uniform continuity


@dataclass(frozen=True)
class DomainBox:
    lower: tuple
    upper: tuple
    grid_resolution: int = DEFAULT_GRID

    def __post_init__(self):
        lo = tuple(float(v) for v in np.atleast_1d(self.lower))
        hi = tuple(float(v) for v in np.atleast_1d(self.upper))
        if len(lo) != len(hi):
            raise DimensionMismatch("lower and upper differ in length")
        if any(a >= b for a, b in zip(lo, hi)):
            raise DomainError("box needs lower[i] < upper[i] on every axis")
        if self.grid_resolution < 2:
            raise DomainError("grid_resolution must be >= 2")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def steps(self) -> np.ndarray:
        return (np.array(self.upper) - np.array(self.lower)) / (self.grid_resolution - 1)

    def grid(self) -> np.ndarray:
        """Sample points in C order, shape ``(resolution**dim, dim)``."""
        axes = [np.linspace(a, b, self.grid_resolution) for a, b in zip(self.lower, self.upper)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([g.ravel() for g in mesh], axis=1)


@dataclass(frozen=True)
class ContinuityReport:
    passed: bool
    epsilon: float
    delta_estimate: float
    grid_scale: float
    counterexample: Optional[tuple] = None  # (u, v, image distance)


def check_uniform_continuity(fmap: PseudoFaceMap, box: DomainBox, epsilon: float) -> ContinuityReport:
    """Empirical epsilon-delta certificate on a uniform grid.

    ``delta_estimate`` is the distance of the closest sampled pair whose images
    are at least ``epsilon`` apart (``inf`` when no such pair exists), i.e. the
    largest delta the samples support. The check fails when that pair is
    closer than the grid can resolve (1.5 grid steps), in which case the pair
    is returned as a counterexample and ``delta_estimate`` is the grid scale.
    """
    if not epsilon > 0:
        raise DomainError("epsilon must be positive")
    if box.dim != fmap.source_dim:
        raise DimensionMismatch(f"box has dimension {box.dim}, map expects {fmap.source_dim}")
    points = box.grid()
    images = np.array([evaluate_pseudo_face(fmap, u) for u in points])
    if not np.all(np.isfinite(images)):
        bad = points[~np.all(np.isfinite(images), axis=1)][0]
        raise NonFiniteImage(f"map is not finite at {bad.tolist()} inside the box")
    scale = 1.5 * float(np.max(box.steps))
    dist, i, j = _kernels.closest_bad_pair(points, images, float(epsilon))
    if i < 0 or dist >= scale:
        return ContinuityReport(True, float(epsilon), float(dist), scale)
    gap = float(np.linalg.norm(images[i] - images[j]))
    return ContinuityReport(
        False,
        float(epsilon),
        scale,
        scale,
        (tuple(points[i].tolist()), tuple(points[j].tolist()), gap),
    )


# --------------------------------------------------------------------------
# transport of self-maps


def conjugate_transport(g: Vector, fmap: PseudoFaceMap) -> Vector:
    """Return ``p . g . section`` acting on the pseudo-face."""
    if fmap.section is None:
        raise MissingSection("conjugate_transport needs a section of p")
    section = fmap.section

    def transported(y):
        y = _as_vector(y, fmap.target_dim, "image point")
        x = _as_vector(section(y), fmap.source_dim, "section value")
        return evaluate_pseudo_face(fmap, g(x))

    return transported


# --------------------------------------------------------------------------
# pseudo-shapes of balls


@dataclass(frozen=True)
class PseudoShapeSlice:
    t: float
    radius: float


def _check_slice(R: float, t: float) -> None:
    if not R > 0:
        raise DomainError("ball radius R must be positive")
    if abs(t) > R:
        raise EmptySlice(f"|t|={abs(t)} exceeds R={R}; the slice is empty")


def ball_pseudo_shape_scaled(R: float, t: float, sigma: float) -> PseudoShapeSlice:
    """Slice radius ``sqrt(R^2 - t^2) / (sigma |t|)`` under the scaling deformation."""
    _check_slice(R, t)
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    if t == 0:
        raise SingularSlice("t = 0 is the singular slice of the scaling deformation")
    return PseudoShapeSlice(float(t), math.sqrt(R * R - t * t) / (sigma * abs(t)))


def ball_pseudo_shape_angle(R: float, t: float) -> PseudoShapeSlice:
    _check_slice(R, t)
    return PseudoShapeSlice(float(t), math.sqrt(R * R - t * t))


def ball_profile_scaled(
    R: float, sigma: float, sample_count: int, paper_figure_mode: bool = False
) -> list[PseudoShapeSlice]:
    """Uniform sweep of ``t`` over ``[-R, R]`` with the ``t = 0`` sample dropped.

    ``paper_figure_mode`` uses the plain ``sqrt(R^2 - t^2)`` profile quoted for
    the planar case with sigma = 1/2 (the elliptic-ball figure) instead of the
    general ``sqrt(R^2 - t^2) / (sigma |t|)``. The two disagree; the general form
    gives ``2 sqrt(R^2 - t^2) / |t|`` there.
    """
    if sample_count < 3:
        raise DomainError("sample_count must be >= 3")
    if not R > 0 or not sigma > 0:
        raise DomainError("R and sigma must be positive")
    out = []
    for t in np.linspace(-R, R, sample_count):
        t = float(t)
        if t == 0.0:
            continue
        if paper_figure_mode:
            out.append(ball_pseudo_shape_angle(R, t))
        else:
            out.append(ball_pseudo_shape_scaled(R, t, sigma))
    return out


def angle_field_sample(point) -> float:
    """Twice the angle between ``OP`` and the positive t-axis (last coordinate)."""
    v = _as_vector(point)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise DomainError("angle is undefined at the origin")
    cos = min(1.0, max(-1.0, v[-1] / norm))
    return 2.0 * math.acos(cos)


def sphere_pseudo_plane(point, t: float, radius: float = 1.0, tol: float = 1e-9) -> np.ndarray:
    """Map a point of a sphere centred at the origin to ``(z of unit normal, t)``."""
    u = _as_vector(point, 3)
    norm = float(np.linalg.norm(u))
    if abs(norm - radius) > tol:
        raise DomainError(f"point is off the sphere of radius {radius} (|u|={norm})")
    return np.array([u[2] / norm, float(t)])


# --------------------------------------------------------------------------
# subspace chains


@dataclass(frozen=True)
class SubspaceLink:
    dimension: int
    basis: frozenset

    def contains(self, anchor: np.ndarray, vector) -> bool:
        offset = _as_vector(vector, anchor.shape[0], "vector") - anchor
        free = [i for i in range(anchor.shape[0]) if i not in self.basis]
        return bool(np.all(offset[free] == 0.0))


@dataclass(frozen=True)
class SubspaceChain:
    anchor: np.ndarray = field(compare=False)
    links: tuple

    def contains(self, level: int, vector) -> bool:
        """Whether ``vector`` lies in the link at position ``level`` (0 = whole space)."""
        return self.links[level].contains(self.anchor, vector)

    @property
    def dimensions(self) -> list[int]:
        return [link.dimension for link in self.links]


def subspace_chain(anchor) -> SubspaceChain:
    """Chain of coordinate subspaces through ``anchor``, from R^n down to the point.

    Link ``k`` is spanned by the first ``n - k`` coordinate axes (0-based).
    """
    p = _as_vector(anchor, name="anchor")
    n = p.shape[0]
    links = tuple(SubspaceLink(d, frozenset(range(d))) for d in range(n, -1, -1))
    return SubspaceChain(p.copy(), links)


def chain_is_nested(chain: SubspaceChain) -> bool:
    return all(b.basis <= a.basis and b.dimension == a.dimension - 1 for a, b in itertools.pairwise(chain.links))
