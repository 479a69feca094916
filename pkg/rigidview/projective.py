# -*- coding: utf-8 -*-
# Copyright (c) 2025-present tandemdude
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
"""
Exact planar and spatial primitives, line algebra, the double quotient (cross-ratio) and the
canonical-frame normalization used by every construction in this package.

All values are immutable msgspec structs; all functions are pure.
"""

from __future__ import annotations

__all__ = [
    "COLLINEARITY_TOLERANCE",
    "DEGENERACY_TOLERANCE",
    "PARALLEL_TOLERANCE",
    "AffineMap2D",
    "Line2D",
    "Point2D",
    "Point3D",
    "canonical_frame_map",
    "cross_ratio",
    "intersect_lines",
    "is_collinear",
    "least_squares_point",
    "line_through",
    "point_line_distance",
    "point_with_cross_ratio",
]

import math
import typing as t

import msgspec
import numpy as np

from rigidview import errors

if t.TYPE_CHECKING:
    from collections.abc import Iterable

    import numpy.typing as npt

DEGENERACY_TOLERANCE: t.Final[float] = 1e-12
"""Relative distance below which two points are treated as coincident."""
COLLINEARITY_TOLERANCE: t.Final[float] = 1e-9
"""Relative height (to the bounding scale) below which a triangle is treated as flat."""
PARALLEL_TOLERANCE: t.Final[float] = 1e-12
"""Sine of the angle below which two normalized lines are treated as parallel."""


class Point2D(msgspec.Struct, frozen=True):
    """A point of an image plane."""

    x: float
    y: float

    @property
    def array(self) -> npt.NDArray[np.float64]:
        return np.array([self.x, self.y], dtype=np.float64)

    @classmethod
    def from_array(cls, arr: npt.ArrayLike) -> Point2D:
        x, y = np.asarray(arr, dtype=np.float64).reshape(2)
        return cls(float(x), float(y))

    def distance_to(self, other: Point2D) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


class Point3D(msgspec.Struct, frozen=True):
    """A point (or free vector) of scene space."""

    x: float
    y: float
    z: float

    @property
    def array(self) -> npt.NDArray[np.float64]:
        return np.array([self.x, self.y, self.z], dtype=np.float64)

    @classmethod
    def from_array(cls, arr: npt.ArrayLike) -> Point3D:
        x, y, z = np.asarray(arr, dtype=np.float64).reshape(3)
        return cls(float(x), float(y), float(z))


class Line2D(msgspec.Struct, frozen=True):
    """
    The line ``a*x + b*y + c = 0``.

    Instances produced by this module are normalized so that ``a**2 + b**2 == 1`` and the first
    non-zero of ``(a, b)`` is positive, which makes the representative unique.
    """

    a: float
    b: float
    c: float

    @classmethod
    def normalized(cls, a: float, b: float, c: float) -> Line2D:
        norm = math.hypot(a, b)
        if norm == 0.0 or not math.isfinite(norm):
            raise errors.DegenerateConfiguration("line has no normal direction")
        if a < 0 or (a == 0 and b < 0):
            norm = -norm
        return cls(a / norm, b / norm, c / norm)

    @property
    def normal(self) -> npt.NDArray[np.float64]:
        return np.array([self.a, self.b], dtype=np.float64)

    def evaluate(self, p: Point2D) -> float:
        return self.a * p.x + self.b * p.y + self.c


class AffineMap2D(msgspec.Struct, frozen=True):
    """``p -> linear @ p + translation`` with an invertible linear part (row-major)."""

    linear: tuple[tuple[float, float], tuple[float, float]]
    translation: tuple[float, float]

    @classmethod
    def from_arrays(cls, linear: npt.ArrayLike, translation: npt.ArrayLike) -> AffineMap2D:
        m = np.asarray(linear, dtype=np.float64).reshape(2, 2)
        v = np.asarray(translation, dtype=np.float64).reshape(2)
        return cls(
            ((float(m[0, 0]), float(m[0, 1])), (float(m[1, 0]), float(m[1, 1]))),
            (float(v[0]), float(v[1])),
        )

    @classmethod
    def identity(cls) -> AffineMap2D:
        return cls(((1.0, 0.0), (0.0, 1.0)), (0.0, 0.0))

    @property
    def matrix(self) -> npt.NDArray[np.float64]:
        return np.array(self.linear, dtype=np.float64)

    @property
    def offset(self) -> npt.NDArray[np.float64]:
        return np.array(self.translation, dtype=np.float64)

    def apply(self, p: Point2D) -> Point2D:
        (m00, m01), (m10, m11) = self.linear
        tx, ty = self.translation
        return Point2D(m00 * p.x + m01 * p.y + tx, m10 * p.x + m11 * p.y + ty)

    def inverse(self) -> AffineMap2D:
        m = self.matrix
        if abs(float(np.linalg.det(m))) <= DEGENERACY_TOLERANCE:
            raise errors.CollinearBasis("affine map is not invertible")
        inv = np.linalg.inv(m)
        return AffineMap2D.from_arrays(inv, -inv @ self.offset)

    def then(self, other: AffineMap2D) -> AffineMap2D:
        """Return the map applying ``self`` first and ``other`` second."""
        m = other.matrix @ self.matrix
        return AffineMap2D.from_arrays(m, other.matrix @ self.offset + other.offset)


def _extent(points: Iterable[Point2D]) -> float:
    xs, ys = zip(*((p.x, p.y) for p in points))
    return max(max(xs) - min(xs), max(ys) - min(ys))


def _magnitude(*points: Point2D) -> float:
    return max(1.0, *(max(abs(p.x), abs(p.y)) for p in points))


def is_collinear(p: Point2D, q: Point2D, r: Point2D, tolerance: float = COLLINEARITY_TOLERANCE) -> bool:
    """
    Whether three points are collinear: the triangle height over its longest side is small compared
    to the bounding scale of the triple.
    """
    longest = max(p.distance_to(q), q.distance_to(r), r.distance_to(p))
    if longest <= DEGENERACY_TOLERANCE * _magnitude(p, q, r):
        return True
    twice_area = abs((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x))
    return twice_area / longest <= tolerance * _extent((p, q, r))


def line_through(p: Point2D, q: Point2D) -> Line2D:
    """
    The normalized line through two distinct points.

    Raises:
        :obj:`~rigidview.errors.CoincidentPoints`: If ``p`` and ``q`` coincide within tolerance.
    """
    if p.distance_to(q) <= DEGENERACY_TOLERANCE * _magnitude(p, q):
        raise errors.CoincidentPoints(f"cannot draw a line through coincident points {p} and {q}")
    return Line2D.normalized(p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y)


def intersect_lines(l1: Line2D, l2: Line2D) -> Point2D:
    """
    The common point of two lines.

    Raises:
        :obj:`~rigidview.errors.ParallelLines`: If the lines are parallel within tolerance.
    """
    w = l1.a * l2.b - l2.a * l1.b
    scale = math.hypot(l1.a, l1.b) * math.hypot(l2.a, l2.b)
    if abs(w) <= PARALLEL_TOLERANCE * scale:
        raise errors.ParallelLines(f"lines {l1} and {l2} do not intersect")
    x = (l1.b * l2.c - l2.b * l1.c) / w
    y = (l1.c * l2.a - l2.c * l1.a) / w
    return Point2D(x, y)


def point_line_distance(p: Point2D, line: Line2D) -> float:
    return abs(line.evaluate(p))


def _line_parameters(points: tuple[Point2D, ...]) -> tuple[npt.NDArray[np.float64], float]:
    # signed affine parameters along the common line, measured from its farthest-apart pair
    pts = np.array([[p.x, p.y] for p in points], dtype=np.float64)
    diffs = pts[:, None, :] - pts[None, :, :]
    dists = np.hypot(diffs[..., 0], diffs[..., 1])
    i, j = np.unravel_index(int(np.argmax(dists)), dists.shape)
    span = float(dists[i, j])
    if span <= DEGENERACY_TOLERANCE * _magnitude(*points):
        raise errors.DegenerateQuadruple("all points coincide")

    direction = (pts[j] - pts[i]) / span
    rel = pts - pts[i]
    off_line = np.abs(rel[:, 0] * direction[1] - rel[:, 1] * direction[0])
    if float(off_line.max()) > COLLINEARITY_TOLERANCE * span:
        raise errors.NotCollinear(f"points {points} are not collinear")
    return rel @ direction, span


def cross_ratio(a: Point2D, b: Point2D, c: Point2D, d: Point2D) -> float:
    """
    The double quotient ``DQ(A, B, C, D) = (AC / AD) : (BC / BD)`` of four collinear points.

    Lengths are signed affine parameters along the common line, so the value is a projective
    invariant including its sign.

    Raises:
        :obj:`~rigidview.errors.NotCollinear`: If the points are not collinear within tolerance.
        :obj:`~rigidview.errors.DegenerateQuadruple`: If ``A == D`` or ``B == C``.
    """
    s, span = _line_parameters((a, b, c, d))
    ac, ad = s[2] - s[0], s[3] - s[0]
    bc, bd = s[2] - s[1], s[3] - s[1]
    eps = DEGENERACY_TOLERANCE * span
    if abs(ad) <= eps or abs(bc) <= eps:
        raise errors.DegenerateQuadruple("double quotient denominator vanishes")
    return float(ac * bd / (ad * bc))


def point_with_cross_ratio(a: Point2D, b: Point2D, c: Point2D, q: float) -> Point2D:
    """
    Locate ``D`` on the line ``AB`` such that ``cross_ratio(A, B, C, D) == q``.

    ``C`` must lie on the line ``AB``.

    Raises:
        :obj:`~rigidview.errors.DegenerateQuadruple`: If ``A == B``, ``B == C`` or the requested point
            lies at infinity.
        :obj:`~rigidview.errors.NotCollinear`: If ``C`` is not on the line ``AB``.
    """
    base = b.array - a.array
    length_sq = float(base @ base)
    if math.sqrt(length_sq) <= DEGENERACY_TOLERANCE * _magnitude(a, b):
        raise errors.DegenerateQuadruple("line of the quadruple is undefined")
    if not is_collinear(a, b, c):
        raise errors.NotCollinear(f"{c} does not lie on the line through {a} and {b}")

    # a at parameter 0, b at parameter 1
    t3 = float((c.array - a.array) @ base) / length_sq
    if abs(t3 - 1.0) <= DEGENERACY_TOLERANCE:
        raise errors.DegenerateQuadruple("second and third points coincide")
    denominator = t3 - q * (t3 - 1.0)
    if abs(denominator) <= DEGENERACY_TOLERANCE * max(1.0, abs(t3), abs(q)):
        raise errors.DegenerateQuadruple("requested point lies at infinity")
    t4 = t3 / denominator
    return Point2D.from_array(a.array + t4 * base)


def canonical_frame_map(r: Point2D, q: Point2D, p: Point2D) -> AffineMap2D:
    """
    The affine map sending ``R -> (0, 0)``, ``Q -> (1, 0)`` and ``P -> (0, 1)``.

    Affine maps are projective, so the map preserves every double quotient.

    Raises:
        :obj:`~rigidview.errors.CollinearBasis`: If the three points are collinear.
    """
    if is_collinear(r, q, p):
        raise errors.CollinearBasis(f"basis points {r}, {q}, {p} are collinear")
    basis = np.column_stack([q.array - r.array, p.array - r.array])
    linear = np.linalg.inv(basis)
    return AffineMap2D.from_arrays(linear, -linear @ r.array)


def least_squares_point(lines: Iterable[Line2D]) -> Point2D:
    """
    The point minimizing the sum of squared distances to normalized lines.

    Raises:
        :obj:`~rigidview.errors.ParallelLines`: If the lines are all parallel.
    """
    lines = list(lines)
    normals = np.array([[ln.a, ln.b] for ln in lines], dtype=np.float64)
    offsets = np.array([ln.c for ln in lines], dtype=np.float64)
    if normals.shape[0] < 2:
        raise errors.ParallelLines("at least two lines are required")
    gram = normals.T @ normals
    if abs(float(np.linalg.det(gram))) <= PARALLEL_TOLERANCE * float(np.trace(gram)) ** 2:
        raise errors.ParallelLines("lines are parallel and have no common point")
    return Point2D.from_array(np.linalg.solve(gram, -normals.T @ offsets))
