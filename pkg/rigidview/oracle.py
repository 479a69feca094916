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
Exact synthetic scenes: rigid point sets, perspective cameras and their projections.

Everything here is computed with elementary line and plane intersections in space, so it serves
as ground truth for the image-only constructions of the rest of the package.
"""

from __future__ import annotations

__all__ = [
    "CameraModel",
    "Certificate",
    "RigidScene",
    "SceneDocument",
    "ShapeSignature",
    "TraceTruth",
    "ambiguity_family",
    "certificate",
    "dump_scene",
    "load_scene",
    "loads_scene",
    "perturb",
    "project",
    "project_point",
    "random_rigid_scene",
    "shape_signature",
    "slide_cameras",
    "true_projected_focal",
    "true_traces",
    "write_scene",
]

import itertools
import logging
import math
import pathlib
import typing as t

import msgspec
import numpy as np

from rigidview import errors
from rigidview import parsers
from rigidview.frames import BASIS_LABELS
from rigidview.frames import LabeledFrame
from rigidview.frames import extra_label
from rigidview.projective import Point2D
from rigidview.projective import Point3D
from rigidview.projective import canonical_frame_map
from rigidview.projective import is_collinear
from rigidview.settings import OracleSettings

if t.TYPE_CHECKING:
    from collections.abc import Sequence

    import numpy.typing as npt

logger = logging.getLogger(__name__)

_AXIS_TOLERANCE: t.Final[float] = 1e-9
_RAY_TOLERANCE: t.Final[float] = 1e-12
_AUXILIARY: t.Final[dict[str, str]] = {"B": "A", "D": "C", "F": "E", "H": "G"}
"""Auxiliary point -> the basis point whose frame-1 ray defines it."""

Vector3 = tuple[float, float, float]


def _vec(p: Point3D | Vector3) -> npt.NDArray[np.float64]:
    if isinstance(p, Point3D):
        return p.array
    return np.asarray(p, dtype=np.float64)


class CameraModel(msgspec.Struct, frozen=True, kw_only=True):
    """
    A perspective camera: a focal point and an image plane with an orthonormal coordinate frame.

    Image coordinates of a point are its offsets from ``plane_origin`` along ``axis_x`` and ``axis_y``.
    """

    plane_origin: Point3D
    axis_x: Vector3
    axis_y: Vector3
    focal_point: Point3D

    def __post_init__(self) -> None:
        ax, ay = _vec(self.axis_x), _vec(self.axis_y)
        gram = np.array([[ax @ ax, ax @ ay], [ay @ ax, ay @ ay]])
        if not np.allclose(gram, np.eye(2), atol=_AXIS_TOLERANCE):
            raise ValueError("image axes must be orthonormal")
        if abs(self.focal_distance) <= _AXIS_TOLERANCE:
            raise errors.DegenerateConfiguration("focal point lies on the image plane")

    @property
    def normal(self) -> npt.NDArray[np.float64]:
        return np.cross(_vec(self.axis_x), _vec(self.axis_y))

    @property
    def focal_distance(self) -> float:
        """Signed distance of the focal point from the image plane."""
        return float((self.focal_point.array - self.plane_origin.array) @ self.normal)

    def lift(self, image: Point2D) -> Point3D:
        """The point of the image plane with the given image coordinates."""
        return Point3D.from_array(self.plane_origin.array + image.x * _vec(self.axis_x) + image.y * _vec(self.axis_y))

    def with_focal_point(self, focal_point: Point3D) -> CameraModel:
        return msgspec.structs.replace(self, focal_point=focal_point)


class Certificate(msgspec.Struct, frozen=True, kw_only=True):
    """
    General-position checks of a scene seen by two cameras.

    Attributes:
        no_four_coplanar: No four of the seven basis points are coplanar.
        images_general: No three of the basis images (and, in frame 2, of the auxiliary images) are
            collinear, and every further point keeps clear of the basis lines.
        traces_conditioned: Every auxiliary point has finite trace parameters inside the scan range and
            away from the collapse values ``u == 1``, ``v == 1`` and ``u * v == 1``.
    """

    no_four_coplanar: bool
    images_general: bool
    traces_conditioned: bool

    @property
    def certified(self) -> bool:
        return self.no_four_coplanar and self.images_general and self.traces_conditioned


class RigidScene(msgspec.Struct, frozen=True):
    points: dict[str, Point3D]
    certificate: Certificate | None = None

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.points)


class ShapeSignature(msgspec.Struct, frozen=True):
    """All pairwise distances of a point set divided by the largest one, sorted."""

    values: tuple[float, ...]

    def divergence(self, other: ShapeSignature) -> float:
        """Largest entrywise difference; infinite for point sets of different size."""
        if len(self.values) != len(other.values):
            return math.inf
        return max((abs(a - b) for a, b in zip(self.values, other.values)), default=0.0)


class TraceTruth(msgspec.Struct, frozen=True, kw_only=True):
    """Exact frame-2 data of one auxiliary point."""

    image: Point2D
    """Image in frame-2 coordinates."""
    canonical: Point2D
    """Image in the canonical frame of frame 2."""
    u: float
    v: float


def project_point(point: Point3D, cam: CameraModel) -> Point2D:
    """
    Intersect the ray from the focal point through ``point`` with the image plane.

    Raises:
        :obj:`~rigidview.errors.PointAtFocus`: If ``point`` is the focal point.
        :obj:`~rigidview.errors.RayParallelToPlane`: If the ray never meets the plane.
    """
    focal = cam.focal_point.array
    direction = point.array - focal
    length = float(np.linalg.norm(direction))
    if length <= _RAY_TOLERANCE * max(1.0, float(np.linalg.norm(focal))):
        raise errors.PointAtFocus(f"{point} coincides with the focal point")

    normal = cam.normal
    along = float(direction @ normal)
    if abs(along) <= _RAY_TOLERANCE * length:
        raise errors.RayParallelToPlane(f"the ray through {point} is parallel to the image plane")

    hit = focal + direction * (float((cam.plane_origin.array - focal) @ normal) / along)
    offset = hit - cam.plane_origin.array
    return Point2D(float(offset @ _vec(cam.axis_x)), float(offset @ _vec(cam.axis_y)))


def project(scene: RigidScene, cam: CameraModel, frame_id: str = "") -> LabeledFrame:
    return LabeledFrame(frame_id, {label: project_point(p, cam) for label, p in scene.points.items()})


def true_projected_focal(cam1: CameraModel, cam2: CameraModel) -> Point2D:
    """The image of the first camera's focal point in the second camera."""
    return project_point(cam1.focal_point, cam2)


def _ray_plane(origin: Point3D, through: Point3D, plane: tuple[Point3D, Point3D, Point3D]) -> Point3D:
    p, q, r = (x.array for x in plane)
    normal = np.cross(q - p, r - p)
    direction = through.array - origin.array
    along = float(direction @ normal)
    if abs(along) <= _RAY_TOLERANCE * float(np.linalg.norm(direction) * np.linalg.norm(normal)):
        raise errors.RayParallelToPlane("ray is parallel to the plane PQR")
    return Point3D.from_array(origin.array + direction * (float((p - origin.array) @ normal) / along))


def _traces(point: Point2D) -> tuple[float, float]:
    # canonical frame: the line through P''=(0, 1) and the point meets y=0 at x / (1 - y)
    if abs(point.x) <= _RAY_TOLERANCE or abs(point.y) <= _RAY_TOLERANCE:
        return math.inf, math.inf
    return (1.0 - point.y) / point.x, (1.0 - point.x) / point.y


def true_traces(scene: RigidScene, cam1: CameraModel, cam2: CameraModel) -> dict[str, TraceTruth]:
    """
    Exact ``B''``, ``D''``, ``F''``, ``H''`` (keyed ``"B"``, ``"D"``, ``"F"``, ``"H"``) and their trace
    parameters, found by intersecting the rays of frame 1 with the plane ``PQR`` in space.
    """
    pts = scene.points
    frame2 = {label: project_point(pts[label], cam2) for label in ("R", "Q", "P")}
    to_canonical = canonical_frame_map(frame2["R"], frame2["Q"], frame2["P"])

    truth: dict[str, TraceTruth] = {}
    for aux, basis in _AUXILIARY.items():
        spatial = _ray_plane(cam1.focal_point, pts[basis], (pts["P"], pts["Q"], pts["R"]))
        image = project_point(spatial, cam2)
        canonical = to_canonical.apply(image)
        u, v = _traces(canonical)
        truth[aux] = TraceTruth(image=image, canonical=canonical, u=u, v=v)
    return truth


def _volume_ratio(quad: tuple[npt.NDArray[np.float64], ...]) -> float:
    a, b, c, d = quad
    edges = np.array([b - a, c - a, d - a])
    longest = max(float(np.linalg.norm(x - y)) for x, y in itertools.combinations(quad, 2))
    return abs(float(np.linalg.det(edges))) / longest**3


def _no_three_collinear(points: list[Point2D], tolerance: float) -> bool:
    return not any(is_collinear(p, q, r, tolerance) for p, q, r in itertools.combinations(points, 3))


def certificate(
    scene: RigidScene,
    cam1: CameraModel,
    cam2: CameraModel,
    *,
    tolerance: float = 1e-6,
    margin: float = 1e-2,
    flatness: float = 1e-3,
    scan_limit: float = 45.0,
) -> Certificate:
    """
    Check a scene for the general position every construction of the package relies on.

    Args:
        scene: The scene; must hold the seven basis labels.
        cam1: The first camera.
        cam2: The second camera.
        tolerance: Relative volume (to the cube of the longest edge) under which four points count as
            coplanar.
        margin: Distance kept by trace parameters from the collapse values (and, relative to the frame
            scale, by auxiliary images from their anchors).
        flatness: Relative height under which image triples count as collinear.
        scan_limit: Largest accepted ``|u|`` and ``|v|``.
    """
    pts = scene.points
    basis = [pts[label].array for label in BASIS_LABELS]
    no_four_coplanar = all(_volume_ratio(quad) > tolerance for quad in itertools.combinations(basis, 4))

    try:
        frame1 = project(scene, cam1)
        frame2 = project(scene, cam2)
        truth = true_traces(scene, cam1, cam2)
        focal = true_projected_focal(cam1, cam2)
    except errors.DegenerateConfiguration:
        return Certificate(no_four_coplanar=no_four_coplanar, images_general=False, traces_conditioned=False)

    extras = [label for label in scene.labels if label not in BASIS_LABELS]
    images_general = (
        _no_three_collinear([frame1[label] for label in BASIS_LABELS], flatness)
        and _no_three_collinear([frame2[label] for label in BASIS_LABELS], flatness)
        and _no_three_collinear([frame2[k] for k in ("P", "Q", "R")] + [x.image for x in truth.values()], flatness)
        and all(
            _no_three_collinear([frame1[k] for k in ("P", "Q", "R", "A", "C")] + [frame1[z]], flatness)
            for z in extras
        )
    )

    scale = max(1.0, abs(focal.x), abs(focal.y))
    traces_conditioned = all(
        _conditioned(truth[aux], frame2[basis_label], margin * scale, margin, scan_limit)
        for aux, basis_label in _AUXILIARY.items()
    )
    return Certificate(
        no_four_coplanar=no_four_coplanar, images_general=images_general, traces_conditioned=traces_conditioned
    )


def _conditioned(truth: TraceTruth, anchor: Point2D, clearance: float, margin: float, scan_limit: float) -> bool:
    if not (abs(truth.u) <= scan_limit and abs(truth.v) <= scan_limit):
        return False
    if min(abs(truth.u - 1.0), abs(truth.v - 1.0), abs(truth.u * truth.v - 1.0)) <= margin:
        return False
    return truth.image.distance_to(anchor) > clearance


def _orthonormal_frame(rng: np.random.Generator, normal: npt.NDArray[np.float64]) -> tuple[Vector3, Vector3]:
    seed = rng.normal(size=3)
    ax = seed - (seed @ normal) * normal
    ax /= np.linalg.norm(ax)
    ay = np.cross(normal, ax)
    return (float(ax[0]), float(ax[1]), float(ax[2])), (float(ay[0]), float(ay[1]), float(ay[2]))


def _random_camera(rng: np.random.Generator, settings: OracleSettings) -> CameraModel:
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    distance = rng.uniform(*settings.camera_distance)
    focal_length = rng.uniform(*settings.focal_length)
    focal_point = distance * direction
    axis_x, axis_y = _orthonormal_frame(rng, direction)
    return CameraModel(
        plane_origin=Point3D.from_array(focal_point - focal_length * direction),
        axis_x=axis_x,
        axis_y=axis_y,
        focal_point=Point3D.from_array(focal_point),
    )


def random_rigid_scene(
    p: int, seed: int | None = None, settings: OracleSettings | None = None
) -> tuple[RigidScene, CameraModel, CameraModel]:
    """
    Draw a certified scene of ``p`` points (the seven basis labels, then ``Z1``, ``Z2``, ...) seen by
    two random cameras looking at the origin.

    Points are uniform in a cube of side ``settings.box`` centred at the origin; cameras sit at a
    distance drawn from ``settings.camera_distance`` with a focal length drawn from
    ``settings.focal_length``. Draws are repeated until :obj:`~certificate` passes.

    Args:
        p: Number of points, at least 7.
        seed: Seed of the generator. Defaults to ``settings.seed``.
        settings: Sampling ranges and tolerances.

    Raises:
        :obj:`~rigidview.errors.GenerationFailed`: If no certified scene was drawn within
            ``settings.max_attempts`` attempts.
    """
    if p < len(BASIS_LABELS):
        raise ValueError(f"a scene needs at least {len(BASIS_LABELS)} points")
    settings = settings or OracleSettings()
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    labels = [*BASIS_LABELS, *(extra_label(i) for i in range(p - len(BASIS_LABELS)))]

    for attempt in range(1, settings.max_attempts + 1):
        coords = rng.uniform(-settings.box / 2, settings.box / 2, size=(p, 3))
        cam1 = _random_camera(rng, settings)
        cam2 = _random_camera(rng, settings)
        scene = RigidScene({label: Point3D.from_array(c) for label, c in zip(labels, coords)})
        cert = certificate(scene, cam1, cam2, tolerance=settings.general_position_tolerance)
        if cert.certified:
            logger.debug("certified scene after %d attempt(s)", attempt)
            return RigidScene(scene.points, cert), cam1, cam2

    raise errors.GenerationFailed(f"no certified scene in {settings.max_attempts} attempts")


def slide_cameras(
    cam1: CameraModel, cam2: CameraModel, shift: float, move: t.Literal["first", "second"] = "first"
) -> tuple[CameraModel, CameraModel]:
    """
    Move one focal point along the baseline ``F1 F2``: ``F1* = F1 + shift * (F2 - F1)`` for ``"first"``,
    ``F2* = F2 + shift * (F1 - F2)`` for ``"second"``. The image planes stay where they are.
    """
    f1, f2 = cam1.focal_point.array, cam2.focal_point.array
    if move == "first":
        return cam1.with_focal_point(Point3D.from_array(f1 + shift * (f2 - f1))), cam2
    if move == "second":
        return cam1, cam2.with_focal_point(Point3D.from_array(f2 + shift * (f1 - f2)))
    raise ValueError(f"move must be 'first' or 'second', not {move!r}")


def _meet(o1: Point3D, d1: npt.NDArray[np.float64], o2: Point3D, d2: npt.NDArray[np.float64]) -> Point3D:
    # midpoint of the closest approach of two lines; the lines handed in here are coplanar
    gram = np.array([[d1 @ d1, -(d1 @ d2)], [d1 @ d2, -(d2 @ d2)]])
    scale = float(np.linalg.norm(d1) * np.linalg.norm(d2))
    if abs(float(np.linalg.det(gram))) <= _RAY_TOLERANCE * scale**2:
        raise errors.RaysParallel("the back-projected rays are parallel")
    rhs = np.array([(o2.array - o1.array) @ d1, (o2.array - o1.array) @ d2])
    s, r = np.linalg.solve(gram, rhs)
    return Point3D.from_array(0.5 * (o1.array + s * d1 + o2.array + r * d2))


def ambiguity_family(
    scene: RigidScene,
    cam1: CameraModel,
    cam2: CameraModel,
    shift: float,
    move: t.Literal["first", "second"] = "first",
) -> RigidScene:
    """
    A different rigid body with exactly the same two images.

    One focal point slides along the baseline (see :obj:`~slide_cameras`); each new point is the
    intersection of the back-projected rays of its two images, one of them from the moved focal
    point. The two rays lie in the plane through the baseline and the original point, so they meet.

    Raises:
        :obj:`ValueError`: If ``shift == 1``, which would merge the focal points.
        :obj:`~rigidview.errors.DegenerateConfiguration`: If the moved focal point lies on its image
            plane.
        :obj:`~rigidview.errors.RaysParallel`: If the rays of some point do not meet.
    """
    if shift == 1.0:
        raise ValueError("shift = 1 merges the two focal points")

    frame1 = project(scene, cam1)
    frame2 = project(scene, cam2)
    moved1, moved2 = slide_cameras(cam1, cam2, shift, move)

    points: dict[str, Point3D] = {}
    for label in scene.points:
        on1 = cam1.lift(frame1[label])
        on2 = cam2.lift(frame2[label])
        points[label] = _meet(
            moved1.focal_point,
            on1.array - moved1.focal_point.array,
            moved2.focal_point,
            on2.array - moved2.focal_point.array,
        )
    return RigidScene(points)


def shape_signature(scene: RigidScene | Sequence[Point3D]) -> ShapeSignature:
    points = list(scene.points.values()) if isinstance(scene, RigidScene) else list(scene)
    if len(points) < 3:
        raise ValueError("a shape signature needs at least three points")
    distances = sorted(float(np.linalg.norm(a.array - b.array)) for a, b in itertools.combinations(points, 2))
    largest = distances[-1]
    if largest == 0.0:
        raise errors.CoincidentPoints("all points coincide")
    return ShapeSignature(tuple(d / largest for d in distances))


def perturb(frame: LabeledFrame, sigma: float, rng: np.random.Generator) -> LabeledFrame:
    """Add isotropic Gaussian noise of standard deviation ``sigma`` to every image point."""
    noise = rng.normal(scale=sigma, size=(len(frame.points), 2))
    return LabeledFrame(
        frame.frame_id,
        {label: Point2D(p.x + float(dx), p.y + float(dy)) for (label, p), (dx, dy) in zip(frame.points.items(), noise)},
    )


class ScenePointRecord(msgspec.Struct):
    label: str
    x: float
    y: float
    z: float


class SceneDocument(msgspec.Struct, kw_only=True):
    """On-disk layout: ``{"points": [{"label", "x", "y", "z"}, ...], "cameras": [camera, ...]}``."""

    points: list[ScenePointRecord]
    cameras: list[CameraModel] = msgspec.field(default_factory=list)


def dump_scene(scene: RigidScene, cameras: Sequence[CameraModel] = ()) -> bytes:
    document = SceneDocument(
        points=[ScenePointRecord(label, p.x, p.y, p.z) for label, p in scene.points.items()],
        cameras=list(cameras),
    )
    return msgspec.json.format(msgspec.json.encode(document), indent=2) + b"\n"


def write_scene(scene: RigidScene, path: str | pathlib.Path, cameras: Sequence[CameraModel] = ()) -> None:
    pathlib.Path(path).write_bytes(dump_scene(scene, cameras))


def loads_scene(raw: str | bytes, fmt: str = "json", /) -> tuple[RigidScene, tuple[CameraModel, ...]]:
    content = raw.encode() if isinstance(raw, str) else raw
    mapping = parsers.resolve_parser(fmt).read(content.strip())
    try:
        document = msgspec.convert(mapping, SceneDocument, strict=False)
    except (msgspec.ValidationError, errors.DegenerateConfiguration) as e:
        raise errors.FrameFormatError(f"invalid scene document: {e}") from e

    points: dict[str, Point3D] = {}
    for record in document.points:
        if record.label in points:
            raise errors.FrameFormatError(f"duplicate label {record.label!r} in scene")
        points[record.label] = Point3D(record.x, record.y, record.z)
    return RigidScene(points), tuple(document.cameras)


def load_scene(path: str | pathlib.Path, /) -> tuple[RigidScene, tuple[CameraModel, ...]]:
    """
    Read a scene file written by :obj:`~dump_scene` (or an equivalent TOML/YAML document).

    Raises:
        :obj:`NotImplementedError`: If the file extension has no registered parser.
        :obj:`~rigidview.errors.FrameFormatError`: If the document is not a valid scene.
    """
    path = pathlib.Path(path)
    with open(path, "rb") as file:
        return loads_scene(file.read(), path.suffix[1:])
