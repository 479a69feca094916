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
"""Labeled image frames and their file representation."""

from __future__ import annotations

__all__ = [
    "BASIS_LABELS",
    "FrameDocument",
    "FramePointRecord",
    "LabeledFrame",
    "dump_frame",
    "extra_label",
    "load_frame",
    "loads_frame",
    "write_frame",
]

import math
import pathlib
import typing as t

import msgspec

from rigidview import errors
from rigidview import parsers
from rigidview.projective import AffineMap2D
from rigidview.projective import Point2D

if t.TYPE_CHECKING:
    from collections.abc import Iterable
    from collections.abc import Mapping

BASIS_LABELS: t.Final[tuple[str, ...]] = ("R", "P", "Q", "A", "C", "E", "G")
"""Labels of the seven correspondences that fix the two-frame geometry."""


def extra_label(index: int) -> str:
    """Label of the ``index``-th (zero based) point beyond the seven basis points."""
    return f"Z{index + 1}"


class LabeledFrame(msgspec.Struct, frozen=True):
    """A map from point labels to image positions for one frame."""

    frame_id: str
    points: dict[str, Point2D]

    @classmethod
    def from_pairs(cls, frame_id: str, pairs: Iterable[tuple[str, Point2D]]) -> LabeledFrame:
        points: dict[str, Point2D] = {}
        for label, point in pairs:
            if label in points:
                raise errors.FrameFormatError(f"duplicate label {label!r} in frame {frame_id!r}")
            points[label] = point
        return cls(frame_id, points)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.points)

    def __getitem__(self, label: str) -> Point2D:
        try:
            return self.points[label]
        except KeyError:
            raise errors.MissingLabel(label, self.frame_id) from None

    def __contains__(self, label: object) -> bool:
        return label in self.points

    def require(self, labels: Iterable[str]) -> None:
        for label in labels:
            if label not in self.points:
                raise errors.MissingLabel(label, self.frame_id)

    def transformed(self, mapping: AffineMap2D) -> LabeledFrame:
        return LabeledFrame(self.frame_id, {k: mapping.apply(p) for k, p in self.points.items()})

    def subset(self, labels: Iterable[str]) -> LabeledFrame:
        return LabeledFrame(self.frame_id, {k: self[k] for k in labels})

    def with_point(self, label: str, point: Point2D) -> LabeledFrame:
        return LabeledFrame(self.frame_id, {**self.points, label: point})


class FramePointRecord(msgspec.Struct):
    label: str
    x: float
    y: float


class FrameDocument(msgspec.Struct):
    """On-disk layout: ``{"frame_id": ..., "points": [{"label": ..., "x": ..., "y": ...}, ...]}``."""

    points: list[FramePointRecord]
    frame_id: str = ""


def _to_frame(document: Mapping[str, t.Any], default_id: str) -> LabeledFrame:
    try:
        decoded = msgspec.convert(document, FrameDocument, strict=False)
    except msgspec.ValidationError as e:
        raise errors.FrameFormatError(f"invalid frame document: {e}") from e

    pairs: list[tuple[str, Point2D]] = []
    for record in decoded.points:
        if not (math.isfinite(record.x) and math.isfinite(record.y)):
            raise errors.FrameFormatError(f"point {record.label!r} has non-finite coordinates")
        pairs.append((record.label, Point2D(record.x, record.y)))
    return LabeledFrame.from_pairs(decoded.frame_id or default_id, pairs)


def loads_frame(raw: str | bytes, fmt: str, /, *, frame_id: str = "") -> LabeledFrame:
    """
    Like :meth:`~load_frame`, but reads the frame from the given string or bytes object. You must
    pass a format so that the matching parser can be looked up in :obj:`~rigidview.parsers.parser_registry`.
    """
    content = raw.encode() if isinstance(raw, str) else raw
    return _to_frame(parsers.resolve_parser(fmt).read(content.strip()), frame_id)


def load_frame(path: str | pathlib.Path, /) -> LabeledFrame:
    """
    Reads a labeled frame from a file, choosing the parser from the file extension.

    Args:
        path: Path to a ``.json``, ``.csv``, ``.toml`` or ``.yaml`` frame file. When the document does
            not name its frame (csv files never do), the file stem is used as the frame id.

    Returns:
        The parsed frame.

    Raises:
        :obj:`NotImplementedError`: If the file extension has no registered parser.
        :obj:`~rigidview.errors.FrameFormatError`: If the document is not a valid frame, contains
            duplicate labels or non-finite coordinates.
    """
    path = pathlib.Path(path)
    with open(path, "rb") as file:
        return loads_frame(file.read(), path.suffix[1:], frame_id=path.stem)


def dump_frame(frame: LabeledFrame, fmt: str = "json") -> bytes:
    if fmt == "csv":
        lines = ["label,x,y", *(f"{k},{p.x!r},{p.y!r}" for k, p in frame.points.items())]
        return ("\n".join(lines) + "\n").encode()

    document = FrameDocument(
        frame_id=frame.frame_id,
        points=[FramePointRecord(k, p.x, p.y) for k, p in frame.points.items()],
    )
    if fmt == "json":
        return msgspec.json.format(msgspec.json.encode(document), indent=2) + b"\n"
    raise NotImplementedError(f"frames cannot be written as {fmt!r}")


def write_frame(frame: LabeledFrame, path: str | pathlib.Path, /) -> None:
    path = pathlib.Path(path)
    path.write_bytes(dump_frame(frame, path.suffix[1:]))
