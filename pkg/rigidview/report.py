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
"""The result envelope every command emits, and its json, csv and text renderings."""

from __future__ import annotations

__all__ = ["ReportDocument", "line_entry", "point_entry", "render"]

import csv
import io
import math
import typing as t

import msgspec

if t.TYPE_CHECKING:
    from rigidview.projective import Line2D
    from rigidview.projective import Point2D

CoordinateFrame = t.Literal["original", "canonical"]


class ReportDocument(msgspec.Struct, kw_only=True):
    """``{"command": ..., "inputs": ..., "result": ..., "diagnostics": ...}``."""

    command: str
    inputs: dict[str, t.Any] = msgspec.field(default_factory=dict)
    result: t.Any = None
    diagnostics: dict[str, t.Any] = msgspec.field(default_factory=dict)


def point_entry(p: Point2D, frame: CoordinateFrame = "original") -> dict[str, t.Any]:
    return {"x": p.x, "y": p.y, "frame": frame}


def line_entry(line: Line2D, frame: CoordinateFrame = "original") -> dict[str, t.Any]:
    return {"a": line.a, "b": line.b, "c": line.c, "frame": frame}


def _finite(value: t.Any) -> t.Any:
    # json has no infinities; they are reported as null
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in t.cast("dict[str, t.Any]", value).items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in t.cast("list[t.Any]", value)]
    return value


def _flatten(value: t.Any, prefix: str = "") -> list[tuple[str, t.Any]]:
    if isinstance(value, dict):
        rows: list[tuple[str, t.Any]] = []
        for k, v in t.cast("dict[str, t.Any]", value).items():
            rows.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
        return rows
    if isinstance(value, (list, tuple)):
        rows = []
        for i, v in enumerate(t.cast("list[t.Any]", value)):
            rows.extend(_flatten(v, f"{prefix}.{i}" if prefix else str(i)))
        return rows
    return [(prefix, value)]


def _scalar(value: t.Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render(report: ReportDocument, fmt: str = "json") -> bytes:
    """
    Serialize a report.

    ``json`` writes the nested document; ``csv`` and ``text`` write one ``key,value`` row (or
    ``key = value`` line) per leaf, keys joined with dots.

    Raises:
        :obj:`NotImplementedError`: For any other format.
    """
    document = _finite(msgspec.to_builtins(report))
    if fmt == "json":
        return msgspec.json.format(msgspec.json.encode(document), indent=2) + b"\n"

    rows = _flatten(document)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows((k, _scalar(v)) for k, v in rows)
        return buffer.getvalue().encode()
    if fmt == "text":
        return "".join(f"{k} = {_scalar(v)}\n" for k, v in rows).encode()
    raise NotImplementedError(f"reports cannot be rendered as {fmt!r}")
