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
from __future__ import annotations

__all__ = ["CsvParser"]

import csv
import io
import typing as t

from rigidview.parsers import abc

if t.TYPE_CHECKING:
    from collections.abc import Callable


def _read_point_table(raw: bytes) -> dict[str, t.Any]:
    rows = csv.DictReader(io.StringIO(raw.decode("utf-8-sig")))
    if rows.fieldnames is None or not {"label", "x", "y"} <= {f.strip() for f in rows.fieldnames}:
        raise ValueError("csv frames require a 'label,x,y' header")

    points: list[dict[str, str]] = []
    for row in rows:
        clean = {k.strip(): (v or "").strip() for k, v in row.items() if k is not None}
        points.append({"label": clean["label"], "x": clean["x"], "y": clean["y"]})
    return {"points": points}


class CsvParser(abc.Parser):
    """Point tables with a ``label,x,y`` header. Only frames can be stored as csv."""

    __slots__ = ()

    @property
    def reader(self) -> Callable[[bytes], t.Any]:
        return _read_point_table
