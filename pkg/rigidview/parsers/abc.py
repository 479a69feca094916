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

__all__ = ["Parser"]

import abc
import csv
import typing as t

import msgspec

from rigidview import errors

if t.TYPE_CHECKING:
    from collections.abc import Callable


class Parser(abc.ABC):
    """Reads one document format into a mapping."""

    __slots__ = ()

    @property
    @abc.abstractmethod
    def reader(self) -> Callable[[bytes], t.Any]: ...

    def read(self, raw: bytes) -> dict[str, t.Any]:
        try:
            parsed = self.reader(raw)
        except (msgspec.DecodeError, ValueError, csv.Error) as e:
            raise errors.FrameFormatError(f"could not parse document: {e}") from e

        if not isinstance(parsed, dict):
            raise errors.FrameFormatError("document must contain a mapping at the top level")
        return t.cast("dict[str, t.Any]", parsed)
