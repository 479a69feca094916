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

__all__ = ["YamlParser"]

import functools
import typing as t

from rigidview.parsers import abc

if t.TYPE_CHECKING:
    from collections.abc import Callable


@functools.cache
def _safe_loader() -> Callable[[bytes], t.Any]:
    try:
        import ruamel.yaml as yaml
    except ImportError as e:
        raise ImportError("yaml frames and settings need the 'yaml' extra: pip install rigidview[yaml]") from e

    loader = yaml.YAML(typ="safe", pure=True)
    return loader.load  # type: ignore[reportUnknownMemberType,reportUnknownVariableType]


class YamlParser(abc.Parser):
    """YAML documents, read with the pure-python safe loader of the optional ``yaml`` extra."""

    __slots__ = ()

    @property
    def reader(self) -> Callable[[bytes], t.Any]:
        return _safe_loader()
