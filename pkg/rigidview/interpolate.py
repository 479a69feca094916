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
Environment variable placeholders inside settings documents.

A string value may reference ``${NAME}``, optionally with a default (``${NAME:0}``), a
stripping flag (``${NAME~}``), a None default (``${NAME?}``) or, for a whole value, a list split
(``${NAME[,]}``). ``$${NAME}`` escapes the placeholder.
"""

from __future__ import annotations

__all__ = ["InterpolationVisitor", "resolve_placeholders"]

import os
import re
import typing as t

from rigidview import errors

PLACEHOLDER: t.Final[re.Pattern[str]] = re.compile(
    r"(?P<escaped>\$)?(?P<raw>\$\{(?P<name>[a-zA-Z_]\w*)(?:\[(?P<delim>[^]}]+)])?(?P<strip>~)?(?P<default>:[^}]*|\?)?})"
)


def _lookup(match: re.Match[str]) -> str:
    name = match.group("name")
    default = match.group("default")
    if name in os.environ:
        value = os.environ[name]
    elif default is None:
        raise errors.SettingsError(f"environment variable {name!r} is not set and has no default")
    elif default == "?":
        raise errors.SettingsError(f"placeholder for {name!r} cannot default to None inside a longer string")
    else:
        value = default[1:]
    return value.strip() if match.group("strip") else value


def _substitute(match: re.Match[str]) -> str:
    if match.group("escaped"):
        return match.group("raw")
    if match.group("delim") is not None:
        raise errors.SettingsError("list placeholders must make up the whole value")
    return _lookup(match)


def resolve_placeholders(value: str) -> t.Any:
    """
    Replace the placeholders of one string value.

    Returns:
        A string, or ``None`` / a list of strings when the whole value is a ``${NAME?}`` or
        ``${NAME[delim]}`` placeholder.

    Raises:
        :obj:`~rigidview.errors.SettingsError`: If a referenced variable is unset and has no default,
            or a placeholder form is used where it is not allowed.
    """
    whole = PLACEHOLDER.fullmatch(value)
    if whole is not None and not whole.group("escaped"):
        name = whole.group("name")
        if whole.group("default") == "?" and name not in os.environ:
            return None
        if (delim := whole.group("delim")) is not None:
            raw = os.environ.get(name, (whole.group("default") or ":")[1:])
            parts = raw.split(delim)
            return [p.strip() for p in parts] if whole.group("strip") else parts

    return PLACEHOLDER.sub(_substitute, value)


class InterpolationVisitor:
    """Walks a decoded document and returns a copy with every string value resolved."""

    __slots__ = ()

    def visit(self, item: t.Any) -> t.Any:
        if isinstance(item, dict):
            return {k: self.visit(v) for k, v in t.cast("dict[str, t.Any]", item).items()}
        if isinstance(item, list):
            return [self.visit(v) for v in t.cast("list[t.Any]", item)]
        if isinstance(item, str):
            return resolve_placeholders(item)
        return item
