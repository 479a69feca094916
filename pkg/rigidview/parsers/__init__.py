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
"""Format readers turning raw frame, scene and settings documents into plain mappings."""

from __future__ import annotations

__all__ = ["CsvParser", "JsonParser", "Parser", "TomlParser", "YamlParser", "parser_registry", "resolve_parser"]

from rigidview.parsers.abc import Parser
from rigidview.parsers.csv import CsvParser
from rigidview.parsers.json import JsonParser
from rigidview.parsers.toml import TomlParser
from rigidview.parsers.yaml import YamlParser

parser_registry: dict[str, type[Parser]] = {
    "json": JsonParser,
    "toml": TomlParser,
    "yaml": YamlParser,
    "yml": YamlParser,
    "csv": CsvParser,
}
"""Dictionary mapping file extension to parser class used when reading data of that format."""


def resolve_parser(fmt: str) -> Parser:
    parser = parser_registry.get(fmt.lower().lstrip("."))
    if parser is None:
        raise NotImplementedError(f"no parser registered for format {fmt!r}")
    return parser()
