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

__all__ = ["env_file_name", "temp_set_env"]

import contextlib
import os
import typing as t

if t.TYPE_CHECKING:
    import pathlib
    from collections.abc import Generator


def env_file_name(path: pathlib.Path, env: str) -> str:
    """``settings.toml`` with env ``prod`` becomes ``settings.prod.toml``."""
    dot = path.name.find(".", 1)
    base = path.name if dot == -1 else path.name[:dot]
    return f"{base}.{env}{''.join(path.suffixes)}"


@contextlib.contextmanager
def temp_set_env(key: str, value: str | None) -> Generator[None, t.Any, t.Any]:
    """Expose ``value`` as the environment variable ``key`` for the duration of the block."""
    previous = os.environ.get(key)
    if value is not None:
        os.environ[key] = value

    try:
        yield
    finally:
        if previous is None:
            os.environ.pop(key, None)
        else:
            os.environ[key] = previous
