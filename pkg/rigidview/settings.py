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
Settings for the solver, matcher and oracle, loaded from layered files with environment
variable interpolation.
"""

from __future__ import annotations

__all__ = ["MatcherSettings", "OracleSettings", "Settings", "SolverSettings", "load_settings", "loads_settings"]

import copy
import functools
import os
import pathlib
import typing as t
from collections.abc import Sequence

import msgspec

from rigidview import errors
from rigidview import helpers
from rigidview import interpolate
from rigidview import parsers

ENV_VARIABLE: t.Final[str] = "RIGIDVIEW_ENV"
"""Names an environment overlay (``settings.<env>.toml``) to merge over each settings file."""


class SolverSettings(msgspec.Struct, frozen=True, kw_only=True):
    scan_start: float = -50.0
    scan_stop: float = 50.0
    scan_step: float = 1e-3
    acceptance_tolerance: float = 1e-6
    """Concurrency residual gate, relative to the frame-2 scale."""
    degeneracy_tolerance: float = 1e-9
    """Distance of ``u * v`` from 1 below which auxiliary point ``B''`` lies at infinity."""
    collapse_tolerance: float = 1e-6
    """Distance of ``u`` or ``v`` from 1 below which the auxiliary points collapse onto ``P''`` or ``Q''``."""
    refine_tolerance: float = 1e-10
    """Relative residual of both concurrency equations up to which a refined solution counts as real."""
    parallax_tolerance: float = 1e-9
    """Relative trace mismatch under which frame 2 counts as a projective image of frame 1."""
    vanishing_tolerance: float = 1e-10
    """Relative coefficient size below which the concurrency equations vanish identically."""


class MatcherSettings(msgspec.Struct, frozen=True, kw_only=True):
    budget: int = 40320
    threads: int = 1
    scan_start: float = -50.0
    scan_stop: float = 50.0
    scan_step: float = 1e-2
    tolerance: float = 1e-6
    """Line residual up to which a point counts as lying on its predicted line."""


class OracleSettings(msgspec.Struct, frozen=True, kw_only=True):
    seed: int = 0
    box: float = 1.0
    camera_distance: tuple[float, float] = (2.0, 5.0)
    focal_length: tuple[float, float] = (0.5, 2.0)
    general_position_tolerance: float = 1e-6
    max_attempts: int = 1000


class Settings(msgspec.Struct, frozen=True, kw_only=True):
    solver: SolverSettings = msgspec.field(default_factory=SolverSettings)
    matcher: MatcherSettings = msgspec.field(default_factory=MatcherSettings)
    oracle: OracleSettings = msgspec.field(default_factory=OracleSettings)


DEFAULTS: t.Final[dict[str, t.Any]] = {"oracle": {"seed": "${RIGIDVIEW_SEED:0}"}}
"""Built-in layer applied beneath every settings file."""


def _merge_dicts(d1: dict[str, t.Any], d2: dict[str, t.Any]) -> dict[str, t.Any]:
    for key in d2:
        if key in d1 and isinstance(d1[key], dict) and isinstance(d2[key], dict):
            _merge_dicts(d1[key], d2[key])
            continue

        d1[key] = d2[key]

    return d1


def _decode(layers: Sequence[dict[str, t.Any]]) -> Settings:
    merged = functools.reduce(_merge_dicts, layers, copy.deepcopy(DEFAULTS))
    resolved = interpolate.InterpolationVisitor().visit(merged)
    try:
        return msgspec.convert(resolved, Settings, strict=False)
    except msgspec.ValidationError as e:
        raise errors.SettingsError(f"invalid settings: {e}") from e


def loads_settings(raw: str | bytes, fmt: str, /) -> Settings:
    """Like :meth:`~load_settings`, but reads a single settings document from a string or bytes object."""
    content = raw.encode() if isinstance(raw, str) else raw
    return _decode([parsers.resolve_parser(fmt).read(content.strip())])


def _read_layers(path: pathlib.Path, env: str | None) -> list[dict[str, t.Any]]:
    parser = parsers.resolve_parser(path.suffix)
    with open(path, "rb") as file:
        layers = [parser.read(file.read().strip())]

    if env is None:
        return layers

    overlay = path.parent / helpers.env_file_name(path, env)
    if overlay.is_file():
        with open(overlay, "rb") as file:
            layers.append(parser.read(file.read().strip()))
    return layers


def load_settings(
    paths: str | pathlib.Path | Sequence[str | pathlib.Path] | None = None, /, *, env: str | None = None
) -> Settings:
    """
    Loads settings, merging built-in defaults with the given files and performing environment
    variable substitutions.

    Args:
        paths: A settings file or several of them; later files override earlier ones. When omitted,
            only the defaults (and the environment) apply.
        env: Name of an overlay to merge over every file (``settings.prod.toml`` for
            ``env="prod"``). Read from ``RIGIDVIEW_ENV`` when not provided.

    Returns:
        The resolved settings. ``oracle.seed`` defaults to the ``RIGIDVIEW_SEED`` environment variable
        (or 0 when unset).

    Raises:
        :obj:`NotImplementedError`: If a file with an unrecognised format is specified.
        :obj:`~rigidview.errors.FrameFormatError`: If a file cannot be parsed.
        :obj:`~rigidview.errors.SettingsError`: If a placeholder cannot be resolved or a value is invalid.
    """
    if paths is None:
        paths = []
    elif isinstance(paths, (str, pathlib.Path)):
        paths = [paths]

    resolved_env = (env or os.getenv(ENV_VARIABLE, "")).strip()

    layers: list[dict[str, t.Any]] = []
    for path in paths:
        layers.extend(_read_layers(pathlib.Path(path), resolved_env or None))

    with helpers.temp_set_env(ENV_VARIABLE, resolved_env or None):
        return _decode(layers)
