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
Degrees-of-freedom against information balances for structure-and-motion recovery.

Every regime counts ``-1 + 3 * p`` for the body (``p`` traced points, scale unrecoverable), a
constant for unknown camera geometry and a per-frame term for the motion and camera changes
between consecutive frames. ``k`` frames of ``p`` points carry ``2 * k * p`` pieces of information.
"""

from __future__ import annotations

__all__ = [
    "REFERENCE_GROWTH",
    "REFERENCE_SCENARIOS",
    "DofScenario",
    "DofVerdict",
    "ReferenceBalance",
    "ReferenceGrowth",
    "Regime",
    "balance_table",
    "degrees_of_freedom",
    "dof_growth",
    "min_frames",
    "min_points",
    "verdict",
]

import enum
import typing as t

import msgspec

if t.TYPE_CHECKING:
    from collections.abc import Iterable


class Regime(enum.Enum):
    """What is known about the cameras."""

    ORTHOGONAL = "orthogonal"
    """Orthogonal projection."""
    PERSPECTIVE_UNKNOWN_VARYING = "perspective-unknown-varying"
    """Perspective projection; focal point and image plane unknown and free to change every frame."""
    PERSPECTIVE_KNOWN = "perspective-known"
    """Perspective projection with fully known camera geometry."""
    PERSPECTIVE_UNKNOWN_FIXED = "perspective-unknown-fixed"
    """Perspective projection; camera geometry unknown but constant over all frames."""
    PERSPECTIVE_AUTOFOCUS = "perspective-autofocus"
    """Perspective projection; geometry known up to the focal distance, which changes per frame."""

    @property
    def camera_dof(self) -> int:
        return _CONSTANTS[self][0]

    @property
    def per_frame_dof(self) -> int:
        return _CONSTANTS[self][1]


_CONSTANTS: t.Final[dict[Regime, tuple[int, int]]] = {
    Regime.ORTHOGONAL: (0, 5),
    Regime.PERSPECTIVE_UNKNOWN_VARYING: (3, 9),
    Regime.PERSPECTIVE_KNOWN: (0, 6),
    Regime.PERSPECTIVE_UNKNOWN_FIXED: (3, 6),
    Regime.PERSPECTIVE_AUTOFOCUS: (1, 7),
}

_REDUNDANT_TWO_FRAME: t.Final[frozenset[Regime]] = frozenset(
    {Regime.PERSPECTIVE_UNKNOWN_VARYING, Regime.PERSPECTIVE_UNKNOWN_FIXED}
)


class DofScenario(msgspec.Struct, frozen=True):
    regime: Regime
    p: int
    k: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.k < 1:
            raise ValueError(f"p and k must be positive, got p={self.p}, k={self.k}")


class DofVerdict(msgspec.Struct, frozen=True, kw_only=True):
    """
    Attributes:
        redundancy_caveat: The counts balance, but two frames of an unknown camera cannot use
            the information of points beyond the seventh, so the balance does not imply recovery.
    """

    scenario: DofScenario
    dof: int
    info: int
    balanced: bool
    margin: int
    redundancy_caveat: bool = False


def degrees_of_freedom(s: DofScenario) -> int:
    return -1 + 3 * s.p + s.regime.camera_dof + s.regime.per_frame_dof * (s.k - 1)


def verdict(s: DofScenario) -> DofVerdict:
    dof = degrees_of_freedom(s)
    info = 2 * s.k * s.p
    return DofVerdict(
        scenario=s,
        dof=dof,
        info=info,
        balanced=info >= dof,
        margin=info - dof,
        redundancy_caveat=s.k == 2 and s.regime in _REDUNDANT_TWO_FRAME,
    )


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def min_points(regime: Regime, k: int) -> int | None:
    """
    The smallest ``p`` whose verdict is balanced for ``k`` frames, or ``None`` when no ``p`` is.

    The margin is ``(2k - 3) * p + 1 - camera - per_frame * (k - 1)``; for a single frame it falls
    with ``p`` so only ``p == 1`` can balance.
    """
    if k < 1:
        raise ValueError("k must be positive")
    slope = 2 * k - 3
    deficit = regime.camera_dof - 1 + regime.per_frame_dof * (k - 1)
    if slope <= 0:
        return 1 if verdict(DofScenario(regime, 1, k)).balanced else None
    return max(1, _ceil_div(deficit, slope))


def min_frames(regime: Regime, p: int) -> int | None:
    """
    The smallest ``k`` whose verdict is balanced for ``p`` points, or ``None`` (never) when the
    degrees of freedom grow at least as fast with ``k`` as the information does and one frame is not
    enough.
    """
    if p < 1:
        raise ValueError("p must be positive")
    slope = 2 * p - regime.per_frame_dof
    if verdict(DofScenario(regime, p, 1)).balanced:
        return 1
    if slope <= 0:
        return None
    deficit = -1 + 3 * p + regime.camera_dof - regime.per_frame_dof
    return max(1, _ceil_div(deficit, slope))


class ReferenceBalance(msgspec.Struct, frozen=True):
    scenario: DofScenario
    quoted: str
    """The balance as it is usually quoted, e.g. ``"41 > 40"``."""


REFERENCE_SCENARIOS: t.Final[tuple[ReferenceBalance, ...]] = (
    ReferenceBalance(DofScenario(Regime.PERSPECTIVE_UNKNOWN_VARYING, 10, 2), "41 > 40"),
    ReferenceBalance(DofScenario(Regime.PERSPECTIVE_UNKNOWN_VARYING, 11, 2), "44 = 44"),
    ReferenceBalance(DofScenario(Regime.PERSPECTIVE_UNKNOWN_VARYING, 7, 2), "32 > 28"),
    ReferenceBalance(DofScenario(Regime.PERSPECTIVE_UNKNOWN_VARYING, 7, 3), "41 < 42"),
    ReferenceBalance(DofScenario(Regime.PERSPECTIVE_UNKNOWN_VARYING, 6, 3), "38 > 36"),
    ReferenceBalance(DofScenario(Regime.PERSPECTIVE_UNKNOWN_VARYING, 6, 4), "47 < 48"),
    ReferenceBalance(DofScenario(Regime.PERSPECTIVE_UNKNOWN_VARYING, 5, 8), "80 = 80"),
    ReferenceBalance(DofScenario(Regime.PERSPECTIVE_KNOWN, 5, 2), "20 = 20"),
    ReferenceBalance(DofScenario(Regime.PERSPECTIVE_UNKNOWN_FIXED, 8, 2), "32 = 32 (p >= 8)"),
    ReferenceBalance(DofScenario(Regime.PERSPECTIVE_AUTOFOCUS, 7, 2), "28 = 28 (p >= 7)"),
)
"""Balances quoted for the perspective regimes, in the order they are usually presented."""


def dof_growth(regime: Regime, p: int, *, include_camera: bool = True) -> tuple[int, int]:
    """
    The degrees of freedom for ``p`` points as a linear function of the frame count.

    Args:
        regime: The camera regime.
        p: The number of traced points.
        include_camera: Whether to count the camera's own parameters. The figure is often quoted
            without them.

    Returns:
        ``(slope, intercept)`` such that the count for ``k`` frames is ``slope * k + intercept``.
    """
    if p < 1:
        raise ValueError("p must be positive")
    camera = regime.camera_dof if include_camera else 0
    return regime.per_frame_dof, -1 + 3 * p + camera - regime.per_frame_dof


class ReferenceGrowth(msgspec.Struct, frozen=True, kw_only=True):
    regime: Regime
    p: int
    include_camera: bool
    quoted: str
    """The bound as it is usually quoted, e.g. ``"9k+2 > 8k"``."""

    @property
    def growth(self) -> tuple[int, int]:
        return dof_growth(self.regime, self.p, include_camera=self.include_camera)


REFERENCE_GROWTH: t.Final[tuple[ReferenceGrowth, ...]] = (
    ReferenceGrowth(regime=Regime.PERSPECTIVE_UNKNOWN_VARYING, p=4, include_camera=False, quoted="9k+2 > 8k"),
    ReferenceGrowth(regime=Regime.PERSPECTIVE_UNKNOWN_VARYING, p=4, include_camera=True, quoted="9k+5 > 8k"),
)
"""Four traced points never balance, however many frames there are."""


def balance_table(scenarios: Iterable[DofScenario] | None = None) -> tuple[DofVerdict, ...]:
    if scenarios is None:
        scenarios = (ref.scenario for ref in REFERENCE_SCENARIOS)
    return tuple(verdict(s) for s in scenarios)
