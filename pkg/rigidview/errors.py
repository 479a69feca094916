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
"""Exceptions raised by rigidview."""

from __future__ import annotations

__all__ = [
    "BudgetExceeded",
    "CoincidentPoints",
    "CollinearBasis",
    "DegenerateConfiguration",
    "DegenerateQuadruple",
    "DegenerateTraces",
    "FrameFormatError",
    "GenerationFailed",
    "InvalidSolution",
    "LeadingCoefficientVanishes",
    "MissingLabel",
    "NoRootInInterval",
    "NoValidAssignment",
    "NoValidRoot",
    "NotCollinear",
    "ParallelLines",
    "PointAtFocus",
    "RayParallelToPlane",
    "RaysParallel",
    "RigidViewError",
    "SettingsError",
]

import typing as t


class RigidViewError(Exception):
    """Base class for every error raised by this library."""


class DegenerateConfiguration(RigidViewError):
    """A construction needed an intersection, line or point that does not exist for the given input."""


class CoincidentPoints(DegenerateConfiguration):
    """Two points that must be distinct coincide within tolerance."""


class ParallelLines(DegenerateConfiguration):
    """Two lines that must intersect are parallel within tolerance."""


class DegenerateQuadruple(DegenerateConfiguration):
    """A double quotient denominator vanishes because points of the quadruple coincide."""


class CollinearBasis(DegenerateConfiguration):
    """Three basis points that must span the plane are collinear."""


class DegenerateTraces(DegenerateConfiguration):
    """Axis trace parameters place the auxiliary point at infinity (``u * v == 1``)."""


class PointAtFocus(DegenerateConfiguration):
    """A scene point coincides with the focal point of a camera."""


class RayParallelToPlane(DegenerateConfiguration):
    """A projection ray never meets the image plane."""


class RaysParallel(DegenerateConfiguration):
    """Two back-projected rays are parallel and define no scene point."""


class NotCollinear(RigidViewError):
    """Points passed as collinear are not collinear within tolerance."""


class MissingLabel(RigidViewError, KeyError):
    """A frame lacks a label required by the operation."""

    def __init__(self, label: str, frame_id: str | None = None) -> None:
        self.label = label
        self.frame_id = frame_id
        where = f" in frame {frame_id!r}" if frame_id else ""
        super().__init__(f"label {label!r} missing{where}")

    def __str__(self) -> str:
        return str(self.args[0])


class FrameFormatError(RigidViewError, ValueError):
    """A frame or scene document could not be interpreted."""


class SettingsError(RigidViewError, ValueError):
    """A settings document holds an unresolvable placeholder or an invalid value."""


class LeadingCoefficientVanishes(RigidViewError):
    """The quadratic obtained by eliminating ``v`` has no ``v**2`` term at the requested ``u``."""


class NoRootInInterval(RigidViewError):
    """
    No sign change of the polynomial was found in the scanned interval.

    Args:
        min_abs_value: The smallest absolute polynomial value seen while scanning.
        at: The abscissa where that minimum occurred.
    """

    def __init__(self, message: str, *, min_abs_value: float, at: float) -> None:
        super().__init__(message)
        self.min_abs_value = min_abs_value
        self.at = at


class NoValidRoot(RigidViewError):
    """No root of the final polynomial passed the concurrency validation gate."""


class InvalidSolution(RigidViewError):
    """A focal solution handed to a downstream operation is unusable."""


class BudgetExceeded(RigidViewError):
    """
    The combinatorial size of a correspondence search is larger than the allowed budget.

    Args:
        required: Number of assignments the search would have to evaluate.
        budget: The configured budget.
    """

    def __init__(self, required: int, budget: int, diagnostics: dict[str, t.Any] | None = None) -> None:
        super().__init__(f"search needs {required} assignments but the budget is {budget}")
        self.required = required
        self.budget = budget
        self.diagnostics = diagnostics or {}


class NoValidAssignment(RigidViewError):
    """Every candidate basis selection failed to produce a focal solution."""


class GenerationFailed(RigidViewError):
    """A certified random scene could not be generated within the attempt limit."""
