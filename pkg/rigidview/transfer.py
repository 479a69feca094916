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
Double-quotient coordinates of a point relative to a coplanar quadruple, and transfer of points
between two perspective images of the same plane.

Given a basis ``A, B, C, D`` (no three collinear) the traces of a point ``Z`` are

* ``Z_B`` - the intersection of ``ZB`` with ``AC``,
* ``Z_C`` - the intersection of ``ZC`` with ``AB``,

and the coordinates of ``Z`` are the double quotients of those traces against the traces of ``D``
along ``AC`` and ``AB``. Both are preserved by any perspective projection of the plane.
"""

from __future__ import annotations

__all__ = ["DqCoordinates", "FrameQuotients", "PlanarBasis", "dq_coordinates", "frame1_quotients", "transfer_point"]

import itertools
import math
import typing as t

import msgspec

from rigidview import errors
from rigidview.projective import Point2D
from rigidview.projective import cross_ratio
from rigidview.projective import intersect_lines
from rigidview.projective import is_collinear
from rigidview.projective import line_through
from rigidview.projective import point_with_cross_ratio

if t.TYPE_CHECKING:
    from collections.abc import Sequence

    from rigidview.frames import LabeledFrame


class DqCoordinates(msgspec.Struct, frozen=True):
    """
    Double-quotient coordinates of a point.

    Attributes:
        q_c: Quotient along ``AB`` built from the ``C`` traces ``D_C`` and ``Z_C``.
        q_b: Quotient along ``AC`` built from the ``B`` traces ``D_B`` and ``Z_B``.
    """

    q_c: float
    q_b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.q_c) and math.isfinite(self.q_b)):
            raise errors.DegenerateConfiguration("double-quotient coordinates must be finite")


class PlanarBasis(msgspec.Struct, frozen=True):
    """Images of four coplanar scene points, no three of them collinear."""

    a: Point2D
    b: Point2D
    c: Point2D
    d: Point2D

    def __post_init__(self) -> None:
        for p, q, r in itertools.combinations((self.a, self.b, self.c, self.d), 3):
            if is_collinear(p, q, r):
                raise errors.CollinearBasis(f"basis points {p}, {q}, {r} are collinear")

    @classmethod
    def from_frame(cls, frame: LabeledFrame, labels: Sequence[str]) -> PlanarBasis:
        a, b, c, d = (frame[label] for label in labels)
        return cls(a, b, c, d)


def _traces(point: Point2D, basis: PlanarBasis) -> tuple[Point2D, Point2D]:
    trace_b = intersect_lines(line_through(point, basis.b), line_through(basis.a, basis.c))
    trace_c = intersect_lines(line_through(point, basis.c), line_through(basis.a, basis.b))
    return trace_b, trace_c


def dq_coordinates(z: Point2D, basis: PlanarBasis) -> DqCoordinates:
    """
    Double-quotient coordinates of ``z`` in the ``ABCD`` coordinate system.

    Raises:
        :obj:`~rigidview.errors.DegenerateConfiguration`: If a required trace does not exist (a line
            pair is parallel, ``z`` coincides with ``B`` or ``C``, or a trace lands on ``A``).
    """
    d_b, d_c = _traces(basis.d, basis)
    z_b, z_c = _traces(z, basis)
    return DqCoordinates(
        q_c=cross_ratio(basis.a, basis.b, d_c, z_c),
        q_b=cross_ratio(basis.a, basis.c, d_b, z_b),
    )


def transfer_point(coords: DqCoordinates, target_basis: PlanarBasis) -> Point2D:
    """
    Locate the point with the given coordinates relative to ``target_basis``; the inverse of
    :obj:`~dq_coordinates`.

    Raises:
        :obj:`~rigidview.errors.DegenerateConfiguration`: If a trace lies at infinity or the final
            lines are parallel.
    """
    d_b, d_c = _traces(target_basis.d, target_basis)
    z_b = point_with_cross_ratio(target_basis.a, target_basis.c, d_b, coords.q_b)
    z_c = point_with_cross_ratio(target_basis.a, target_basis.b, d_c, coords.q_c)
    return intersect_lines(line_through(target_basis.b, z_b), line_through(target_basis.c, z_c))


class FrameQuotients(msgspec.Struct, frozen=True):
    """The six axis quotients of the ``C``, ``E`` and ``G`` traces against the ``A`` traces in frame 1."""

    q_cp: float
    q_cq: float
    q_ep: float
    q_eq: float
    q_gp: float
    q_gq: float

    def pairs(self) -> tuple[tuple[float, float], tuple[float, float], tuple[float, float]]:
        """``(qXP, qXQ)`` for ``X`` in ``C, E, G``."""
        return (self.q_cp, self.q_cq), (self.q_ep, self.q_eq), (self.q_gp, self.q_gq)


def frame1_quotients(frame1: LabeledFrame) -> FrameQuotients:
    """
    Axis quotients of frame 1.

    For each label ``X`` the ``P`` trace ``X_P`` is the intersection of ``X'P'`` with ``R'Q'`` and the
    ``Q`` trace ``X_Q`` the intersection of ``X'Q'`` with ``R'P'``. Then
    ``qXP = DQ(R, Q, A_P, X_P)`` and ``qXQ = DQ(R, P, A_Q, X_Q)``.

    Raises:
        :obj:`~rigidview.errors.MissingLabel`: If one of ``R, P, Q, A, C, E, G`` is absent.
        :obj:`~rigidview.errors.DegenerateConfiguration`: If a trace does not exist.
    """
    frame1.require(("R", "P", "Q", "A", "C", "E", "G"))
    r, p, q = frame1["R"], frame1["P"], frame1["Q"]
    axis_rq = line_through(r, q)
    axis_rp = line_through(r, p)

    def traces(label: str) -> tuple[Point2D, Point2D]:
        x = frame1[label]
        return intersect_lines(line_through(x, p), axis_rq), intersect_lines(line_through(x, q), axis_rp)

    a_p, a_q = traces("A")
    values: dict[str, float] = {}
    for label in ("C", "E", "G"):
        x_p, x_q = traces(label)
        values[f"q_{label.lower()}p"] = cross_ratio(r, q, a_p, x_p)
        values[f"q_{label.lower()}q"] = cross_ratio(r, p, a_q, x_q)
    return FrameQuotients(**values)
