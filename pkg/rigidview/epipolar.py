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
"""Prediction of the frame-2 line on which the image of any further rigid-body point must lie."""

from __future__ import annotations

__all__ = ["PredictedLine", "line_residual", "min_line_residual", "predict_line"]

import logging
import math
import typing as t

import msgspec

from rigidview import errors
from rigidview.projective import Line2D
from rigidview.projective import Point2D
from rigidview.projective import line_through
from rigidview.projective import point_line_distance
from rigidview.transfer import PlanarBasis
from rigidview.transfer import dq_coordinates
from rigidview.transfer import transfer_point

if t.TYPE_CHECKING:
    from rigidview.focal import FocalSolution
    from rigidview.frames import LabeledFrame

logger = logging.getLogger(__name__)

_COINCIDENCE_TOLERANCE: t.Final[float] = 1e-9


class PredictedLine(msgspec.Struct, frozen=True):
    """
    The line ``z''`` through ``F1''`` and ``Z''_PQR``.

    Attributes:
        line: The predicted line.
        via: ``Z''_PQR``, the frame-2 image of the intersection of the ray ``F1 Z`` with plane ``PQR``.
        anchor: ``F1''``.
        basis: ``"A"`` when ``via`` was transferred with the quadruple ``P, Q, R, B``, ``"C"`` when the
            ``P, Q, R, D`` quadruple was used instead.
    """

    line: Line2D
    via: Point2D
    anchor: Point2D
    basis: t.Literal["A", "C"] = "A"


def _check_solution(sol: FocalSolution, frame2: LabeledFrame) -> None:
    values = (sol.f1pp.x, sol.f1pp.y, *(c for p in sol.aux for c in (p.x, p.y)))
    if not all(math.isfinite(v) for v in values):
        raise errors.InvalidSolution("focal solution holds non-finite points")

    origin = sol.canonical_map.apply(frame2["R"])
    unit_x = sol.canonical_map.apply(frame2["Q"])
    if max(abs(origin.x), abs(origin.y), abs(unit_x.x - 1.0), abs(unit_x.y)) > 1e-6:
        raise errors.InvalidSolution("focal solution was computed for a different frame 2")


def _transfer(z_prime: Point2D, frame1: LabeledFrame, frame2: LabeledFrame, label: str, aux: Point2D) -> Point2D:
    source = PlanarBasis(frame1["P"], frame1["Q"], frame1["R"], frame1[label])
    target = PlanarBasis(frame2["P"], frame2["Q"], frame2["R"], aux)
    return transfer_point(dq_coordinates(z_prime, source), target)


def predict_line(z_prime: Point2D, frame1: LabeledFrame, frame2: LabeledFrame, sol: FocalSolution) -> PredictedLine:
    """
    Construct the line of frame 2 on which the image of a point with frame-1 image ``z_prime`` must lie.

    ``B`` lies on the ray ``F1 A``, so ``P', Q', R', A'`` is the frame-1 image of the coplanar quadruple
    ``P, Q, R, B`` whose frame-2 image is ``P'', Q'', R'', B''``. Transferring ``z_prime`` between the two
    gives ``Z''_PQR``. When that transfer fails, or lands on ``F1''``, the quadruple ``P, Q, R, D``
    (imaged as ``C'`` and ``D''``) is used instead.

    Raises:
        :obj:`~rigidview.errors.InvalidSolution`: If ``sol`` is unusable or belongs to another frame 2.
        :obj:`~rigidview.errors.DegenerateConfiguration`: If neither quadruple yields a line.
        :obj:`~rigidview.errors.MissingLabel`: If a basis label is absent.
    """
    _check_solution(sol, frame2)

    failure: errors.DegenerateConfiguration | None = None
    quadruples: tuple[tuple[t.Literal["A", "C"], Point2D], ...] = (("A", sol.aux.b), ("C", sol.aux.d))
    for label, aux in quadruples:
        try:
            via = _transfer(z_prime, frame1, frame2, label, aux)
        except errors.DegenerateConfiguration as e:
            failure = e
            continue

        scale = max(1.0, abs(via.x), abs(via.y), abs(sol.f1pp.x), abs(sol.f1pp.y))
        if via.distance_to(sol.f1pp) <= _COINCIDENCE_TOLERANCE * scale:
            failure = errors.CoincidentPoints(f"Z''_PQR coincides with F1'' using basis {label}")
            continue

        if label != "A":
            logger.debug("predicted line for %s used the fallback quadruple", z_prime)
        return PredictedLine(line_through(sol.f1pp, via), via, sol.f1pp, label)

    assert failure is not None
    raise failure


def line_residual(z_double_prime: Point2D, pl: PredictedLine) -> float:
    """Distance of an observed frame-2 point from its predicted line."""
    return point_line_distance(z_double_prime, pl.line)


def min_line_residual(
    z_prime: Point2D,
    z_double_prime: Point2D,
    frame1: LabeledFrame,
    frame2: LabeledFrame,
    sol: FocalSolution,
) -> tuple[float, PredictedLine]:
    """
    The smallest line residual over every accepted alternative of ``sol``, with the line achieving it.

    Raises:
        :obj:`~rigidview.errors.DegenerateConfiguration`: If no alternative yields a predicted line.
    """
    best: tuple[float, PredictedLine] | None = None
    failure: errors.DegenerateConfiguration | None = None
    for alternative in sol.alternatives():
        try:
            pl = predict_line(z_prime, frame1, frame2, alternative)
        except errors.DegenerateConfiguration as e:
            failure = e
            continue
        residual = line_residual(z_double_prime, pl)
        if best is None or residual < best[0]:
            best = (residual, pl)

    if best is None:
        assert failure is not None
        raise failure
    return best

