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
Identity assignment between two unlabeled projections of a rigid body, and rigid-body membership
tests, by scoring every further point against the line its correspondence must lie on.
"""

from __future__ import annotations

__all__ = [
    "MatchOptions",
    "MatchProblem",
    "MatchResult",
    "MembershipVerdict",
    "badness",
    "match_identities",
    "rigid_membership",
]

import concurrent.futures
import itertools
import logging
import math
import typing as t

import msgspec
import numpy as np
from scipy import optimize

from rigidview import errors
from rigidview.epipolar import line_residual
from rigidview.epipolar import min_line_residual
from rigidview.epipolar import predict_line
from rigidview.focal import locate_projected_focal
from rigidview.focal import locate_with_quotients
from rigidview.frames import BASIS_LABELS
from rigidview.frames import LabeledFrame
from rigidview.projective import Point2D
from rigidview.settings import MatcherSettings
from rigidview.settings import SolverSettings
from rigidview.transfer import frame1_quotients

if t.TYPE_CHECKING:
    from collections.abc import Iterable
    from collections.abc import Iterator
    from collections.abc import Sequence

    from rigidview.focal import FocalSolution
    from rigidview.transfer import FrameQuotients

logger = logging.getLogger(__name__)

_BASIS_SIZE: t.Final[int] = len(BASIS_LABELS)


class MatchOptions(msgspec.Struct, frozen=True, kw_only=True):
    """
    Tuning of the correspondence search.

    Attributes:
        solver: Settings of every focal solve. The default scans ``u`` ten times more coarsely than a
            standalone solve.
        tolerance: Line residual up to which a point counts as lying on its line.
        threads: Worker threads scoring chunks of basis selections.
        chunk_size: Basis selections per chunk. Pruning only compares selections of the same chunk, so
            results do not depend on ``threads``.
    """

    solver: SolverSettings = msgspec.field(default_factory=lambda: SolverSettings(scan_step=1e-2))
    tolerance: float = 1e-6
    threads: int = 1
    chunk_size: int = 512

    @classmethod
    def from_settings(cls, matcher: MatcherSettings, solver: SolverSettings | None = None) -> MatchOptions:
        base = solver or SolverSettings()
        return cls(
            solver=msgspec.structs.replace(
                base, scan_start=matcher.scan_start, scan_stop=matcher.scan_stop, scan_step=matcher.scan_step
            ),
            tolerance=matcher.tolerance,
            threads=matcher.threads,
        )


class MatchProblem(msgspec.Struct, frozen=True, kw_only=True):
    """Two unlabeled point sets of equal size, at least eight points each."""

    s1: tuple[Point2D, ...]
    s2: tuple[Point2D, ...]
    options: MatchOptions = msgspec.field(default_factory=MatchOptions)
    budget: int = 40320

    def __post_init__(self) -> None:
        if len(self.s1) != len(self.s2):
            raise ValueError(f"point sets differ in size ({len(self.s1)} vs {len(self.s2)})")
        if len(self.s1) < _BASIS_SIZE + 1:
            raise ValueError(f"at least {_BASIS_SIZE + 1} points are required, got {len(self.s1)}")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")


class MatchResult(msgspec.Struct, frozen=True, kw_only=True):
    """
    Attributes:
        assignment: ``assignment[i]`` is the index in ``s2`` of the point matched to ``s1[i]``.
        badness: Sum of the line residuals of the points beyond the first seven.
        evaluated: Basis selections scored in full (pruned ones excluded).
        runner_up_badness: Badness of the best assignment with a different basis selection.
        pruned: Basis selections abandoned early.
    """

    assignment: tuple[int, ...]
    badness: float
    evaluated: int
    runner_up_badness: float
    pruned: int = 0


class MembershipVerdict(msgspec.Struct, frozen=True):
    member: bool
    residual: float


class _Scored(t.NamedTuple):
    badness: float
    assignment: tuple[int, ...]


class _ChunkOutcome(t.NamedTuple):
    top: list[_Scored]
    evaluated: int
    pruned: int


def _basis_frame(frame_id: str, points: Iterable[Point2D]) -> LabeledFrame:
    return LabeledFrame(frame_id, dict(zip(BASIS_LABELS, points)))


class _Scorer:
    __slots__ = ("_frame1", "_n", "_options", "_quotients", "_s1", "_s2")

    def __init__(self, problem: MatchProblem) -> None:
        self._s1 = problem.s1
        self._s2 = problem.s2
        self._n = len(problem.s1)
        self._options = problem.options
        self._frame1 = _basis_frame("s1", self._s1[:_BASIS_SIZE])
        try:
            self._quotients: FrameQuotients = frame1_quotients(self._frame1)
        except errors.DegenerateConfiguration as e:
            raise errors.NoValidAssignment(f"the first seven points of s1 do not form a usable basis: {e}") from e

    def _pairings(
        self, solution: FocalSolution, frame2: LabeledFrame, remaining: Sequence[int], threshold: float
    ) -> tuple[float, tuple[int, ...]] | None:
        rest = range(_BASIS_SIZE, self._n)
        cost = np.full((len(rest), len(remaining)), math.inf)
        bound = 0.0
        for row, i in enumerate(rest):
            try:
                pl = predict_line(self._s1[i], self._frame1, frame2, solution)
            except errors.DegenerateConfiguration:
                pass
            else:
                cost[row] = [line_residual(self._s2[j], pl) for j in remaining]
            bound += float(cost[row].min())
            if bound > threshold:
                return None

        reachable = np.isfinite(cost)
        if not reachable.any():
            return math.inf, ()
        # impossible pairings get a cost no feasible matching can reach
        unreachable = (float(cost[reachable].max()) + 1.0) * 10 * len(rest)
        rows, cols = optimize.linear_sum_assignment(np.where(reachable, cost, unreachable))
        return float(cost[rows, cols].sum()), tuple(remaining[c] for c in cols)

    def score(self, selection: tuple[int, ...], threshold: float) -> _Scored | None:
        """Best assignment extending ``selection``; ``None`` once it provably exceeds ``threshold``."""
        frame2 = _basis_frame("s2", (self._s2[j] for j in selection))
        try:
            solution = locate_with_quotients(self._quotients, frame2, self._options.solver)
        except errors.RigidViewError as e:
            logger.debug("selection %s has no focal solution: %s", selection, e)
            return _Scored(math.inf, ())

        chosen = set(selection)
        remaining = [j for j in range(self._n) if j not in chosen]
        best: _Scored | None = None
        abandoned = False
        for alternative in solution.alternatives():
            outcome = self._pairings(alternative, frame2, remaining, threshold)
            if outcome is None:
                abandoned = True
                continue
            total, rest = outcome
            if rest and math.isfinite(total) and (best is None or total < best.badness):
                best = _Scored(total, (*selection, *rest))

        if best is None:
            return None if abandoned else _Scored(math.inf, ())
        return best

    def score_chunk(self, chunk: Sequence[tuple[int, ...]]) -> _ChunkOutcome:
        top: list[_Scored] = []
        evaluated = pruned = 0
        for selection in chunk:
            threshold = top[1].badness if len(top) == 2 else math.inf
            scored = self.score(selection, threshold)
            if scored is None:
                pruned += 1
                continue

            evaluated += 1
            if scored.assignment:
                top = sorted([*top, scored])[:2]
        return _ChunkOutcome(top, evaluated, pruned)


def _chunks(selections: Iterator[tuple[int, ...]], size: int) -> Iterator[list[tuple[int, ...]]]:
    while chunk := list(itertools.islice(selections, size)):
        yield chunk


def match_identities(problem: MatchProblem) -> MatchResult:
    """
    Find the bijection between ``problem.s1`` and ``problem.s2`` that best fits one rigid body.

    The first seven points of ``s1`` are fixed as the basis ``R, P, Q, A, C, E, G``; every ordered
    selection of seven points of ``s2`` is tried against them. For each selection the focal point
    is located, every remaining point of ``s1`` gets its predicted line, and the remaining points of
    ``s2`` are paired with them one to one at minimal total residual. The bijection with the smallest
    badness wins; ties go to the lexicographically smallest assignment.

    Raises:
        :obj:`~rigidview.errors.BudgetExceeded`: If ``n! / (n - 8)!`` exceeds ``problem.budget``.
        :obj:`~rigidview.errors.NoValidAssignment`: If no basis selection yields a scored assignment.
    """
    n = len(problem.s1)
    required = math.perm(n, _BASIS_SIZE + 1)
    if required > problem.budget:
        raise errors.BudgetExceeded(
            required,
            problem.budget,
            {"points": n, "basis_selections": math.perm(n, _BASIS_SIZE), "evaluated": 0},
        )

    scorer = _Scorer(problem)
    options = problem.options
    chunks = _chunks(itertools.permutations(range(n), _BASIS_SIZE), options.chunk_size)
    if options.threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=options.threads) as executor:
            outcomes = list(executor.map(scorer.score_chunk, chunks))
    else:
        outcomes = [scorer.score_chunk(chunk) for chunk in chunks]

    ranked = sorted(scored for outcome in outcomes for scored in outcome.top)
    evaluated = sum(o.evaluated for o in outcomes)
    pruned = sum(o.pruned for o in outcomes)
    logger.info("scored %d basis selections, pruned %d", evaluated, pruned)
    if not ranked:
        raise errors.NoValidAssignment(f"none of the {evaluated} basis selections produced an assignment")

    best = ranked[0]
    return MatchResult(
        assignment=best.assignment,
        badness=best.badness,
        evaluated=evaluated,
        runner_up_badness=ranked[1].badness if len(ranked) > 1 else math.inf,
        pruned=pruned,
    )


def badness(
    assignment: Sequence[int],
    s1: Sequence[Point2D],
    s2: Sequence[Point2D],
    settings: SolverSettings | None = None,
) -> float:
    """
    Sum of the line residuals of the points beyond the first seven under a full assignment, using the
    best accepted focal solution. ``math.inf`` when the focal solve fails.
    """
    if sorted(assignment) != list(range(len(s1))) or len(s1) != len(s2):
        raise ValueError("assignment must be a bijection between equally sized point sets")

    frame1 = _basis_frame("s1", s1[:_BASIS_SIZE])
    frame2 = _basis_frame("s2", (s2[j] for j in assignment[:_BASIS_SIZE]))
    try:
        solution = locate_projected_focal(frame1, frame2, settings)
    except errors.RigidViewError:
        return math.inf

    totals: list[float] = []
    for alternative in solution.alternatives():
        try:
            totals.append(
                sum(
                    line_residual(s2[assignment[i]], predict_line(s1[i], frame1, frame2, alternative))
                    for i in range(_BASIS_SIZE, len(s1))
                )
            )
        except errors.DegenerateConfiguration:
            continue
    return min(totals, default=math.inf)


def rigid_membership(
    frame1: LabeledFrame,
    frame2: LabeledFrame,
    candidate: tuple[Point2D, Point2D],
    tol: float,
    settings: SolverSettings | None = None,
) -> MembershipVerdict:
    """
    Whether a candidate correspondence is consistent with the rigid body imaged by the labeled seven.

    The test is necessary, not sufficient: a point displaced along its predicted line passes.

    Args:
        frame1: Frame 1 holding at least the basis labels.
        frame2: Frame 2 holding at least the basis labels.
        candidate: The candidate's images in frame 1 and frame 2.
        tol: Largest accepted line residual.
        settings: Focal solve settings.

    Raises:
        Whatever :obj:`~rigidview.focal.locate_projected_focal` raises.
    """
    solution = locate_projected_focal(frame1, frame2, settings)
    residual, _ = min_line_residual(candidate[0], candidate[1], frame1, frame2, solution)
    return MembershipVerdict(residual <= tol, residual)
