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
import math

import numpy as np
import pytest

from rigidview import epipolar
from rigidview import errors
from rigidview import focal
from rigidview import frames
from rigidview import matching
from rigidview import oracle
from rigidview.projective import Point2D


def _scene_points(seed: int, p: int = 8) -> tuple[list[Point2D], list[Point2D]]:
    scene, cam1, cam2 = oracle.random_rigid_scene(p, seed=seed)
    frame1, frame2 = oracle.project(scene, cam1), oracle.project(scene, cam2)
    return list(frame1.points.values()), list(frame2.points.values())


def test_problem_requires_equal_sizes() -> None:
    s1, s2 = _scene_points(0)

    with pytest.raises(ValueError):
        matching.MatchProblem(s1=tuple(s1), s2=tuple(s2[:-1]))


def test_problem_requires_eight_points() -> None:
    s1, s2 = _scene_points(0)

    with pytest.raises(ValueError):
        matching.MatchProblem(s1=tuple(s1[:7]), s2=tuple(s2[:7]))


def test_budget_exceeded() -> None:
    s1, s2 = _scene_points(0, p=9)
    problem = matching.MatchProblem(s1=tuple(s1), s2=tuple(s2))

    with pytest.raises(errors.BudgetExceeded) as exc_info:
        matching.match_identities(problem)

    assert exc_info.value.required == math.perm(9, 8) == 362880
    assert exc_info.value.budget == 40320


@pytest.mark.parametrize("seed", range(50))
def test_badness_of_true_assignment_is_small(seed: int) -> None:
    s1, s2 = _scene_points(seed)

    assert matching.badness(tuple(range(8)), s1, s2) <= 1e-6


def test_badness_of_wrong_assignment_is_large() -> None:
    s1, s2 = _scene_points(1)

    # the eighth point is paired with the wrong image
    wrong = matching.badness((0, 1, 2, 3, 4, 5, 7, 6), s1, s2)

    assert wrong > 1e-3


def test_badness_requires_bijection() -> None:
    s1, s2 = _scene_points(1)

    with pytest.raises(ValueError):
        matching.badness((0, 0, 1, 2, 3, 4, 5, 6), s1, s2)


def test_scorer_recovers_true_selection() -> None:
    s1, s2 = _scene_points(2)
    order = [3, 0, 7, 5, 1, 6, 2, 4]
    shuffled = tuple(s2[i] for i in order)
    problem = matching.MatchProblem(s1=tuple(s1), s2=shuffled)
    expected = tuple(order.index(i) for i in range(8))

    scored = matching._Scorer(problem).score(expected[:7], math.inf)

    assert scored is not None
    assert scored.assignment == expected
    assert scored.badness <= 1e-5


def test_scorer_prunes_against_threshold() -> None:
    s1, s2 = _scene_points(2)
    problem = matching.MatchProblem(s1=tuple(s1), s2=tuple(s2))

    assert matching._Scorer(problem).score(tuple(range(7)), -1.0) is None


@pytest.mark.slow
def test_match_identities_recovers_shuffled_labels() -> None:
    s1, s2 = _scene_points(3)
    order = [6, 2, 0, 7, 4, 1, 5, 3]
    shuffled = tuple(s2[i] for i in order)
    options = matching.MatchOptions(threads=2)

    result = matching.match_identities(matching.MatchProblem(s1=tuple(s1), s2=shuffled, options=options))

    assert result.assignment == tuple(order.index(i) for i in range(8))
    assert result.badness <= 1e-6
    assert result.runner_up_badness >= 1e3 * result.badness
    assert result.evaluated + result.pruned == math.perm(8, 7)


def test_rigid_membership() -> None:
    scene, cam1, cam2 = oracle.random_rigid_scene(8, seed=4)
    frame1, frame2 = oracle.project(scene, cam1), oracle.project(scene, cam2)
    basis1, basis2 = frame1.subset(frames.BASIS_LABELS), frame2.subset(frames.BASIS_LABELS)
    z1, z2 = frame1["Z1"], frame2["Z1"]

    member = matching.rigid_membership(basis1, basis2, (z1, z2), 1e-6)
    outsider = matching.rigid_membership(basis1, basis2, (z1, Point2D(z2.x + 0.5, z2.y - 0.5)), 1e-6)

    assert member.member
    assert member.residual <= 1e-6
    assert not outsider.member
    assert outsider.residual > 1e-6


def test_rigid_membership_accepts_points_moved_along_their_line() -> None:
    scene, cam1, cam2 = oracle.random_rigid_scene(8, seed=4)
    frame1, frame2 = oracle.project(scene, cam1), oracle.project(scene, cam2)
    basis1, basis2 = frame1.subset(frames.BASIS_LABELS), frame2.subset(frames.BASIS_LABELS)
    z2 = frame2["Z1"]
    solution = focal.locate_projected_focal(basis1, basis2)
    _, predicted = epipolar.min_line_residual(frame1["Z1"], z2, basis1, basis2, solution)
    direction = np.array([-predicted.line.b, predicted.line.a])

    slid = Point2D.from_array(z2.array + 0.3 * direction)

    assert matching.rigid_membership(basis1, basis2, (frame1["Z1"], slid), 1e-6).member


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_match_identities_sweep(seed: int) -> None:
    s1, s2 = _scene_points(seed)
    order = [int(i) for i in np.random.default_rng(seed).permutation(8)]
    shuffled = tuple(s2[i] for i in order)

    result = matching.match_identities(matching.MatchProblem(s1=tuple(s1), s2=shuffled))

    assert result.assignment == tuple(order.index(i) for i in range(8))
    assert result.badness <= 1e-6
    assert result.runner_up_badness >= 1e3 * result.badness
    assert result.evaluated + result.pruned <= math.perm(8, 7)
