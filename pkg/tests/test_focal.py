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
import typing as t

import numpy as np
import pytest

from rigidview import errors
from rigidview import focal
from rigidview import frames
from rigidview import oracle
from rigidview import polynomials
from rigidview import transfer
from rigidview.projective import AffineMap2D
from rigidview.projective import Point2D
from rigidview.projective import canonical_frame_map
from rigidview.settings import SolverSettings

SWEEP_SEEDS = range(200)

FramePair = tuple[frames.LabeledFrame, frames.LabeledFrame]


def _worked_frames() -> FramePair:
    frame1 = frames.load_frame("tests/resources/worked_frame1.json")
    return frame1, frames.load_frame("tests/resources/worked_frame2.csv")


def _unrounded_frames() -> FramePair:
    frame1 = frames.load_frame("tests/resources/worked_unrounded_frame1.json")
    return frame1, frames.load_frame("tests/resources/worked_unrounded_frame2.csv")


def _scene_frames(seed: int) -> tuple[oracle.RigidScene, oracle.CameraModel, oracle.CameraModel]:
    return oracle.random_rigid_scene(7, seed=seed)


def _eliminated(
    frame1: frames.LabeledFrame, frame2: frames.LabeledFrame
) -> tuple[focal.EliminatedQuadratic, list[polynomials.BivariatePoly]]:
    quotients = transfer.frame1_quotients(frame1)
    to_canonical = canonical_frame_map(frame2["R"], frame2["Q"], frame2["P"])
    affines = {
        "A": focal.TraceAffine.identity(),
        "C": focal.TraceAffine.from_quotients(quotients.q_cp, quotients.q_cq),
        "E": focal.TraceAffine.from_quotients(quotients.q_ep, quotients.q_eq),
        "G": focal.TraceAffine.from_quotients(quotients.q_gp, quotients.q_gq),
    }
    equations = [
        focal.concurrency_poly([(to_canonical.apply(frame2[k]), affines[k]) for k in ("A", "C", last)]).deflate_u(1.0)
        for last in ("E", "G")
    ]
    return focal.eliminate_v(equations[0], equations[1]), equations


def test_trace_to_point() -> None:
    # (0.25, 0.5) has traces u = (1 - y) / x = 2 and v = (1 - x) / y = 1.5
    assert focal.trace_to_point(2.0, 1.5).array == pytest.approx([0.25, 0.5])


def test_trace_to_point_at_infinity() -> None:
    with pytest.raises(errors.DegenerateTraces):
        focal.trace_to_point(2.0, 0.5)


def test_point_to_traces_inverts_trace_to_point() -> None:
    assert focal.point_to_traces(Point2D(0.25, 0.5)) == pytest.approx((2.0, 1.5))
    assert focal.point_to_traces(focal.trace_to_point(-3.0, 0.2)) == pytest.approx((-3.0, 0.2))


def test_point_to_traces_on_axis() -> None:
    with pytest.raises(errors.DegenerateTraces):
        focal.point_to_traces(Point2D(0.0, 0.5))


def test_chained_traces() -> None:
    quotients = transfer.FrameQuotients(2.0, 0.5, 1.0, 1.0, -1.0, 3.0)

    chained = focal.chained_traces(3.0, 5.0, quotients)

    # u_X = (1 - qXP) + qXP * u and v_X = (1 - qXQ) + qXQ * v
    assert chained == ((5.0, 3.0), (3.0, 5.0), (-1.0, 13.0))


def test_other_root_of_quadratic() -> None:
    # (v - 1)(v - 3) = v**2 - 4v + 3 for every u
    quadratic = focal.EliminatedQuadratic(
        polynomials.UnivariatePolynomial((3.0,)),
        polynomials.UnivariatePolynomial((-4.0,)),
        polynomials.UnivariatePolynomial((1.0,)),
    )

    assert quadratic.other_root(0.7) == pytest.approx(3.0)
    assert quadratic.value(0.7, 1.0) == pytest.approx(0.0)


def test_other_root_with_vanishing_leading_coefficient() -> None:
    # a2(u) = u - 2 vanishes at u = 2
    quadratic = focal.EliminatedQuadratic(
        polynomials.UnivariatePolynomial((-2.0, 1.0)),
        polynomials.UnivariatePolynomial((4.0, -2.0)),
        polynomials.UnivariatePolynomial((-2.0, 1.0)),
    )

    with pytest.raises(errors.LeadingCoefficientVanishes):
        quadratic.other_root(2.0)


def test_concurrency_poly_vanishes_on_collapse_lines() -> None:
    rng = np.random.default_rng(5)
    pairs = [
        (Point2D.from_array(rng.uniform(-3, 3, 2)), focal.TraceAffine.from_quotients(*rng.uniform(-2, 2, 2)))
        for _ in range(3)
    ]
    poly = focal.concurrency_poly(pairs)

    assert poly.degree_u <= 3
    assert poly.degree_v <= 3
    for s in (-2.0, 0.3, 4.0):
        assert abs(poly(1.0, s)) <= 1e-9 * poly.scale
        assert abs(poly(s, 1.0)) <= 1e-9 * poly.scale


def test_concurrency_poly_vanishes_at_true_traces() -> None:
    scene, cam1, cam2 = _scene_frames(2)
    frame1, frame2 = oracle.project(scene, cam1), oracle.project(scene, cam2)
    truth = oracle.true_traces(scene, cam1, cam2)
    quotients = transfer.frame1_quotients(frame1)
    to_canonical = canonical_frame_map(frame2["R"], frame2["Q"], frame2["P"])
    anchors = [to_canonical.apply(frame2[k]) for k in ("A", "C", "E")]
    affines = [
        focal.TraceAffine.identity(),
        focal.TraceAffine.from_quotients(quotients.q_cp, quotients.q_cq),
        focal.TraceAffine.from_quotients(quotients.q_ep, quotients.q_eq),
    ]

    poly = focal.concurrency_poly(list(zip(anchors, affines)))

    u, v = truth["B"].u, truth["B"].v
    assert abs(poly(u, v)) <= 1e-8 * poly.magnitude(u, v)


def test_frame1_quotients_chain_the_true_traces() -> None:
    scene, cam1, cam2 = _scene_frames(4)
    truth = oracle.true_traces(scene, cam1, cam2)
    quotients = transfer.frame1_quotients(oracle.project(scene, cam1))

    chained = focal.chained_traces(truth["B"].u, truth["B"].v, quotients)

    for (u, v), label in zip(chained, ("D", "F", "H")):
        assert u == pytest.approx(truth[label].u, rel=1e-7, abs=1e-9)
        assert v == pytest.approx(truth[label].v, rel=1e-7, abs=1e-9)


@pytest.mark.parametrize("seed", SWEEP_SEEDS)
def test_eliminated_quadratic_keeps_the_collapse_root(seed: int) -> None:
    scene, cam1, cam2 = _scene_frames(seed)
    truth = oracle.true_traces(scene, cam1, cam2)
    quadratic, _ = _eliminated(oracle.project(scene, cam1), oracle.project(scene, cam2))

    for u in (truth["B"].u, -3.5, 0.25, 7.0):
        size = sum(abs(float(c(u))) for c in (quadratic.a0, quadratic.a1, quadratic.a2))
        assert abs(quadratic.value(u, 1.0)) <= 1e-9 * size


@pytest.mark.parametrize("seed", range(50))
def test_other_root_at_true_u_is_true_v(seed: int) -> None:
    scene, cam1, cam2 = _scene_frames(seed)
    truth = oracle.true_traces(scene, cam1, cam2)
    quadratic, _ = _eliminated(oracle.project(scene, cam1), oracle.project(scene, cam2))

    v = quadratic.other_root(truth["B"].u)

    assert v == pytest.approx(truth["B"].v, rel=1e-5, abs=1e-5)


def test_unrounded_worked_example() -> None:
    frame1, frame2 = _unrounded_frames()

    solution = focal.locate_projected_focal(frame1, frame2)

    published = [c for c in solution.accepted_roots if 1.41 <= c.u <= 1.45]
    assert len(published) == 1
    (root,) = published
    assert root.f1pp is not None and root.residual is not None
    assert root.v == pytest.approx(1.371473, abs=1e-5)
    assert root.f1pp.x == pytest.approx(-16.0, abs=1.0)
    assert root.f1pp.y == pytest.approx(-23.0, abs=1.0)
    assert root.residual <= 1e-6 * 34.0
    assert any(s.u_root == root.u for s in solution.alternatives())


def test_unrounded_worked_example_scan_table_changes_sign() -> None:
    frame1, frame2 = _unrounded_frames()
    solution = focal.locate_projected_focal(frame1, frame2)

    rows = {round(r.u, 2): r.value for r in polynomials.scan_table(solution.polynomial, 1.33, 1.53, 0.02)}

    assert rows[1.41] < 0.0 < rows[1.45]


def test_rounded_worked_example_loses_the_published_root() -> None:
    frame1, frame2 = _worked_frames()

    solution = focal.locate_projected_focal(frame1, frame2)

    assert not [c for c in solution.accepted_roots if 1.41 <= c.u <= 1.45]
    assert solution.u_root == pytest.approx(-0.7316, abs=1e-3)
    assert solution.f1pp.x == pytest.approx(23.67, abs=0.05)
    assert solution.f1pp.y == pytest.approx(33.74, abs=0.05)
    rows = polynomials.scan_table(solution.polynomial, 1.33, 1.53, 0.02)
    assert len({np.sign(r.value) for r in rows}) == 1


@pytest.mark.parametrize("frames_of", [_worked_frames, _unrounded_frames])
def test_collapse_root_is_never_accepted(frames_of: t.Callable[[], FramePair]) -> None:
    frame1, frame2 = frames_of()

    solution = focal.locate_projected_focal(frame1, frame2)

    for candidate in solution.accepted_roots:
        assert candidate.f1pp is not None and candidate.aux is not None
        assert abs(candidate.v - 1.0) > 1e-3
        assert abs(candidate.u - 1.0) > 1e-3
        assert candidate.f1pp.distance_to(frame2["P"]) > 1e-3
        assert not all(p.distance_to(frame2["P"]) <= 1e-3 for p in candidate.aux)


def test_worked_example_with_precomputed_quotients() -> None:
    frame1, frame2 = _unrounded_frames()

    direct = focal.locate_projected_focal(frame1, frame2)
    cached = focal.locate_with_quotients(transfer.frame1_quotients(frame1), frame2)

    assert cached.u_root == direct.u_root
    assert cached.f1pp == direct.f1pp


def test_worked_example_is_invariant_to_frame2_coordinates() -> None:
    frame1, frame2 = _unrounded_frames()
    moved = AffineMap2D.from_arrays([[2.0, 0.5], [-0.3, 1.5]], [10.0, -4.0])

    original = focal.locate_projected_focal(frame1, frame2)
    transformed = focal.locate_projected_focal(frame1, frame2.transformed(moved))

    assert len(transformed.accepted_roots) == len(original.accepted_roots)
    for before, after in zip(original.accepted_roots, transformed.accepted_roots):
        assert before.f1pp is not None and after.f1pp is not None
        assert after.u == pytest.approx(before.u, rel=1e-6)
        assert after.f1pp.distance_to(moved.apply(before.f1pp)) < 1e-6 * 100


@pytest.mark.parametrize("seed", SWEEP_SEEDS)
def test_finds_true_projected_focal(seed: int) -> None:
    scene, cam1, cam2 = _scene_frames(seed)
    frame1, frame2 = oracle.project(scene, cam1, "frame1"), oracle.project(scene, cam2, "frame2")
    truth = oracle.true_projected_focal(cam1, cam2)
    traces = oracle.true_traces(scene, cam1, cam2)["B"]

    solution = focal.locate_projected_focal(frame1, frame2)

    scale = max(1.0, abs(truth.x), abs(truth.y))
    best = min(solution.alternatives(), key=lambda s: s.f1pp.distance_to(truth))
    assert best.f1pp.distance_to(truth) <= 1e-6 * scale
    assert best.u_root == pytest.approx(traces.u, rel=1e-6, abs=1e-9)
    assert best.v_root == pytest.approx(traces.v, rel=1e-6, abs=1e-9)
    assert all(c.accepted == (c.reason is None) for c in solution.all_roots)
    assert list(solution.all_roots) == sorted(solution.all_roots, key=lambda c: c.u)


def test_identical_frames_are_degenerate() -> None:
    scene, cam1, _ = _scene_frames(1)
    frame = oracle.project(scene, cam1)

    with pytest.raises(errors.DegenerateConfiguration, match="no parallax"):
        focal.locate_projected_focal(frame, frame)


def test_rotation_about_the_focal_point_is_degenerate() -> None:
    scene, cam1, cam2 = _scene_frames(3)
    rotated = cam2.with_focal_point(cam1.focal_point)

    with pytest.raises(errors.DegenerateConfiguration, match="no parallax"):
        focal.locate_projected_focal(oracle.project(scene, cam1), oracle.project(scene, rotated))


def test_missing_label() -> None:
    frame1, frame2 = _worked_frames()

    with pytest.raises(errors.MissingLabel):
        focal.locate_projected_focal(frame1, frame2.subset(("R", "P", "Q", "A", "C", "E")))


def test_collinear_canonical_basis() -> None:
    frame1, frame2 = _worked_frames()
    frame2 = frame2.with_point("P", Point2D(2.0, 0.0))

    with pytest.raises(errors.CollinearBasis):
        focal.locate_projected_focal(frame1, frame2)


def test_no_root_passes_the_gate() -> None:
    frame1, frame2 = _worked_frames()
    settings = SolverSettings(acceptance_tolerance=-1.0)

    with pytest.raises(errors.NoValidRoot):
        focal.locate_projected_focal(frame1, frame2, settings)


def test_wide_collapse_tolerance_rejects_every_root() -> None:
    frame1, frame2 = _unrounded_frames()
    settings = SolverSettings(collapse_tolerance=100.0)

    with pytest.raises(errors.NoValidRoot):
        focal.locate_projected_focal(frame1, frame2, settings)


def test_rejected_candidate_cannot_be_selected() -> None:
    frame1, frame2 = _worked_frames()
    solution = focal.locate_projected_focal(frame1, frame2)
    rejected = focal.RootCandidate(u=1.0, v=1.0, accepted=False, reason="collapse")

    with pytest.raises(errors.InvalidSolution):
        solution.with_candidate(rejected)
