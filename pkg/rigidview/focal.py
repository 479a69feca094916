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
Location of the projected focal point of frame 1 on frame 2 from seven labeled correspondences.

Frame 2 is first mapped into its canonical frame (``R -> (0, 0)``, ``Q -> (1, 0)``, ``P -> (0, 1)``).
Each auxiliary point ``X`` (``B``, ``D``, ``F``, ``H``; the intersections of the rays through
``A``, ``C``, ``E`` and ``G`` with the plane ``PQR``) is then parameterized by its axis traces:
``u = 1 / X_P.x`` where ``X_P`` is the intersection of ``XP`` with the x axis, and ``v = 1 / X_Q.y``
where ``X_Q`` is the intersection of ``XQ`` with the y axis. The traces of ``D``, ``F`` and ``H``
are affine functions of those of ``B`` whose coefficients are the double quotients measured in
frame 1, so every line ``A''B''``, ``C''D''``, ``E''F''`` and ``G''H''`` is a function of ``(u, v)``
alone. Requiring the lines to be concurrent yields two polynomial equations in ``(u, v)``.

Both equations vanish identically on ``u = 1`` and on ``v = 1``, where the auxiliary points collapse
onto ``P`` or ``Q``. Those factors are divided out, the eliminated polynomial in ``u`` supplies
starting points, and every start is refined by Newton iteration on the reduced pair. A solution is
accepted only if its auxiliary points are clear of the collapse lines and the four lines meet.
"""

from __future__ import annotations

__all__ = [
    "AuxiliaryPoints",
    "EliminatedQuadratic",
    "FocalSolution",
    "RootCandidate",
    "TraceAffine",
    "chained_traces",
    "concurrency_poly",
    "eliminate_v",
    "final_polynomial",
    "locate_projected_focal",
    "locate_with_quotients",
    "point_to_traces",
    "trace_to_point",
]

import logging
import math
import typing as t

import msgspec
import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import signal

from rigidview import errors
from rigidview.frames import BASIS_LABELS
from rigidview.polynomials import BivariatePoly
from rigidview.polynomials import UnivariatePolynomial
from rigidview.polynomials import refine_common_roots
from rigidview.polynomials import solve_u
from rigidview.projective import DEGENERACY_TOLERANCE
from rigidview.projective import AffineMap2D
from rigidview.projective import Point2D
from rigidview.projective import canonical_frame_map
from rigidview.projective import least_squares_point
from rigidview.projective import line_through
from rigidview.projective import point_line_distance
from rigidview.settings import SolverSettings
from rigidview.transfer import FrameQuotients
from rigidview.transfer import frame1_quotients

if t.TYPE_CHECKING:
    from collections.abc import Iterator
    from collections.abc import Sequence

    import numpy.typing as npt

    from rigidview.frames import LabeledFrame
    from rigidview.polynomials import CommonRoot

logger = logging.getLogger(__name__)

_TRIM_TOLERANCE: t.Final[float] = 1e-13
_EXACT_RESIDUAL: t.Final[float] = 1e-10
"""Relative residual below which two candidates count as equally concurrent."""
_SEED_IMAGINARY: t.Final[float] = 1.0
"""Relative imaginary part up to which a complex root of an eliminated polynomial still seeds a refinement."""
_SAME_ROOT: t.Final[float] = 1e-9


class TraceAffine(msgspec.Struct, frozen=True):
    """The trace parameters ``(alpha + beta * u, gamma + delta * v)`` of an auxiliary point."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    @classmethod
    def identity(cls) -> TraceAffine:
        return cls(0.0, 1.0, 0.0, 1.0)

    @classmethod
    def from_quotients(cls, q_p: float, q_q: float) -> TraceAffine:
        return cls(1.0 - q_p, q_p, 1.0 - q_q, q_q)

    def apply(self, u: float, v: float) -> tuple[float, float]:
        return self.alpha + self.beta * u, self.gamma + self.delta * v

    def homogeneous_grids(
        self,
    ) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64], npt.NDArray[np.float64]]:
        """
        Coefficient grids (``[i][j]`` multiplies ``u**i * v**j``) of the homogeneous point
        ``(v' - 1, u' - 1, u' * v' - 1)`` where ``(u', v')`` are this map's trace parameters.
        """
        a, b, c, d = self.alpha, self.beta, self.gamma, self.delta
        x0 = np.array([[c - 1.0, d], [0.0, 0.0]])
        x1 = np.array([[a - 1.0, 0.0], [b, 0.0]])
        x2 = np.array([[a * c - 1.0, a * d], [b * c, b * d]])
        return x0, x1, x2


def trace_to_point(u: float, v: float, *, tolerance: float = DEGENERACY_TOLERANCE) -> Point2D:
    """
    The canonical-frame point whose traces are ``(1 / u, 0)`` on the x axis and ``(0, 1 / v)`` on the
    y axis: ``((v - 1) / (u * v - 1), (u - 1) / (u * v - 1))``.

    Raises:
        :obj:`~rigidview.errors.DegenerateTraces`: If ``u * v`` is 1 within tolerance, which places
            the point at infinity.
    """
    w = u * v - 1.0
    if abs(w) <= tolerance * max(1.0, abs(u * v)):
        raise errors.DegenerateTraces(f"traces u={u}, v={v} meet at infinity")
    return Point2D((v - 1.0) / w, (u - 1.0) / w)


def point_to_traces(point: Point2D, *, tolerance: float = DEGENERACY_TOLERANCE) -> tuple[float, float]:
    """
    The inverse of :obj:`~trace_to_point`: ``((1 - y) / x, (1 - x) / y)`` for a canonical-frame point.

    Raises:
        :obj:`~rigidview.errors.DegenerateTraces`: If the point lies on an axis, where a trace is infinite.
    """
    if abs(point.x) <= tolerance or abs(point.y) <= tolerance:
        raise errors.DegenerateTraces(f"{point} lies on an axis of the canonical frame")
    return (1.0 - point.y) / point.x, (1.0 - point.x) / point.y


def chained_traces(u: float, v: float, quotients: FrameQuotients) -> tuple[tuple[float, float], ...]:
    """Trace parameters of ``D``, ``F`` and ``H`` given those of ``B``."""
    return tuple(TraceAffine.from_quotients(q_p, q_q).apply(u, v) for q_p, q_q in quotients.pairs())


def _line_grids(
    anchor: Point2D, affine: TraceAffine
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    # (anchor.x, anchor.y, 1) x (x0, x1, x2)
    x0, x1, x2 = affine.homogeneous_grids()
    return anchor.y * x2 - x1, x0 - anchor.x * x2, anchor.x * x1 - anchor.y * x0


def _concurrency(pairs: Sequence[tuple[Point2D, TraceAffine]]) -> tuple[BivariatePoly, float]:
    if len(pairs) != 3:
        raise ValueError("concurrency needs exactly three lines")

    la, lc, le = (_line_grids(anchor, affine) for anchor, affine in pairs)
    cross = (
        signal.convolve2d(lc[1], le[2]) - signal.convolve2d(lc[2], le[1]),
        signal.convolve2d(lc[2], le[0]) - signal.convolve2d(lc[0], le[2]),
        signal.convolve2d(lc[0], le[1]) - signal.convolve2d(lc[1], le[0]),
    )
    det = sum(signal.convolve2d(la[i], cross[i]) for i in range(3))
    scale = math.prod(max(float(np.max(np.abs(g))) for g in line) for line in (la, lc, le))
    return BivariatePoly.from_array(det), scale


def concurrency_poly(pairs: Sequence[tuple[Point2D, TraceAffine]]) -> BivariatePoly:
    """
    The determinant of the three lines ``anchor -> auxiliary point`` as a polynomial in ``(u, v)``.

    Each pair holds an anchor in canonical coordinates (``A''``, ``C''``, ...) and the trace map of its
    auxiliary point. The polynomial vanishes exactly where the three lines are concurrent (or where
    an auxiliary point is undefined); it is at most cubic in each variable and vanishes identically
    on ``u == 1`` and on ``v == 1``, where every auxiliary point collapses onto ``Q''`` or ``P''``.
    """
    return _concurrency(pairs)[0]


class EliminatedQuadratic(msgspec.Struct, frozen=True):
    """``a2(u) * v**2 + a1(u) * v + a0(u)``, which always has the root ``v == 1``."""

    a0: UnivariatePolynomial
    a1: UnivariatePolynomial
    a2: UnivariatePolynomial

    def value(self, u: float, v: float) -> float:
        return float(self.a2(u)) * v * v + float(self.a1(u)) * v + float(self.a0(u))

    def other_root(self, u: float, *, tolerance: float = 1e-12) -> float:
        """
        The non-degenerate root ``v* = a0(u) / a2(u)`` (the product of the roots, one of them 1).

        Raises:
            :obj:`~rigidview.errors.LeadingCoefficientVanishes`: If ``a2(u)`` is zero relative to the
                other coefficients.
        """
        a0, a1, a2 = float(self.a0(u)), float(self.a1(u)), float(self.a2(u))
        if abs(a2) <= tolerance * max(abs(a0), abs(a1), abs(a2)):
            raise errors.LeadingCoefficientVanishes(f"v**2 coefficient vanishes at u={u}")
        return a0 / a2


def eliminate_v(eq1: BivariatePoly, eq2: BivariatePoly) -> EliminatedQuadratic:
    """
    Cancel the ``v**3`` terms by cross-multiplying each equation with the other's cubic coefficient
    and subtracting.
    """
    c = [eq1.coefficient_of_v(j).array for j in range(4)]
    d = [eq2.coefficient_of_v(j).array for j in range(4)]
    a = [npoly.polysub(npoly.polymul(d[3], c[j]), npoly.polymul(c[3], d[j])) for j in range(3)]
    return EliminatedQuadratic(*(UnivariatePolynomial.from_array(x) for x in a))


def _substituted(
    eq: BivariatePoly, quadratic: EliminatedQuadratic, *, absolute: bool = False
) -> npt.NDArray[np.float64]:
    # eq(u, a0 / a2) * a2**3; with absolute=True every coefficient is replaced by its magnitude,
    # which bounds the size the result could have without cancellation
    prepare = np.abs if absolute else np.asarray
    a0, a2 = prepare(quadratic.a0.array), prepare(quadratic.a2.array)
    total = np.zeros(1)
    for j in range(4):
        weight = npoly.polymul(npoly.polypow(a0, j), npoly.polypow(a2, 3 - j))
        total = npoly.polyadd(total, npoly.polymul(prepare(eq.coefficient_of_v(j).array), weight))
    return total


def _finish(raw: npt.NDArray[np.float64]) -> UnivariatePolynomial:
    poly = UnivariatePolynomial.from_array(raw, trim_tolerance=_TRIM_TOLERANCE)
    deflated, removed = poly.deflate(1.0)
    if removed:
        logger.debug("removed %d factor(s) of (u - 1) from the final polynomial", removed)
    return deflated.normalized()


def final_polynomial(eq: BivariatePoly, quadratic: EliminatedQuadratic) -> UnivariatePolynomial:
    """
    ``eq(u, a0(u) / a2(u)) * a2(u)**3``, with any ``(u - 1)`` factors divided out and scaled to unit
    max-norm.
    """
    return _finish(_substituted(eq, quadratic))


class AuxiliaryPoints(msgspec.Struct, frozen=True):
    """Frame-2 images of the intersections of the rays ``F1 A``, ``F1 C``, ``F1 E``, ``F1 G`` with plane ``PQR``."""

    b: Point2D
    d: Point2D
    f: Point2D
    h: Point2D

    def __iter__(self) -> Iterator[Point2D]:
        yield from (self.b, self.d, self.f, self.h)

    def mapped(self, mapping: AffineMap2D) -> AuxiliaryPoints:
        return AuxiliaryPoints(*(mapping.apply(p) for p in self))


class RootCandidate(msgspec.Struct, frozen=True, kw_only=True):
    """A refined real solution ``(u, v)`` of the concurrency equations and the outcome of its validation."""

    u: float
    v: float
    accepted: bool
    residual: float | None = None
    f1pp: Point2D | None = None
    aux: AuxiliaryPoints | None = None
    reason: str | None = None


class FocalSolution(msgspec.Struct, frozen=True, kw_only=True):
    """
    The selected projected focal point and everything that led to it.

    Attributes:
        f1pp: Projection of frame 1's focal point onto frame 2, in frame-2 coordinates.
        aux: ``B''``, ``D''``, ``F''``, ``H''`` in frame-2 coordinates.
        u_root: Trace parameter ``1 / B_P.x`` of the selected root.
        v_root: Trace parameter ``1 / B_Q.y`` of the selected root.
        concurrency_residual: Largest distance from ``f1pp`` to the four lines.
        all_roots: Every refined real solution, in ascending ``u``, accepted or not.
        canonical_map: The map from frame-2 coordinates to the canonical frame.
        polynomial: The final polynomial in ``u`` whose roots seeded the refinement.
    """

    f1pp: Point2D
    aux: AuxiliaryPoints
    u_root: float
    v_root: float
    concurrency_residual: float
    all_roots: tuple[RootCandidate, ...]
    canonical_map: AffineMap2D
    polynomial: UnivariatePolynomial

    @property
    def accepted_roots(self) -> tuple[RootCandidate, ...]:
        return tuple(c for c in self.all_roots if c.accepted)

    def with_candidate(self, candidate: RootCandidate) -> FocalSolution:
        if not candidate.accepted:
            raise errors.InvalidSolution(f"root u={candidate.u} was rejected: {candidate.reason}")
        assert candidate.f1pp is not None and candidate.aux is not None
        assert candidate.residual is not None
        return msgspec.structs.replace(
            self,
            f1pp=candidate.f1pp,
            aux=candidate.aux,
            u_root=candidate.u,
            v_root=candidate.v,
            concurrency_residual=candidate.residual,
        )

    def alternatives(self) -> tuple[FocalSolution, ...]:
        """One solution per accepted root: this one first, then the others in ascending ``u``."""
        others = [c for c in self.accepted_roots if c.u != self.u_root]
        return (self, *(self.with_candidate(c) for c in others))


def _validate(
    u: float,
    v: float,
    anchors: dict[str, Point2D],
    affines: dict[str, TraceAffine],
    frame2: LabeledFrame,
    inverse: AffineMap2D,
    settings: SolverSettings,
) -> RootCandidate:
    collapse = settings.collapse_tolerance
    if abs(u - 1.0) <= collapse or abs(v - 1.0) <= collapse:
        return RootCandidate(u=u, v=v, accepted=False, reason="auxiliary points collapse onto P'' or Q''")
    if abs(u * v - 1.0) <= settings.degeneracy_tolerance:
        return RootCandidate(u=u, v=v, accepted=False, reason="auxiliary point B'' lies at infinity")

    labels = ("A", "C", "E", "G")
    try:
        canonical = AuxiliaryPoints(*(trace_to_point(*affines[k].apply(u, v)) for k in labels))
        for corner in (Point2D(0.0, 1.0), Point2D(1.0, 0.0)):
            if all(p.distance_to(corner) <= collapse for p in canonical):
                return RootCandidate(u=u, v=v, accepted=False, reason="auxiliary points collapse onto P'' or Q''")
        focal = least_squares_point(line_through(anchors[k], p) for k, p in zip(labels, canonical))
        aux = canonical.mapped(inverse)
        lines = [line_through(frame2[k], p) for k, p in zip(labels, aux)]
    except errors.DegenerateConfiguration as e:
        return RootCandidate(u=u, v=v, accepted=False, reason=str(e))

    f1pp = inverse.apply(focal)
    residual = max(point_line_distance(f1pp, ln) for ln in lines)
    scale = _scale(frame2, f1pp)
    accepted = residual <= settings.acceptance_tolerance * scale
    return RootCandidate(
        u=u,
        v=v,
        residual=residual,
        f1pp=f1pp,
        aux=aux,
        accepted=accepted,
        reason=None if accepted else f"lines are not concurrent (residual {residual:.3g})",
    )


def _scale(frame2: LabeledFrame, point: Point2D) -> float:
    coords = [abs(c) for label in BASIS_LABELS for c in (frame2[label].x, frame2[label].y)]
    return max(1.0, abs(point.x), abs(point.y), *coords)


def _shows_parallax(anchors: dict[str, Point2D], affines: dict[str, TraceAffine], tolerance: float) -> bool:
    # without parallax every auxiliary point coincides with its anchor, so the traces of A'' chain
    # exactly onto those of C'', E'' and G''
    try:
        u, v = point_to_traces(anchors["A"])
        for label in ("C", "E", "G"):
            expected = affines[label].apply(u, v)
            observed = point_to_traces(anchors[label])
            if any(abs(e - o) > tolerance * max(1.0, abs(o)) for e, o in zip(expected, observed)):
                return True
    except errors.DegenerateTraces:
        return True
    return False


def _quadratic_starts(
    poly: UnivariatePolynomial,
    quadratic: EliminatedQuadratic,
    reduced: Sequence[BivariatePoly],
    start: float,
    stop: float,
    extra: Sequence[float] = (),
) -> list[tuple[float, float]]:
    # (first, second) starting pairs: every near-real root of the eliminated polynomial, paired with
    # the non-degenerate root of the quadratic and with the real roots of both reduced equations
    firsts = sorted({*poly.real_roots(start, stop, imaginary_tolerance=_SEED_IMAGINARY), *extra})
    starts: list[tuple[float, float]] = []
    for first in firsts:
        seconds: list[float] = []
        try:
            seconds.append(quadratic.other_root(first))
        except errors.LeadingCoefficientVanishes:
            pass
        for eq in reduced:
            seconds.extend(eq.at_u(first).real_roots())
        starts.extend((first, second) for second in seconds if math.isfinite(second))
    return starts


def _distinct(roots: Sequence[CommonRoot]) -> list[CommonRoot]:
    unique: list[CommonRoot] = []
    for root in sorted(roots, key=lambda r: (r.u, r.v)):
        if any(
            abs(root.u - seen.u) <= _SAME_ROOT * max(1.0, abs(root.u))
            and abs(root.v - seen.v) <= _SAME_ROOT * max(1.0, abs(root.v))
            for seen in unique
        ):
            continue
        unique.append(root)
    return unique


def _eliminated(
    equations: Sequence[BivariatePoly], settings: SolverSettings
) -> tuple[UnivariatePolynomial, EliminatedQuadratic]:
    quadratic = eliminate_v(equations[0], equations[1])
    raw = _substituted(equations[0], quadratic)
    reference = float(np.max(_substituted(equations[0], quadratic, absolute=True)))
    if float(np.max(np.abs(raw))) <= settings.vanishing_tolerance * reference:
        raise errors.DegenerateConfiguration(
            "the concurrency equations share a whole curve of solutions; the frames carry no usable parallax"
        )
    poly = _finish(raw)
    if poly.scale == 0.0 or poly.degree == 0:
        raise errors.DegenerateConfiguration("final polynomial is constant")
    return poly, quadratic


def locate_with_quotients(
    quotients: FrameQuotients, frame2: LabeledFrame, settings: SolverSettings | None = None
) -> FocalSolution:
    """
    Like :obj:`~locate_projected_focal`, but takes the frame-1 quotients precomputed. Useful when the
    same frame-1 basis is paired with many frame-2 selections.
    """
    settings = settings or SolverSettings()
    frame2.require(BASIS_LABELS)

    canonical_map = canonical_frame_map(frame2["R"], frame2["Q"], frame2["P"])
    inverse = canonical_map.inverse()
    anchors = {k: canonical_map.apply(frame2[k]) for k in ("A", "C", "E", "G")}
    affines = {
        "A": TraceAffine.identity(),
        "C": TraceAffine.from_quotients(quotients.q_cp, quotients.q_cq),
        "E": TraceAffine.from_quotients(quotients.q_ep, quotients.q_eq),
        "G": TraceAffine.from_quotients(quotients.q_gp, quotients.q_gq),
    }
    if not _shows_parallax(anchors, affines, settings.parallax_tolerance):
        raise errors.DegenerateConfiguration("frame 2 is a projective image of frame 1; the frames carry no parallax")

    raw_equations: list[BivariatePoly] = []
    for last in ("E", "G"):
        eq, scale = _concurrency([(anchors[k], affines[k]) for k in ("A", "C", last)])
        if eq.scale <= settings.vanishing_tolerance * scale:
            raise errors.DegenerateConfiguration(
                "concurrency equations vanish identically; the frames carry no parallax"
            )
        raw_equations.append(eq)

    equations = [eq.deflate_u(1.0) for eq in raw_equations]
    poly, quadratic = _eliminated(equations, settings)
    reduced = [eq.deflate_v(1.0) for eq in equations]

    try:
        scanned = solve_u(poly, settings.scan_start, settings.scan_stop, settings.scan_step)
    except errors.NoRootInInterval as e:
        logger.debug("scan found no sign change: %s", e)
        scanned = ()
    starts = _quadratic_starts(poly, quadratic, reduced, settings.scan_start, settings.scan_stop, scanned)

    # the same elimination with the roles of u and v swapped seeds the roots the first one conditions badly
    swapped = [eq.transposed().deflate_u(1.0) for eq in raw_equations]
    try:
        swapped_poly, swapped_quadratic = _eliminated(swapped, settings)
    except errors.DegenerateConfiguration as e:
        logger.debug("swapped elimination skipped: %s", e)
    else:
        bound = max(abs(settings.scan_start), abs(settings.scan_stop))
        swapped_reduced = [eq.transposed() for eq in reduced]
        starts.extend(
            (u, v) for v, u in _quadratic_starts(swapped_poly, swapped_quadratic, swapped_reduced, -bound, bound)
        )

    refined = refine_common_roots(
        reduced[0],
        reduced[1],
        [s[0] for s in starts],
        [s[1] for s in starts],
        tolerance=settings.refine_tolerance,
    )
    solutions = _distinct([r for r in refined if r.converged and settings.scan_start <= r.u <= settings.scan_stop])
    if not solutions:
        raise errors.NoValidRoot(
            f"no real solution of the concurrency equations with u in [{settings.scan_start}, {settings.scan_stop}]"
            f" ({len(starts)} starting point(s) tried)"
        )

    candidates = tuple(_validate(r.u, r.v, anchors, affines, frame2, inverse, settings) for r in solutions)
    for candidate in candidates:
        logger.debug(
            "root u=%.12g v=%.12g accepted=%s residual=%s reason=%s",
            candidate.u,
            candidate.v,
            candidate.accepted,
            candidate.residual,
            candidate.reason,
        )

    accepted = [c for c in candidates if c.accepted]
    if not accepted:
        raise errors.NoValidRoot(f"none of the {len(candidates)} real root(s) passed the concurrency check")

    def rank(c: RootCandidate) -> tuple[float, float]:
        assert c.residual is not None and c.f1pp is not None
        relative = c.residual / _scale(frame2, c.f1pp)
        return (0.0 if relative <= _EXACT_RESIDUAL else relative, abs(c.u))

    best = min(accepted, key=rank)
    assert best.f1pp is not None and best.aux is not None and best.residual is not None
    logger.info(
        "selected u=%.9g (%d of %d roots accepted), F1'' = (%.6g, %.6g)",
        best.u,
        len(accepted),
        len(candidates),
        best.f1pp.x,
        best.f1pp.y,
    )
    return FocalSolution(
        f1pp=best.f1pp,
        aux=best.aux,
        u_root=best.u,
        v_root=best.v,
        concurrency_residual=best.residual,
        all_roots=candidates,
        canonical_map=canonical_map,
        polynomial=poly,
    )


def locate_projected_focal(
    frame1: LabeledFrame, frame2: LabeledFrame, settings: SolverSettings | None = None
) -> FocalSolution:
    """
    Locate the projection ``F1''`` of frame 1's focal point onto frame 2.

    Both frames must hold the labels ``R, P, Q, A, C, E, G``; the images of seven points of one rigid
    body, no four of them coplanar. Every real root of the final polynomial in the scan interval is
    reconstructed into its four lines and accepted when they meet within the acceptance tolerance.
    Among accepted roots the most concurrent wins, ties going to the smallest ``|u|``.

    Args:
        frame1: The first frame.
        frame2: The second frame.
        settings: Scan interval and tolerances. Defaults to :obj:`~rigidview.settings.SolverSettings`.

    Returns:
        The selected solution. Seven correspondences can admit several valid solutions; all of them
        are listed in :attr:`FocalSolution.all_roots` and available through
        :meth:`FocalSolution.alternatives`.

    Raises:
        :obj:`~rigidview.errors.MissingLabel`: If a basis label is absent from either frame.
        :obj:`~rigidview.errors.DegenerateConfiguration`: If a construction step does not exist,
            including frames that show no parallax.
        :obj:`~rigidview.errors.NoValidRoot`: If no root passes the concurrency check.
    """
    frame1.require(BASIS_LABELS)
    frame2.require(BASIS_LABELS)
    return locate_with_quotients(frame1_quotients(frame1), frame2, settings)
