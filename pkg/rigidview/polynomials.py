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
"""Real polynomials in one and two variables, and the sign-change root scanner."""

from __future__ import annotations

__all__ = [
    "BivariatePoly",
    "CommonRoot",
    "ScanRow",
    "UnivariatePolynomial",
    "refine_common_roots",
    "scan_table",
    "solve_u",
]

import math
import typing as t

import msgspec
import numpy as np
from numpy.polynomial import polynomial as npoly

from rigidview import errors

if t.TYPE_CHECKING:
    import numpy.typing as npt

_BISECTION_LIMIT: t.Final[int] = 200
_HALVING_LIMIT: t.Final[int] = 30
_RESIDUAL_FLOOR: t.Final[float] = 1e-15


class UnivariatePolynomial(msgspec.Struct, frozen=True):
    """A polynomial given by its coefficients in ascending degree."""

    coefficients: tuple[float, ...]

    @classmethod
    def from_array(cls, coefficients: npt.ArrayLike, *, trim_tolerance: float = 0.0) -> UnivariatePolynomial:
        """Build from an array, dropping trailing coefficients with ``|c| <= trim_tolerance * max|c|``."""
        arr = np.atleast_1d(np.asarray(coefficients, dtype=np.float64))
        scale = float(np.max(np.abs(arr))) if arr.size else 0.0
        if scale > 0.0:
            arr = npoly.polytrim(arr, trim_tolerance * scale)
        return cls(tuple(float(c) for c in arr) or (0.0,))

    @property
    def array(self) -> npt.NDArray[np.float64]:
        return np.asarray(self.coefficients, dtype=np.float64)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def scale(self) -> float:
        return max(abs(c) for c in self.coefficients)

    def __call__(self, u: t.Any) -> t.Any:
        return npoly.polyval(u, self.array)

    def normalized(self) -> UnivariatePolynomial:
        """The same polynomial rescaled to unit max-norm."""
        scale = self.scale
        if scale == 0.0:
            return self
        return UnivariatePolynomial(tuple(c / scale for c in self.coefficients))

    def derivative(self) -> UnivariatePolynomial:
        return UnivariatePolynomial.from_array(npoly.polyder(self.array))

    def roots(self) -> npt.NDArray[np.complex128]:
        """All complex roots, as eigenvalues of the companion matrix."""
        arr = npoly.polytrim(self.array)
        if arr.size < 2:
            return np.empty(0, dtype=np.complex128)
        return np.asarray(npoly.polyroots(arr), dtype=np.complex128)

    def real_roots(
        self, start: float = -math.inf, stop: float = math.inf, *, imaginary_tolerance: float = 1e-6
    ) -> tuple[float, ...]:
        """
        Real parts of the roots in ``[start, stop]`` whose imaginary part is at most
        ``imaginary_tolerance * max(1, |root|)``, in ascending order.

        A loose ``imaginary_tolerance`` also keeps the near-real pairs that rounding splits off a real
        double root.
        """
        roots = self.roots()
        keep = np.abs(roots.imag) <= imaginary_tolerance * np.maximum(1.0, np.abs(roots))
        real = roots.real[keep]
        return tuple(sorted(float(r) for r in real[(real >= start) & (real <= stop)]))

    def deflate(self, root: float, *, tolerance: float = 1e-8, limit: int = 32) -> tuple[UnivariatePolynomial, int]:
        """
        Divide out ``(u - root)`` as long as it is a factor.

        A factor is recognized when the remainder of the synthetic division is at most
        ``tolerance`` times the absolute sum of the coefficients.

        Returns:
            The deflated polynomial and the number of factors removed.
        """
        arr = self.array
        removed = 0
        while removed < limit and arr.size > 1:
            quotient, remainder = npoly.polydiv(arr, np.array([-root, 1.0]))
            if abs(float(remainder[0])) > tolerance * float(np.sum(np.abs(arr))):
                break
            arr = quotient
            removed += 1
        return UnivariatePolynomial.from_array(arr), removed


class BivariatePoly(msgspec.Struct, frozen=True):
    """
    A polynomial in ``(u, v)``; ``coefficients[i][j]`` multiplies ``u**i * v**j``.
    """

    coefficients: tuple[tuple[float, ...], ...]

    @classmethod
    def from_array(cls, grid: npt.ArrayLike) -> BivariatePoly:
        arr = np.asarray(grid, dtype=np.float64)
        return cls(tuple(tuple(float(c) for c in row) for row in arr))

    @property
    def array(self) -> npt.NDArray[np.float64]:
        return np.asarray(self.coefficients, dtype=np.float64)

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.array)))

    def _degree(self, axis: int) -> int:
        nonzero = np.any(self.array != 0.0, axis=1 - axis)
        indices = np.flatnonzero(nonzero)
        return int(indices[-1]) if indices.size else 0

    @property
    def degree_u(self) -> int:
        return self._degree(0)

    @property
    def degree_v(self) -> int:
        return self._degree(1)

    def __call__(self, u: t.Any, v: t.Any) -> t.Any:
        return npoly.polyval2d(u, v, self.array)

    def magnitude(self, u: t.Any, v: t.Any) -> t.Any:
        """``sum(|c_ij| * |u|**i * |v|**j)``: the size the value could reach without cancellation."""
        return npoly.polyval2d(np.abs(u), np.abs(v), np.abs(self.array))

    def relative_value(self, u: t.Any, v: t.Any) -> t.Any:
        """``|p(u, v)|`` over :meth:`magnitude`, zero where the magnitude is."""
        value = np.abs(np.asarray(self(u, v), dtype=np.float64))
        magnitude = np.asarray(self.magnitude(u, v), dtype=np.float64)
        return np.divide(value, magnitude, out=np.zeros_like(value), where=magnitude > 0.0)

    def transposed(self) -> BivariatePoly:
        """The same polynomial with the roles of ``u`` and ``v`` swapped."""
        return BivariatePoly.from_array(self.array.T)

    def derivative(self, axis: int) -> BivariatePoly:
        """Partial derivative along ``u`` (``axis=0``) or ``v`` (``axis=1``)."""
        return BivariatePoly.from_array(npoly.polyder(self.array, axis=axis))

    def at_u(self, u: float) -> UnivariatePolynomial:
        """The polynomial in ``v`` left after fixing ``u``."""
        return UnivariatePolynomial.from_array(npoly.polyval(u, self.array))

    def deflate_v(self, root: float, *, tolerance: float = 1e-8) -> BivariatePoly:
        """Like :meth:`deflate_u`, for ``(v - root)``."""
        deflated = self.transposed().deflate_u(root, tolerance=tolerance)
        return deflated.transposed()

    def deflate_u(self, root: float, *, tolerance: float = 1e-8) -> BivariatePoly:
        """
        Divide out ``(u - root)`` when the polynomial vanishes on the whole line ``u == root``.

        Returns ``self`` unchanged when it does not, or when it has no ``u`` term left.
        """
        arr = self.array
        if arr.shape[0] < 2:
            return self

        # synthetic division of every v-column at once
        quotient = np.zeros((arr.shape[0] - 1, arr.shape[1]), dtype=np.float64)
        quotient[-1] = arr[-1]
        for i in range(arr.shape[0] - 2, 0, -1):
            quotient[i - 1] = arr[i] + root * quotient[i]
        remainder = arr[0] + root * quotient[0]

        column_scale = np.sum(np.abs(arr), axis=0)
        if np.any(np.abs(remainder) > tolerance * column_scale):
            return self
        return BivariatePoly.from_array(quotient)

    def coefficient_of_v(self, power: int) -> UnivariatePolynomial:
        """The polynomial in ``u`` multiplying ``v**power``."""
        arr = self.array
        if power >= arr.shape[1]:
            return UnivariatePolynomial((0.0,))
        return UnivariatePolynomial.from_array(arr[:, power])


def _grid(start: float, stop: float, step: float) -> npt.NDArray[np.float64]:
    if not (math.isfinite(start) and math.isfinite(stop)) or stop <= start:
        raise ValueError(f"invalid scan interval [{start}, {stop}]")
    if not step > 0.0:
        raise ValueError("scan step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9))
    xs = start + step * np.arange(count + 1, dtype=np.float64)
    if xs[-1] < stop:
        xs = np.append(xs, stop)
    return xs


def _bisect(p: UnivariatePolynomial, lo: float, hi: float, tolerance: float) -> float:
    f_lo = float(p(lo))
    for _ in range(_BISECTION_LIMIT):
        if hi - lo <= tolerance:
            break
        mid = 0.5 * (lo + hi)
        f_mid = float(p(mid))
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_u(
    p: UnivariatePolynomial,
    start: float = -50.0,
    stop: float = 50.0,
    step: float = 1e-3,
    *,
    tolerance: float = 1e-12,
    tangency_tolerance: float = 1e-12,
) -> tuple[float, ...]:
    """
    Real roots of ``p`` inside ``[start, stop]``.

    The interval is sampled every ``step``; every sign change is refined by bisection until the
    bracket is at most ``tolerance`` wide. Samples where ``p`` is exactly zero are roots. A sampled
    local minimum of ``|p|`` where the derivative changes sign and ``|p|`` is at most
    ``tangency_tolerance`` times the evaluation scale ``sum(|c_i| * |u|**i)`` there is reported as a
    double root.

    Returns:
        The roots in ascending order.

    Raises:
        :obj:`~rigidview.errors.NoRootInInterval`: If no root is found. The error carries the smallest
            sampled ``|p|`` and its location.
    """
    xs = _grid(start, stop, step)
    values = np.asarray(p(xs), dtype=np.float64)
    roots: list[float] = [float(x) for x in xs[values == 0.0]]

    signs = np.sign(values)
    for i in np.flatnonzero(signs[:-1] * signs[1:] < 0):
        roots.append(_bisect(p, float(xs[i]), float(xs[i + 1]), tolerance))

    magnitude = np.abs(values)
    if xs.size >= 3:
        slope = p.derivative()
        absolute = np.abs(p.array)
        interior = np.flatnonzero(
            (magnitude[1:-1] <= magnitude[:-2]) & (magnitude[1:-1] <= magnitude[2:]) & (signs[:-2] == signs[2:])
        )
        for i in interior + 1:
            lo, hi = float(xs[i - 1]), float(xs[i + 1])
            if float(slope(lo)) * float(slope(hi)) >= 0.0:
                continue
            candidate = _bisect(slope, lo, hi, tolerance)
            local_scale = float(npoly.polyval(abs(candidate), absolute))
            if abs(float(p(candidate))) <= tangency_tolerance * local_scale:
                roots.append(candidate)

    if not roots:
        i = int(np.argmin(magnitude))
        raise errors.NoRootInInterval(
            f"no root of the polynomial in [{start}, {stop}]",
            min_abs_value=float(magnitude[i]),
            at=float(xs[i]),
        )

    roots.sort()
    unique: list[float] = []
    for root in roots:
        if not unique or root - unique[-1] > 10 * tolerance:
            unique.append(root)
    return tuple(unique)


class ScanRow(msgspec.Struct, frozen=True):
    u: float
    value: float


def scan_table(p: UnivariatePolynomial, start: float, stop: float, step: float) -> tuple[ScanRow, ...]:
    """
    Sample ``p`` on a grid, scaled to unit max-norm and oriented so that it crosses zero upwards at the
    first sign change (or ends non-negative when there is none).
    """
    xs = _grid(start, stop, step)
    values = np.asarray(p(xs), dtype=np.float64)
    peak = float(np.max(np.abs(values)))
    if peak > 0.0:
        values = values / peak

    signs = np.sign(values)
    crossings = np.flatnonzero(signs[:-1] * signs[1:] < 0)
    if crossings.size:
        if values[crossings[0]] > 0.0:
            values = -values
    elif values[-1] < 0.0:
        values = -values
    return tuple(ScanRow(round(float(x), 12), float(v)) for x, v in zip(xs, values))


class CommonRoot(msgspec.Struct, frozen=True):
    """A refined common zero of two bivariate polynomials."""

    u: float
    v: float
    residual: float
    """The larger :meth:`BivariatePoly.relative_value` of the two polynomials."""
    converged: bool


def _joint_residual(f: BivariatePoly, g: BivariatePoly, u: t.Any, v: t.Any) -> npt.NDArray[np.float64]:
    with np.errstate(over="ignore", invalid="ignore"):
        residual = np.maximum(f.relative_value(u, v), g.relative_value(u, v))
    return np.where(np.isfinite(residual), residual, math.inf)


def refine_common_roots(
    f: BivariatePoly,
    g: BivariatePoly,
    u: npt.ArrayLike,
    v: npt.ArrayLike,
    *,
    tolerance: float = 1e-10,
    iterations: int = 60,
) -> list[CommonRoot]:
    """
    Polish approximate common zeros of ``f`` and ``g`` by Newton's method, all starts at once.

    Each step is halved until it lowers the joint relative residual; a start stops moving once no
    halving helps, the Jacobian is singular or the residual reaches the floating-point floor.

    Args:
        f: The first polynomial.
        g: The second polynomial.
        u: Starting ``u`` values.
        v: Starting ``v`` values, one per ``u``.
        tolerance: Joint relative residual up to which a refined point counts as converged.
        iterations: Newton steps per start at most.

    Returns:
        One entry per start, in the order given.
    """
    us = np.array(u, dtype=np.float64, ndmin=1)
    vs = np.array(v, dtype=np.float64, ndmin=1)
    if us.shape != vs.shape:
        raise ValueError("u and v starts differ in shape")

    fu, fv, gu, gv = f.derivative(0), f.derivative(1), g.derivative(0), g.derivative(1)
    current = _joint_residual(f, g, us, vs)
    active = np.isfinite(current) & (current > _RESIDUAL_FLOOR)
    for _ in range(iterations):
        index = np.flatnonzero(active)
        if not index.size:
            break

        pu, pv = us[index], vs[index]
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            a, b, c, d = fu(pu, pv), fv(pu, pv), gu(pu, pv), gv(pu, pv)
            fval, gval = f(pu, pv), g(pu, pv)
            det = a * d - b * c
            du = (fval * d - gval * b) / det
            dv = (a * gval - c * fval) / det

        best_u, best_v, best = pu, pv, current[index]
        moved = np.zeros(index.size, dtype=bool)
        step = 1.0
        for _ in range(_HALVING_LIMIT):
            cu, cv = pu - step * du, pv - step * dv
            trial = _joint_residual(f, g, cu, cv)
            take = ~moved & (trial < best)
            best_u, best_v, best = np.where(take, cu, best_u), np.where(take, cv, best_v), np.where(take, trial, best)
            moved |= take
            if moved.all():
                break
            step /= 2

        us[index], vs[index], current[index] = best_u, best_v, best
        active[index] = moved & (best > _RESIDUAL_FLOOR)

    return [
        CommonRoot(float(x), float(y), float(r), bool(r <= tolerance)) for x, y, r in zip(us, vs, current)
    ]
