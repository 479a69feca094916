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
Command line interface.

Exit codes: 0 success, 2 unreadable input (parse errors, missing labels, bad arguments),
3 degenerate configuration, 4 no valid root, assignment or other solver failure.
"""

from __future__ import annotations

__all__ = ["build_parser", "main"]

import argparse
import logging
import pathlib
import sys
import typing as t

import msgspec
import numpy as np

from rigidview import dof
from rigidview import errors
from rigidview import frames
from rigidview import oracle
from rigidview import report
from rigidview.epipolar import min_line_residual
from rigidview.epipolar import predict_line
from rigidview.focal import locate_projected_focal
from rigidview.matching import MatchOptions
from rigidview.matching import MatchProblem
from rigidview.matching import match_identities
from rigidview.polynomials import scan_table
from rigidview.settings import Settings
from rigidview.settings import load_settings

if t.TYPE_CHECKING:
    from collections.abc import Sequence

    from rigidview.focal import FocalSolution

logger = logging.getLogger("rigidview")

EXIT_OK: t.Final[int] = 0
EXIT_INPUT: t.Final[int] = 2
EXIT_DEGENERATE: t.Final[int] = 3
EXIT_UNSOLVED: t.Final[int] = 4


def _solution_result(sol: FocalSolution) -> dict[str, t.Any]:
    canonical = sol.canonical_map.apply(sol.f1pp)
    return {
        "u_root": sol.u_root,
        "v_root": sol.v_root,
        "f1pp": report.point_entry(sol.f1pp),
        "f1pp_canonical": report.point_entry(canonical, "canonical"),
        "aux": {name: report.point_entry(p) for name, p in zip(("B", "D", "F", "H"), sol.aux)},
    }


def _roots(sol: FocalSolution) -> list[dict[str, t.Any]]:
    return [
        {"u": c.u, "v": c.v, "accepted": c.accepted, "residual": c.residual, "reason": c.reason}
        for c in sol.all_roots
    ]


def cmd_locate_focal(args: argparse.Namespace, settings: Settings) -> report.ReportDocument:
    frame1 = frames.load_frame(args.frame1)
    frame2 = frames.load_frame(args.frame2)
    sol = locate_projected_focal(frame1, frame2, settings.solver)

    diagnostics: dict[str, t.Any] = {
        "residuals": {"concurrency": sol.concurrency_residual},
        "roots": _roots(sol),
        "polynomial": list(sol.polynomial.coefficients),
    }
    if args.scan_table:
        rows = scan_table(sol.polynomial, args.table_start, args.table_stop, args.table_step)
        diagnostics["scan_table"] = [{"u": r.u, "value": r.value} for r in rows]

    return report.ReportDocument(
        command="locate-focal",
        inputs={"frame1": str(args.frame1), "frame2": str(args.frame2)},
        result=_solution_result(sol),
        diagnostics=diagnostics,
    )


def cmd_predict_line(args: argparse.Namespace, settings: Settings) -> report.ReportDocument:
    frame1 = frames.load_frame(args.frame1)
    frame2 = frames.load_frame(args.frame2)
    sol = locate_projected_focal(frame1, frame2, settings.solver)
    z_prime = frame1[args.label]

    residual: float | None = None
    if args.label in frame2:
        residual, predicted = min_line_residual(z_prime, frame2[args.label], frame1, frame2, sol)
    else:
        predicted = predict_line(z_prime, frame1, frame2, sol)

    return report.ReportDocument(
        command="predict-line",
        inputs={"frame1": str(args.frame1), "frame2": str(args.frame2), "label": args.label},
        result={
            "line": report.line_entry(predicted.line),
            "via": report.point_entry(predicted.via),
            "anchor": report.point_entry(predicted.anchor),
            "basis": predicted.basis,
        },
        diagnostics={"residuals": {"line": residual}, "roots": _roots(sol)},
    )


def cmd_match(args: argparse.Namespace, settings: Settings) -> report.ReportDocument:
    s1 = frames.load_frame(args.s1)
    s2 = frames.load_frame(args.s2)
    matcher = settings.matcher
    if args.threads is not None:
        matcher = msgspec.structs.replace(matcher, threads=args.threads)
    budget = args.budget if args.budget is not None else matcher.budget

    problem = MatchProblem(
        s1=tuple(s1.points.values()),
        s2=tuple(s2.points.values()),
        options=MatchOptions.from_settings(matcher, settings.solver),
        budget=budget,
    )
    result = match_identities(problem)
    labels1, labels2 = s1.labels, s2.labels
    return report.ReportDocument(
        command="match",
        inputs={"s1": str(args.s1), "s2": str(args.s2), "budget": budget},
        result={
            "assignment": {labels1[i]: labels2[j] for i, j in enumerate(result.assignment)},
            "badness": result.badness,
            "runner_up_badness": result.runner_up_badness,
        },
        diagnostics={"evaluated": result.evaluated, "pruned": result.pruned},
    )


def _verdict_row(v: dof.DofVerdict, quoted: str | None = None) -> dict[str, t.Any]:
    row: dict[str, t.Any] = {
        "regime": v.scenario.regime.value,
        "p": v.scenario.p,
        "k": v.scenario.k,
        "dof": v.dof,
        "info": v.info,
        "balanced": v.balanced,
        "margin": v.margin,
        "redundancy_caveat": v.redundancy_caveat,
    }
    if quoted is not None:
        row["quoted"] = quoted
    return row


def cmd_dof(args: argparse.Namespace, _: Settings) -> report.ReportDocument:
    if args.table:
        rows = [
            _verdict_row(v, ref.quoted)
            for ref, v in zip(dof.REFERENCE_SCENARIOS, dof.balance_table(r.scenario for r in dof.REFERENCE_SCENARIOS))
        ]
        return report.ReportDocument(command="dof", inputs={"table": True}, result=rows)

    if args.regime is None or (args.points is None and args.frames is None):
        raise ValueError("dof needs --table, or --regime with --points and/or --frames")

    regime = dof.Regime(args.regime)
    inputs: dict[str, t.Any] = {"regime": regime.value, "points": args.points, "frames": args.frames}
    result: dict[str, t.Any] = {}
    if args.points is not None and args.frames is not None:
        result["verdict"] = _verdict_row(dof.verdict(dof.DofScenario(regime, args.points, args.frames)))
    if args.frames is not None:
        result["min_points"] = dof.min_points(regime, args.frames) or "never"
    if args.points is not None:
        result["min_frames"] = dof.min_frames(regime, args.points) or "never"
        slope, intercept = dof.dof_growth(regime, args.points)
        result["growth"] = {"per_frame": slope, "intercept": intercept}
    return report.ReportDocument(command="dof", inputs=inputs, result=result)


def cmd_simulate(args: argparse.Namespace, settings: Settings) -> report.ReportDocument:
    seed = settings.oracle.seed if args.seed is None else args.seed
    scene, cam1, cam2 = oracle.random_rigid_scene(args.points, seed, settings.oracle)
    frame1 = oracle.project(scene, cam1, "frame1")
    frame2 = oracle.project(scene, cam2, "frame2")
    if args.noise > 0.0:
        rng = np.random.default_rng((seed, 1))
        frame1 = oracle.perturb(frame1, args.noise, rng)
        frame2 = oracle.perturb(frame2, args.noise, rng)

    out: pathlib.Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    written = {
        "scene": out / "scene.json",
        "frame1": out / "frame1.json",
        "frame2": out / "frame2.json",
    }
    oracle.write_scene(scene, written["scene"], (cam1, cam2))
    frames.write_frame(frame1, written["frame1"])
    frames.write_frame(frame2, written["frame2"])

    return report.ReportDocument(
        command="simulate",
        inputs={"points": args.points, "seed": seed, "noise": args.noise},
        result={
            "files": {k: str(v) for k, v in written.items()},
            "f1pp": report.point_entry(oracle.true_projected_focal(cam1, cam2)),
        },
        diagnostics={"certificate": msgspec.to_builtins(scene.certificate)},
    )


def _reprojection_residual(expected: frames.LabeledFrame, actual: frames.LabeledFrame) -> float:
    return max(expected[label].distance_to(actual[label]) for label in expected.labels)


def cmd_ambiguity(args: argparse.Namespace, _: Settings) -> report.ReportDocument:
    scene, cameras = oracle.load_scene(args.scene)
    if len(cameras) != 2:
        raise errors.FrameFormatError(f"scene file must hold two cameras, found {len(cameras)}")
    cam1, cam2 = cameras

    moved = oracle.ambiguity_family(scene, cam1, cam2, args.t, args.move)
    moved1, moved2 = oracle.slide_cameras(cam1, cam2, args.t, args.move)
    residual = max(
        _reprojection_residual(oracle.project(scene, cam1), oracle.project(moved, moved1)),
        _reprojection_residual(oracle.project(scene, cam2), oracle.project(moved, moved2)),
    )
    divergence = oracle.shape_signature(scene).divergence(oracle.shape_signature(moved))

    return report.ReportDocument(
        command="ambiguity",
        inputs={"scene": str(args.scene), "t": args.t, "move": args.move},
        result={
            "points": {k: {"x": p.x, "y": p.y, "z": p.z} for k, p in moved.points.items()},
            "signature_divergence": divergence,
        },
        diagnostics={"residuals": {"reprojection": residual}},
    )


_COMMANDS: t.Final[dict[str, t.Callable[[argparse.Namespace, Settings], report.ReportDocument]]] = {
    "locate-focal": cmd_locate_focal,
    "predict-line": cmd_predict_line,
    "match": cmd_match,
    "dof": cmd_dof,
    "simulate": cmd_simulate,
    "ambiguity": cmd_ambiguity,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rigidview", description="Two-frame projective analysis of rigid bodies.")
    parser.add_argument("--config", type=pathlib.Path, action="append", default=[], help="Settings file (repeatable).")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json", help="Report format.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log more (-v info, -vv debug).")
    commands = parser.add_subparsers(dest="command", required=True)

    locate = commands.add_parser("locate-focal", help="Locate the projected focal point of frame 1 on frame 2.")
    locate.add_argument("frame1", type=pathlib.Path)
    locate.add_argument("frame2", type=pathlib.Path)
    locate.add_argument("--scan-table", action="store_true", help="Include sampled values of the final polynomial.")
    locate.add_argument("--table-start", type=float, default=1.33)
    locate.add_argument("--table-stop", type=float, default=1.53)
    locate.add_argument("--table-step", type=float, default=0.02)

    predict = commands.add_parser("predict-line", help="Predict the frame-2 line of a further point.")
    predict.add_argument("frame1", type=pathlib.Path)
    predict.add_argument("frame2", type=pathlib.Path)
    predict.add_argument("--label", required=True, help="Label of the point in frame 1.")

    match = commands.add_parser("match", help="Recover point identities between two unlabeled frames.")
    match.add_argument("s1", type=pathlib.Path)
    match.add_argument("s2", type=pathlib.Path)
    match.add_argument("--budget", type=int, default=None)
    match.add_argument("--threads", type=int, default=None)

    balance = commands.add_parser("dof", help="Degrees of freedom against information.")
    balance.add_argument("--table", action="store_true", help="Print the reference balances.")
    balance.add_argument("--regime", choices=[r.value for r in dof.Regime])
    balance.add_argument("--points", type=int)
    balance.add_argument("--frames", type=int)

    simulate = commands.add_parser("simulate", help="Generate a certified synthetic scene and its two frames.")
    simulate.add_argument("--points", type=int, default=8)
    simulate.add_argument("--seed", type=int, default=None, help="Defaults to RIGIDVIEW_SEED or the settings.")
    simulate.add_argument("--noise", type=float, default=0.0, help="Standard deviation of image noise.")
    simulate.add_argument("--out", type=pathlib.Path, default=pathlib.Path("."))

    ambiguity = commands.add_parser("ambiguity", help="Build another body with the same two images.")
    ambiguity.add_argument("--scene", type=pathlib.Path, required=True)
    ambiguity.add_argument("--t", type=float, required=True, help="Position along the baseline.")
    ambiguity.add_argument("--move", choices=("first", "second"), default="first")
    return parser


def _exit_code(e: BaseException) -> int:
    if isinstance(e, (errors.MissingLabel, errors.FrameFormatError, errors.SettingsError)):
        return EXIT_INPUT
    if isinstance(e, errors.DegenerateConfiguration):
        return EXIT_DEGENERATE
    if isinstance(e, errors.RigidViewError):
        return EXIT_UNSOLVED
    return EXIT_INPUT


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        settings = load_settings(args.config)
        document = _COMMANDS[args.command](args, settings)
    except (errors.RigidViewError, NotImplementedError, ValueError, OSError) as e:
        code = _exit_code(e)
        print(f"rigidview {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return code

    sys.stdout.buffer.write(report.render(document, args.format))
    sys.stdout.flush()
    return EXIT_OK

