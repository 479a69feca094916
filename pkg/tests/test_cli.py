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
import pathlib
import re

import msgspec
import pytest

from rigidview import cli
from rigidview import frames

FRAME1 = "tests/resources/worked_frame1.json"
FRAME2 = "tests/resources/worked_frame2.csv"
UNROUNDED1 = "tests/resources/worked_unrounded_frame1.json"
UNROUNDED2 = "tests/resources/worked_unrounded_frame2.csv"


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_locate_focal(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "locate-focal", UNROUNDED1, UNROUNDED2, "--scan-table")

    assert code == 0
    document = msgspec.json.decode(out)
    assert document["command"] == "locate-focal"
    assert document["result"]["f1pp_canonical"]["frame"] == "canonical"
    assert len(document["diagnostics"]["scan_table"]) >= 11
    published = [r for r in document["diagnostics"]["roots"] if r["accepted"] and 1.41 <= r["u"] <= 1.45]
    assert len(published) == 1
    assert published[0]["v"] == pytest.approx(1.371473, abs=1e-5)


def test_locate_focal_rounded_table(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "locate-focal", FRAME1, FRAME2)

    assert code == 0
    result = msgspec.json.decode(out)["result"]
    assert result["u_root"] == pytest.approx(-0.7316, abs=1e-3)
    assert result["f1pp"]["x"] == pytest.approx(23.67, abs=0.05)


def test_locate_focal_text_format(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "--format", "text", "locate-focal", UNROUNDED1, UNROUNDED2)

    assert code == 0
    assert "result.u_root = " in out
    assert re.search(r"^diagnostics\.roots\.\d+\.u = 1\.4299", out, re.MULTILINE)


def test_predict_line_with_observed_point(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "predict-line", FRAME1, FRAME2, "--label", "E")

    assert code == 0
    document = msgspec.json.decode(out)
    assert document["result"]["basis"] == "A"
    assert document["diagnostics"]["residuals"]["line"] <= 1e-4


def test_dof_verdict(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "dof", "--regime", "perspective-unknown-varying", "--points", "7", "--frames", "3")

    assert code == 0
    result = msgspec.json.decode(out)["result"]
    assert result["verdict"]["dof"] == 41
    assert result["verdict"]["info"] == 42
    assert result["min_points"] == 7
    assert result["min_frames"] == 3


def test_dof_never_balances(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "dof", "--regime", "perspective-unknown-varying", "--points", "4")

    assert code == 0
    assert msgspec.json.decode(out)["result"] == {"min_frames": "never", "growth": {"per_frame": 9, "intercept": 5}}


def test_dof_table(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = _run(capsys, "--format", "csv", "dof", "--table")

    assert code == 0
    assert "result.0.quoted,41 > 40" in out.splitlines()


def test_dof_without_counts(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, err = _run(capsys, "dof", "--regime", "orthogonal")

    assert code == cli.EXIT_INPUT
    assert "dof" in err


def test_missing_file(capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path) -> None:
    code, out, _ = _run(capsys, "locate-focal", str(tmp_path / "nope.json"), FRAME2)

    assert code == cli.EXIT_INPUT
    assert out == ""


def test_missing_label(capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path) -> None:
    partial = tmp_path / "partial.json"
    frames.write_frame(frames.load_frame(FRAME2).subset(("R", "P", "Q", "A", "C", "E")), partial)

    code, _, err = _run(capsys, "locate-focal", FRAME1, str(partial))

    assert code == cli.EXIT_INPUT
    assert "'G'" in err


def test_simulate_then_locate_and_slide(capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path) -> None:
    code, out, _ = _run(capsys, "simulate", "--points", "8", "--seed", "3", "--out", str(tmp_path))
    assert code == 0
    simulated = msgspec.json.decode(out)["result"]
    assert {p.name for p in tmp_path.iterdir()} == {"scene.json", "frame1.json", "frame2.json"}

    code, out, _ = _run(capsys, "locate-focal", str(tmp_path / "frame1.json"), str(tmp_path / "frame2.json"))
    assert code == 0
    located = msgspec.json.decode(out)
    roots = [r for r in located["diagnostics"]["roots"] if r["accepted"]]
    assert roots

    code, out, _ = _run(capsys, "ambiguity", "--scene", str(tmp_path / "scene.json"), "--t", "0.25")
    assert code == 0
    ambiguity = msgspec.json.decode(out)
    assert ambiguity["diagnostics"]["residuals"]["reprojection"] < 1e-9
    assert ambiguity["result"]["signature_divergence"] > 1e-6
    assert set(ambiguity["result"]["points"]) == {*frames.BASIS_LABELS, "Z1"}
    assert simulated["f1pp"]["frame"] == "original"


def test_no_parallax_is_degenerate(capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path) -> None:
    _run(capsys, "simulate", "--points", "7", "--seed", "1", "--out", str(tmp_path))
    frame1 = str(tmp_path / "frame1.json")

    code, _, _ = _run(capsys, "locate-focal", frame1, frame1)

    assert code == cli.EXIT_DEGENERATE


def test_match_over_budget(capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path) -> None:
    _run(capsys, "simulate", "--points", "9", "--seed", "2", "--out", str(tmp_path))

    code, _, err = _run(capsys, "match", str(tmp_path / "frame1.json"), str(tmp_path / "frame2.json"))

    assert code == cli.EXIT_UNSOLVED
    assert "BudgetExceeded" in err


def test_settings_file_is_applied(capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("RIGIDVIEW_ENV", raising=False)
    monkeypatch.setenv("ACCEPTANCE_TOLERANCE", "-1")

    code, _, err = _run(capsys, "--config", "tests/resources/settings.toml", "locate-focal", FRAME1, FRAME2)

    assert code == cli.EXIT_UNSOLVED
    assert "NoValidRoot" in err


def test_simulate_is_byte_deterministic(capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path) -> None:
    outputs: list[str] = []
    for run in ("first", "second"):
        code, out, _ = _run(capsys, "simulate", "--points", "9", "--seed", "11", "--out", str(tmp_path / run))
        assert code == 0
        outputs.append(out.replace(str(tmp_path / run), "<out>"))

    assert outputs[0] == outputs[1]
    for name in ("scene.json", "frame1.json", "frame2.json"):
        assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()


def test_identical_frames_exit_degenerate(capsys: pytest.CaptureFixture[str]) -> None:
    code, _, err = _run(capsys, "locate-focal", UNROUNDED1, UNROUNDED1)

    assert code == cli.EXIT_DEGENERATE
    assert "no parallax" in err
