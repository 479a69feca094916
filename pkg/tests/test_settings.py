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
import pytest

from rigidview import errors
from rigidview import settings


def test_merge_dicts() -> None:
    # Basic overwrite
    assert settings._merge_dicts({"a": 1, "b": 2}, {"b": 3, "c": 4}) == {"a": 1, "b": 3, "c": 4}
    # Nested merge
    assert settings._merge_dicts({"solver": {"x": 1}}, {"solver": {"y": 3}}) == {"solver": {"x": 1, "y": 3}}
    # Overwrite dict with non-dict
    assert settings._merge_dicts({"a": {"b": 2}}, {"a": 1}) == {"a": 1}
    # Lists should be overwritten, not merged
    assert settings._merge_dicts({"a": [1, 2]}, {"a": [3, 4]}) == {"a": [3, 4]}


def test_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("RIGIDVIEW_SEED", raising=False)
    monkeypatch.delenv(settings.ENV_VARIABLE, raising=False)

    loaded = settings.load_settings()

    assert loaded == settings.Settings()
    assert loaded.solver.scan_start == -50.0
    assert loaded.solver.scan_stop == 50.0
    assert loaded.solver.acceptance_tolerance == 1e-6
    assert loaded.matcher.budget == 40320
    assert loaded.oracle.seed == 0


def test_seed_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("RIGIDVIEW_SEED", "123")

    assert settings.load_settings().oracle.seed == 123


def test_loads_toml() -> None:
    loaded = settings.loads_settings('[matcher]\nthreads = 8\nscan_step = "0.05"\n', "toml")

    assert loaded.matcher.threads == 8
    assert loaded.matcher.scan_step == 0.05


def test_loads_json() -> None:
    loaded = settings.loads_settings('{"oracle": {"box": 2.5, "focal_length": [1, 3]}}', "json")

    assert loaded.oracle.box == 2.5
    assert loaded.oracle.focal_length == (1.0, 3.0)


def test_loads_invalid_value() -> None:
    with pytest.raises(errors.SettingsError):
        settings.loads_settings('{"matcher": {"threads": "many"}}', "json")


def test_loads_unknown_format() -> None:
    with pytest.raises(NotImplementedError):
        settings.loads_settings("threads: 1", "ini")


def test_load_file(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("RIGIDVIEW_SEED", raising=False)
    monkeypatch.delenv("ACCEPTANCE_TOLERANCE", raising=False)
    monkeypatch.delenv("CAMERA_DISTANCE", raising=False)
    monkeypatch.delenv(settings.ENV_VARIABLE, raising=False)

    loaded = settings.load_settings("tests/resources/settings.toml")

    assert loaded.solver.scan_step == 0.002
    assert loaded.solver.acceptance_tolerance == 1e-6
    assert loaded.oracle.seed == 11
    assert loaded.oracle.camera_distance == (3.0, 6.0)
    assert loaded.matcher.threads == 1


def test_load_file_with_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("ACCEPTANCE_TOLERANCE", "1e-8")

    loaded = settings.load_settings("tests/resources/settings.toml", env="prod")

    assert loaded.solver.scan_step == 0.001
    assert loaded.solver.acceptance_tolerance == 1e-8
    assert loaded.matcher.threads == 4


def test_load_env_from_variable(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(settings.ENV_VARIABLE, "prod")

    assert settings.load_settings("tests/resources/settings.toml").matcher.threads == 4


def test_load_multiple_files(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(settings.ENV_VARIABLE, raising=False)

    loaded = settings.load_settings(["tests/resources/settings.toml", "tests/resources/matcher.toml"], env="prod")

    assert loaded.matcher.budget == 100000
    assert loaded.matcher.tolerance == 1e-5
    assert loaded.matcher.threads == 4
    assert loaded.solver.scan_step == 0.001
