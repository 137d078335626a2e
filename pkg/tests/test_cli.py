from __future__ import annotations

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from cli.app import app
from models.clustered_graph import ClusteredGraph
from storage.instance_format import Instance, save_instance
from tests.builders import Embedded


@pytest.fixture(autouse=True)
def _no_logging_setup(monkeypatch) -> None:
    monkeypatch.setattr("cli.app.configure_logging", lambda level=None: None)


@pytest.fixture()
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture()
def k4_file(tmp_path: Path, k4: ClusteredGraph) -> Path:
    path = tmp_path / "k4.json"
    save_instance(path, k4)
    return path


@pytest.fixture()
def square_file(tmp_path: Path, alternating_square: Embedded) -> Path:
    path = tmp_path / "square.json"
    save_instance(path, Instance.from_map(*alternating_square))
    return path


def _write(tmp_path: Path, name: str, payload: object) -> Path:
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_validate_accepts_valid_instance(runner: CliRunner, k4_file: Path) -> None:
    result = runner.invoke(app, ["validate", str(k4_file)])

    assert result.exit_code == 0
    assert "valid" in result.stdout


def test_validate_lists_problems(runner: CliRunner, tmp_path: Path) -> None:
    path = _write(tmp_path, "orphan.json", {"vertices": [1], "clusters": {"name": "root", "children": [1, 2]}})

    result = runner.invoke(app, ["validate", str(path)])

    assert result.exit_code == 1
    assert "orphan leaf 2 is not a vertex" in result.stdout


def test_test_ht_text_output(runner: CliRunner, k4_file: Path) -> None:
    result = runner.invoke(app, ["test-ht", str(k4_file)])

    assert result.exit_code == 0
    assert "outcome: c_planar" in result.stdout
    assert "tier: two_clustered" in result.stdout


def test_test_ht_json_output(runner: CliRunner, k4_file: Path) -> None:
    result = runner.invoke(app, ["test-ht", str(k4_file), "--format", "json"])

    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["outcome"] == "c_planar"
    assert payload["method"] == "hanani_tutte"


def test_generated_counterexample_is_inconclusive(runner: CliRunner, tmp_path: Path) -> None:
    path = tmp_path / "cycle.json"

    generated = runner.invoke(app, ["gen-counterexample", "3", "3", "--out", str(path)])
    verdict = runner.invoke(app, ["test-ht", str(path)])
    winding = runner.invoke(app, ["winding", str(path)])

    assert generated.exit_code == 0
    assert path.exists()
    assert "outcome: even_drawing_exists_inconclusive" in verdict.stdout
    assert "Caveat" in verdict.stdout
    assert "winding: 3" in winding.stdout
    assert "phi: 3 1 2 3 1 2 3 1 2" in winding.stdout


def test_gen_counterexample_rejects_even_winding(runner: CliRunner) -> None:
    result = runner.invoke(app, ["gen-counterexample", "3", "2"])

    assert result.exit_code == 1
    assert "Error" in result.output


def test_test_embedded(runner: CliRunner, square_file: Path) -> None:
    result = runner.invoke(app, ["test-embedded", str(square_file)])

    assert result.exit_code == 0
    assert "outcome: c_planar" in result.stdout
    assert "tier: embedded_small_faces" in result.stdout
    assert "Witness" in result.stdout


def test_test_embedded_needs_embedding(runner: CliRunner, k4_file: Path) -> None:
    result = runner.invoke(app, ["test-embedded", str(k4_file)])

    assert result.exit_code == 1
    assert "no embedding section" in result.output


def test_oracle_answers(runner: CliRunner, k4_file: Path, square_file: Path) -> None:
    flat = runner.invoke(app, ["oracle", str(k4_file)])
    embedded = runner.invoke(app, ["oracle", str(square_file), "--embedded"])

    assert flat.exit_code == 0
    assert flat.stdout.strip() == "true"
    assert embedded.stdout.strip() == "true"


def test_oracle_refuses_over_budget(runner: CliRunner, k4_file: Path) -> None:
    result = runner.invoke(app, ["oracle", str(k4_file), "--budget", "1"])

    assert result.exit_code == 3
    assert "Refused" in result.output


def test_render_text_and_svg(runner: CliRunner, k4_file: Path, tmp_path: Path) -> None:
    out = tmp_path / "k4.svg"

    text = runner.invoke(app, ["render", str(k4_file), "--format", "text"])
    svg = runner.invoke(app, ["render", str(k4_file), "--out", str(out)])

    assert text.exit_code == 0
    assert "order:" in text.stdout
    assert svg.exit_code == 0
    assert out.read_text(encoding="utf-8").startswith("<?xml")


def test_sinusoid_reports_parities(runner: CliRunner) -> None:
    result = runner.invoke(app, ["sinusoid", "4", "1", "--samples", "10000"])

    assert result.exit_code == 0
    assert "independently even: yes" in result.stdout


def test_experiment_command(runner: CliRunner) -> None:
    result = runner.invoke(app, ["experiment", "winding", "--count", "20", "--seed", "2", "--workers", "2"])

    assert result.exit_code == 0
    assert "total: 20" in result.stdout
    assert "disagreements: 0" in result.stdout


def test_broken_json_exits_with_error(runner: CliRunner, tmp_path: Path) -> None:
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")

    result = runner.invoke(app, ["test-ht", str(path)])

    assert result.exit_code == 1
    assert "Invalid JSON" in result.output


def test_embedded_commands_reject_orphan_leaves(runner: CliRunner, tmp_path: Path) -> None:
    path = _write(
        tmp_path,
        "orphan-square.json",
        {
            "vertices": [1, 2, 3, 4],
            "edges": [{"id": 0, "ends": [1, 2]}, {"id": 1, "ends": [2, 3]}, {"id": 2, "ends": [3, 4]}, {"id": 3, "ends": [4, 1]}],
            "clusters": {"name": "root", "children": [{"name": "A", "children": [1, 3, 99]}, {"name": "B", "children": [2, 4]}]},
            "embedding": {"rotations": {"1": [0, 3], "2": [0, 1], "3": [1, 2], "4": [2, 3]}, "outer": [1, 0]},
        },
    )

    decided = runner.invoke(app, ["test-embedded", str(path)])
    searched = runner.invoke(app, ["oracle", str(path), "--embedded"])

    assert decided.exit_code == 1
    assert "orphan leaf 99 is not a vertex" in decided.output
    assert searched.exit_code == 1
    assert "orphan leaf 99 is not a vertex" in searched.output
