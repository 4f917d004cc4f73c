from pathlib import Path

import pytest

from src.errors import RejectedInput
from src.report_exporter import ReportExporter
from src.selftest import COLUMNS, SUITES, all_passed, failures, render_summary, run_selftest


def quiet(line: str):
    pass


@pytest.fixture(scope="module")
def summary():
    return run_selftest(trials=3, seed=11, samples=2, log=quiet)


def test_every_suite_passes(summary):
    assert list(summary.columns) == COLUMNS
    assert all_passed(summary), failures(summary).to_dict(orient="records")
    assert set(summary["module"]) >= {"semiring", "constructible", "radon", "models", "geometry"}
    assert {"planar sum and product", "axioms C(line)", "projection formula finite"} <= set(summary["suite"])


def test_render_is_deterministic(summary):
    again = run_selftest(trials=3, seed=11, samples=2, log=quiet)
    assert render_summary(summary) == render_summary(again)
    assert "seconds" not in render_summary(summary)
    assert render_summary(summary).endswith(f"{len(summary)}/{len(summary)} suites passed")


def test_zero_trials_is_vacuous():
    lines = []
    summary = run_selftest(trials=0, log=lines.append)
    assert (summary["status"] == "VACUOUS").all()
    assert len(summary) == len(SUITES)
    assert all_passed(summary)
    assert any("vacuously" in line for line in lines)


def test_injected_fault_fails():
    summary = run_selftest(trials=1, seed=2, samples=1, inject_fault=True, log=quiet)
    bad = failures(summary)
    assert list(bad["suite"]) == ["injected fault: literal pairs as a semiring"]
    assert "zero_absorbs" in bad.iloc[0]["detail"]


def test_negative_trials_are_rejected():
    with pytest.raises(RejectedInput):
        run_selftest(trials=-1, log=quiet)


def test_exporter_writes_every_format(summary, tmp_path):
    lines = []
    paths = ReportExporter(reports_dir=tmp_path, log=lines.append).export_all(
        summary, {"trials": 3, "seed": 11})
    assert set(paths) == {"json", "csv", "text"}
    for path in paths.values():
        assert Path(path).parent == tmp_path and Path(path).exists()
    text = open(paths["text"], encoding="utf-8").read()
    assert f"Suites passed: {len(summary)}/{len(summary)}" in text
    assert lines[0].strip() == "📤 Exporting reports..."
