from __future__ import annotations

import json
from pathlib import Path

import pytest
from coe_rigidity.report import Report, load_payload
from coe_rigidity.trace import TraceLog


@pytest.fixture
def report() -> Report:
    return Report(command="rigidity", payload={"k": 6, "b": [1]}, passed=True, summary=["k = 6"], elapsed_seconds=0.5)


def test_payload_and_metadata_are_separate(report: Report) -> None:
    data = report.to_json()
    assert data["payload"] == {"command": "rigidity", "passed": True, "k": 6, "b": [1]}
    assert data["metadata"] == {"elapsed_seconds": 0.5}
    assert "elapsed" not in report.payload_text()


def test_payload_text_ignores_timing(report: Report) -> None:
    slower = Report(command=report.command, payload=dict(report.payload), passed=True, elapsed_seconds=9.0)
    assert slower.payload_text() == report.payload_text()
    assert slower.dumps() != report.dumps()


def test_dumps_sorts_keys(report: Report) -> None:
    text = report.dumps()
    assert text.endswith("\n")
    assert text.index('"metadata"') < text.index('"payload"')
    assert json.loads(text) == report.to_json()


def test_format_text(report: Report) -> None:
    assert report.format_text() == "=== rigidity: PASS ===\n  k = 6\n  elapsed: 0.500s\n"


def test_write_and_load(report: Report, tmp_path: Path) -> None:
    path = tmp_path / "nested" / "report.json"
    report.write(path)
    assert load_payload(path) == report.to_json()["payload"]

    other = tmp_path / "other.json"
    other.write_text(json.dumps({"k": 6}))
    with pytest.raises(ValueError, match="missing 'payload'"):
        load_payload(other)


class TestTraceLog:
    @pytest.fixture
    def trace(self) -> TraceLog:
        log = TraceLog(subject="rigidity")
        log.ok("witness")
        log.fail("split", "state 3")
        return log

    def test_passed(self, trace: TraceLog) -> None:
        assert not trace.passed
        assert TraceLog().passed

    def test_level_one(self, trace: TraceLog) -> None:
        assert trace.format_line(1) == "[rigidity] witness → split → FAIL"

    def test_level_two(self, trace: TraceLog) -> None:
        assert trace.format_line(2) == "[rigidity] witness → FAIL:split(state 3) → FAIL"

    def test_level_three(self, trace: TraceLog) -> None:
        assert trace.format_line(3) == "[rigidity] ok:witness(ok) FAIL:split(state 3) → FAIL"

    def test_default_prefix(self) -> None:
        log = TraceLog()
        log.ok("center")
        assert log.format_line(1) == "[trace] center → PASS"
