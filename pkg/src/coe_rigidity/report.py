"""Report envelopes for CLI runs.

The payload is a pure function of the inputs; wall-clock timing lives in a
separate metadata block so payloads compare byte for byte across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any


@dataclass
class Report:
    """One command's outcome.

    Attributes:
        command: CLI subcommand that produced the report.
        payload: Deterministic results.
        passed: Whether every requested verification passed.
        summary: Human-readable lines for text output.
        elapsed_seconds: Wall-clock time of the run.
    """

    command: str
    payload: dict[str, Any]
    passed: bool
    summary: list[str] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def to_json(self) -> dict[str, Any]:
        return {
            "payload": {"command": self.command, "passed": self.passed, **self.payload},
            "metadata": {"elapsed_seconds": round(self.elapsed_seconds, 6)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def payload_text(self) -> str:
        """The payload alone, canonically serialized."""
        return json.dumps(self.to_json()["payload"], indent=2, sort_keys=True) + "\n"

    def format_text(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        lines = [f"=== {self.command}: {verdict} ==="]
        lines.extend(f"  {line}" for line in self.summary)
        lines.append(f"  elapsed: {self.elapsed_seconds:.3f}s")
        return "\n".join(lines) + "\n"

    def write(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps())


def load_payload(path: Path) -> dict[str, Any]:
    """Payload section of a stored report."""
    data = json.loads(path.read_text())
    if "payload" not in data:
        raise ValueError(f"{path} is not a report: missing 'payload'")
    return data["payload"]
