"""Step tracing for verification pipelines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class TraceEntry:
    """One pipeline stage outcome."""

    stage: str
    passed: bool
    detail: str = ""


@dataclass
class TraceLog:
    """Collects stage outcomes during one pipeline run."""

    entries: list[TraceEntry] = field(default_factory=list)
    subject: str = ""

    def ok(self, stage: str, detail: str = "ok") -> None:
        """Record a stage that passed."""
        self.entries.append(TraceEntry(stage=stage, passed=True, detail=detail))

    def fail(self, stage: str, detail: str = "") -> None:
        """Record a stage that failed."""
        self.entries.append(TraceEntry(stage=stage, passed=False, detail=detail))

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def format_line(self, level: int) -> str:
        """Format the trace as a single line."""
        prefix = f"[{self.subject}]" if self.subject else "[trace]"
        verdict = "PASS" if self.passed else "FAIL"

        if level <= 1:
            chain = " → ".join(e.stage for e in self.entries)
            return f"{prefix} {chain} → {verdict}"

        if level == 2:
            parts = [e.stage if e.passed else f"FAIL:{e.stage}({e.detail})" for e in self.entries]
            return f"{prefix} {' → '.join(parts)} → {verdict}"

        # Level 3: everything
        parts = [f"{'ok' if e.passed else 'FAIL'}:{e.stage}({e.detail})" for e in self.entries]
        return f"{prefix} {' '.join(parts)} → {verdict}"
