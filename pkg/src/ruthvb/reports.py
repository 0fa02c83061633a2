"""Validation reports: a verdict plus a list of located counterexamples."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckEntry:
    check: str
    location: str
    expected: str
    actual: str

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "location": self.location,
            "expected": self.expected,
            "actual": self.actual,
        }


@dataclass
class Report:
    """Outcome of running one validator or one harness pipeline.

    An empty entry list means every checked instance passed.  A failing
    report always carries at least one entry with a concrete location.
    """

    subject: str
    entries: list[CheckEntry] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.entries

    def add(self, check: str, location: str, expected: str, actual: str) -> None:
        self.entries.append(CheckEntry(check, location, expected, actual))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for e in other.entries:
            loc = f"{prefix}{e.location}" if prefix else e.location
            self.entries.append(CheckEntry(e.check, loc, e.expected, e.actual))

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "verdict": "pass" if self.passed else "fail",
            "entries": [e.to_dict() for e in self.entries],
            "seconds": round(self.seconds, 6),
        }

    def to_text(self, max_entries: int = 20) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'} {self.subject}"
                 f" ({len(self.entries)} violation(s), {self.seconds:.3f}s)"]
        for e in self.entries[:max_entries]:
            lines.append(f"  [{e.check}] at {e.location}: expected {e.expected}, got {e.actual}")
        if len(self.entries) > max_entries:
            lines.append(f"  ... and {len(self.entries) - max_entries} more")
        return "\n".join(lines)
