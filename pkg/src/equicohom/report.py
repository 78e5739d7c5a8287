"""A small record type shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "checked": self.checked, "failures": list(self.failures)}
        if self.details:
            out["details"] = self.details
        return out

    def __bool__(self) -> bool:
        return self.ok
