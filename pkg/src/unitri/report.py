"""Pass/fail trees shared by the validators, oracles and certifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    name: str
    passed: bool = True
    details: list[str] = field(default_factory=list)
    children: list[Report] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def fail(self, msg: str) -> Report:
        self.passed = False
        self.details.append(msg)
        return self

    def note(self, msg: str) -> Report:
        self.details.append(msg)
        return self

    def check(self, ok: bool, msg: str) -> bool:
        """Record ``msg`` as a failure unless ``ok``."""
        if not ok:
            self.fail(msg)
        return ok

    def add(self, child: Report) -> Report:
        self.children.append(child)
        if not child.passed:
            self.passed = False
        return child

    def failures(self) -> list[str]:
        out = [f"{self.name}: {d}" for d in self.details] if not self.passed else []
        for c in self.children:
            out.extend(f"{self.name}/{line}" for line in c.failures())
        return out

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.details:
            out["details"] = list(self.details)
        if self.data:
            out["data"] = self.data
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        return out

    def lines(self, indent: int = 0) -> list[str]:
        mark = "PASS" if self.passed else "FAIL"
        out = [f"{'  ' * indent}[{mark}] {self.name}"]
        for d in self.details:
            out.append(f"{'  ' * (indent + 1)}- {d}")
        for c in self.children:
            out.extend(c.lines(indent + 1))
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())
