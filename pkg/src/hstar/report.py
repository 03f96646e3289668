"""Pass/fail ledger shared by every verification routine."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass(frozen=True)
class Check:
    name: str
    theorem: str
    status: str
    residual: float | None = None
    note: str = ""

    @classmethod
    def bound(cls, name: str, theorem: str, residual: float, tol: float, note: str = "") -> "Check":
        """Pass iff ``residual <= tol``."""
        residual = float(residual)
        return cls(name, theorem, PASS if residual <= tol else FAIL, residual, note)

    @classmethod
    def truth(cls, name: str, theorem: str, ok: bool, note: str = "", residual: float | None = None) -> "Check":
        return cls(name, theorem, PASS if ok else FAIL, residual, note)

    @classmethod
    def skip(cls, name: str, theorem: str, note: str) -> "Check":
        return cls(name, theorem, SKIPPED, None, note)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "theorem": self.theorem,
            "status": self.status,
            "residual": self.residual,
            "note": self.note,
        }


@dataclass
class VerificationReport:
    tolerance: float
    entries: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> None:
        self.entries.append(check)

    def extend(self, checks: Iterable[Check]) -> None:
        self.entries.extend(checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.entries if c.status == FAIL]

    @property
    def status(self) -> str:
        return FAIL if self.failures else PASS

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        counts = {s: sum(c.status == s for c in self.entries) for s in (PASS, FAIL, SKIPPED)}
        return {
            "status": self.status,
            "tolerance": self.tolerance,
            "counts": counts,
            "entries": [c.to_dict() for c in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = []
        for c in self.entries:
            res = "" if c.residual is None else f"  residual={c.residual:.3e}"
            note = f"  ({c.note})" if c.note else ""
            lines.append(f"[{c.status.upper():7}] {c.name} :: {c.theorem}{res}{note}")
        lines.append(f"overall: {self.status.upper()} (tol={self.tolerance:g}, {len(self.entries)} checks)")
        return "\n".join(lines)
