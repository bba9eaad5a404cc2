"""Check/Report containers shared by the verification suites, service, and CLI."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class Check:
    name: str
    law: str  # short human-readable name of the identity or fact being checked
    expected: str
    got: str
    ok: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "law": self.law,
            "expected": self.expected,
            "got": self.got,
            "ok": self.ok,
        }


@dataclass
class Report:
    command: str
    checks: list[Check] = field(default_factory=list)
    inconclusive: bool = False
    started: float = field(default_factory=time.monotonic)
    seconds: float = 0.0

    def add(self, name: str, law: str, expected, got, ok: bool | None = None) -> bool:
        if ok is None:
            ok = expected == got
        self.checks.append(Check(name, law, str(expected), str(got), bool(ok)))
        return bool(ok)

    def merge(self, other: "Report") -> None:
        self.checks.extend(other.checks)
        self.inconclusive = self.inconclusive or other.inconclusive

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks) and not self.inconclusive

    @property
    def status(self) -> str:
        if not all(c.ok for c in self.checks):
            return "fail"
        return "inconclusive" if self.inconclusive else "pass"

    def finish(self) -> "Report":
        self.seconds = round(time.monotonic() - self.started, 6)
        return self

    def first_failure(self) -> Check | None:
        for c in self.checks:
            if not c.ok:
                return c
        return None

    def to_json(self) -> dict:
        self.finish()
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "status": self.status,
            "checks": [c.to_json() for c in self.checks],
            "seconds": self.seconds,
        }
