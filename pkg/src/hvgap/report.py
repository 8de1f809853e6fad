"""Machine-readable outcome of a verification check."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
ERROR = "error"


@dataclass
class CheckReport:
    name: str
    status: str = PASS
    cases: int = 0
    counterexample: Any = None
    wall_time_ms: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def fail(self, counterexample) -> "CheckReport":
        # keep the first counterexample only
        if self.status == PASS:
            self.status = FAIL
            self.counterexample = counterexample
        return self

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.cases += other.cases
        if other.status != PASS and self.status == PASS:
            self.status = other.status
            self.counterexample = other.counterexample
        return self

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "cases": self.cases,
            "counterexample": self.counterexample,
        }
        if self.details:
            out["details"] = self.details
        if timings:
            out["wall_time_ms"] = round(self.wall_time_ms, 3)
        return out

    def __str__(self):
        s = f"{self.name}: {self.status} ({self.cases} cases)"
        if self.counterexample is not None:
            s += f" counterexample={self.counterexample}"
        return s


@contextmanager
def timed(report: CheckReport):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.wall_time_ms = (time.perf_counter() - t0) * 1000.0
