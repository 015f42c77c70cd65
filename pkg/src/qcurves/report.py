"""Check results shared by the verification routines and the CLI report file."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

PASS = "pass"
FAIL = "fail"
UNTESTABLE = "untestable"


@dataclass(frozen=True)
class CheckReport:
    name: str
    status: str
    value: Optional[float]
    tolerance: Optional[float]
    flagged: List[float] = field(default_factory=list)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        value = self.value
        if value is not None and not math.isfinite(value):
            value = None
        return {
            "name": self.name,
            "status": self.status,
            "value": value,
            "tolerance": self.tolerance,
            "flagged": [float(x) for x in self.flagged],
            "detail": self.detail,
        }


def measured(name, value, tolerance, flagged=(), detail="") -> CheckReport:
    """PASS when value <= tolerance, FAIL otherwise."""
    status = PASS if value <= tolerance else FAIL
    return CheckReport(name, status, float(value), float(tolerance), list(flagged), detail)


def untestable(name, detail, tolerance=None, flagged=()) -> CheckReport:
    return CheckReport(name, UNTESTABLE, None, tolerance, list(flagged), detail)
