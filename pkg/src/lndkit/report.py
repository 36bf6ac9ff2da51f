"""Named check results with witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List

from .poly import Poly


def jsonable(value: Any, names=("x", "y", "z")):
    """Deterministic JSON-friendly rendering of library values."""
    if isinstance(value, Poly):
        return value.to_str(names[: value.nvars])
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v, names) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v, names) for v in value]
    return str(value)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: Any = None
    expected: Any = None


@dataclass
class VerificationReport:
    instance: str
    checks: List[Check] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add(self, name: str, passed: bool, value=None, expected=None) -> bool:
        self.checks.append(Check(name, bool(passed), value, expected))
        return bool(passed)

    def expect(self, name: str, value, expected) -> bool:
        return self.add(name, value == expected, value, expected)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self, names=("x", "y", "z")) -> dict:
        out = []
        for c in self.checks:
            item = {"name": c.name, "pass": c.passed, "value": jsonable(c.value, names)}
            if c.expected is not None:
                item["expected"] = jsonable(c.expected, names)
            out.append(item)
        return {"instance": self.instance, "pass": self.passed, "checks": out, "notes": list(self.notes)}
