"""A small pass/fail report shared by the verification functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Named boolean checks plus free-form details.

    A report is truthy iff every check passed.
    """

    claim: str
    checks: list[tuple[str, bool, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def need(self, name: str, ok: bool, detail: Any = None) -> bool:
        self.checks.append((name, bool(ok), detail))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[tuple[str, Any]]:
        return [(name, detail) for name, ok, detail in self.checks if not ok]

    def merge(self, other: Report, prefix: str = "") -> None:
        for name, ok, detail in other.checks:
            self.checks.append((prefix + name, ok, detail))

    def summary(self) -> str:
        bad = self.failures()
        head = f"{self.claim}: {'pass' if self.ok else 'FAIL'} ({len(self.checks)} checks)"
        if bad:
            head += "; failed: " + ", ".join(name for name, _ in bad[:5])
        return head

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "ok": self.ok,
            "checks": [{"name": n, "ok": ok, "detail": _jsonable(d)} for n, ok, d in self.checks],
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return repr(x)
