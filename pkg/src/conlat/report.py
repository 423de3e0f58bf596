"""Verdicts and verification reports shared by the checkers and the CLI."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

STATUSES = ("pass", "fail", "inapplicable", "inconclusive")


@dataclass
class Verdict:
    """A boolean answer that carries a witness when it is false (or true)."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return bool(self.ok)


@dataclass
class Check:
    name: str
    status: str
    witness: Any = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    def to_json(self) -> dict:
        return {"check": self.name, "status": self.status, "witness": jsonable(self.witness)}


@dataclass
class Report:
    command: str
    checks: list[Check] = field(default_factory=list)
    timing: float = 0.0
    result: dict | None = None
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, name: str, ok, witness=None) -> Check:
        """Record a pass/fail check; ``ok`` may also be a status string."""
        status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        c = Check(name, status, witness)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness))

    def finish(self) -> "Report":
        self.timing = time.perf_counter() - self._t0
        return self

    @property
    def passed(self) -> bool:
        return all(c.status in ("pass", "inapplicable") for c in self.checks)

    def status_of(self, name: str) -> str:
        for c in self.checks:
            if c.name == name:
                return c.status
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def exit_code(self) -> int:
        statuses = {c.status for c in self.checks}
        if "fail" in statuses:
            return 1
        if "inconclusive" in statuses:
            return 3
        return 0

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "checks": [c.to_json() for c in self.checks],
            "timing": round(self.timing, 6),
            **(jsonable(self.result) if self.result else {}),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, indent=2)

    def render(self) -> str:
        lines = [f"{self.command}"]
        for c in self.checks:
            w = "" if c.witness is None else f"  [{_short(c.witness)}]"
            lines.append(f"  {c.status.upper():12s} {c.name}{w}")
        lines.append(f"  ({len(self.checks)} checks, {self.timing:.3f}s)")
        return "\n".join(lines)


def _short(w, limit: int = 160) -> str:
    s = json.dumps(jsonable(w), ensure_ascii=False)
    return s if len(s) <= limit else s[: limit - 3] + "..."


def jsonable(x):
    """Best-effort conversion of witnesses to JSON-compatible values."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    if hasattr(x, "to_json"):
        return x.to_json()
    if hasattr(x, "item"):
        return x.item()
    return repr(x)
