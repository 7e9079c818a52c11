"""Typed report objects shared by the verification runner, display and exports."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass(slots=True)
class CheckResult:
    """One expected-vs-computed comparison."""

    name: str
    expected: Any
    computed: Any
    match: bool
    detail: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        payload = asdict(self)
        if not self.detail:
            payload.pop("detail")
        return payload


@dataclass(slots=True)
class VerificationReport:
    """Outcome of one verification suite on one group or parameter set."""

    suite: str
    family: dict[str, Any] = field(default_factory=dict)
    cent: dict[str, Any] | None = None
    census: dict[str, Any] | None = None
    graph: dict[str, Any] | None = None
    checks: list[CheckResult] = field(default_factory=list)
    elapsed_ms: dict[str, float] = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return all(check.match for check in self.checks)

    def add(self, name: str, expected: Any, computed: Any, detail: list[str] | None = None) -> CheckResult:
        check = CheckResult(name, expected, computed, expected == computed, list(detail or []))
        self.checks.append(check)
        return check

    def mismatches(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.match]

    def to_dict(self, *, timings: bool = False) -> dict[str, Any]:
        payload: dict[str, Any] = {"suite": self.suite, "family": dict(self.family)}
        for key in ("cent", "census", "graph"):
            value = getattr(self, key)
            if value is not None:
                payload[key] = value
        payload["checks"] = [check.to_dict() for check in self.checks]
        payload["match"] = self.match
        if timings:
            payload["elapsed_ms"] = dict(self.elapsed_ms)
        return payload
