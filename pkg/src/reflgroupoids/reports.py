"""Pass/fail records shared by the validation routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of a validation.

    ``reason`` is a short code naming the first failed condition (``None``
    when valid); ``detail`` is free text; ``witness`` carries whatever
    certificate the check produced (a reduction order, a failing tuple, ...).
    """

    valid: bool
    reason: str | None = None
    detail: str = ""
    witness: Any = None

    def __bool__(self) -> bool:
        return self.valid

    @classmethod
    def ok(cls, witness: Any = None, detail: str = "") -> "ValidityReport":
        return cls(True, None, detail, witness)

    @classmethod
    def fail(cls, reason: str, detail: str = "", witness: Any = None) -> "ValidityReport":
        return cls(False, reason, detail, witness)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"valid": self.valid}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CheckReport:
    """A named collection of checks, as emitted by the batch verifiers."""

    name: str
    checks: list[dict[str, Any]] = field(default_factory=list)

    def add(self, check: str, passed: bool, **info: Any) -> None:
        self.checks.append({"check": check, "pass": bool(passed), **info})

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def failures(self) -> list[dict[str, Any]]:
        return [c for c in self.checks if not c["pass"]]

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "pass": self.passed, "checks": self.checks}
