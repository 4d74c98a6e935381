"""Shared result types and exceptions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class StructureError(ValueError):
    """An operation was called on input that violates its precondition."""


class SearchBoundError(RuntimeError):
    """An exhaustive search would exceed its configured size bound."""


@dataclass
class Report:
    """Itemized findings of a check. Truthy iff nothing was violated."""

    name: str
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, msg: str) -> None:
        self.violations.append(msg)

    def __str__(self) -> str:
        head = f"{self.name}: {'valid' if self.ok else 'INVALID'}"
        lines = [head] + [f"  - {v}" for v in self.violations]
        lines += [f"  * {n}" for n in self.notes]
        return "\n".join(lines)


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer together with the witness that decided it."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds
