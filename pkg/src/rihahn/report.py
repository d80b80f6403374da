"""Structured results for identity verifiers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .kernel import format_rational


def render(value):
    """JSON-friendly rendering: rationals as canonical strings.

    Plain ints (indices, counts, N) stay ints; every Fraction, including
    integral ones, becomes a "p/q" or "p" string.
    """
    if isinstance(value, (bool, int)) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    if isinstance(value, dict):
        return {k: render(v) for k, v in value.items()}
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return str(value)


def _as_value(v):
    return Fraction(v) if isinstance(v, int) and not isinstance(v, bool) else v


@dataclass
class Report:
    """Outcome of an exact identity check; truthy iff nothing failed."""

    identity: str
    params: object
    failures: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def expect(self, lhs, rhs, **where) -> bool:
        """Record one comparison; returns whether it held."""
        self.checked += 1
        if lhs == rhs:
            return True
        self.failures.append({**where, "lhs": _as_value(lhs), "rhs": _as_value(rhs)})
        return False

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failures.extend({"identity": other.identity, **f}
                             for f in other.failures)
        return self

    def to_json(self) -> dict:
        return {"identity": self.identity, "params": render(self.params),
                "status": "pass" if self.ok else "fail",
                "checked": self.checked,
                "failures": render(self.failures)}
