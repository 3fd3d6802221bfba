"""Structured check results shared by every verification routine and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import INF, PAdicApprox


def jsonable(value):
    """Convert exact objects into JSON-friendly values (rationals as strings)."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return "inf" if value == INF else value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, PAdicApprox):
        if value.is_exact_zero:
            return {"p": value.p, "value": "0", "exact": True}
        return {
            "p": value.p,
            "valuation": value.valuation,
            "unit": value.unit,
            "precision": value.precision,
            "value": str(value.rational()),
        }
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    return str(value)


@dataclass
class Report:
    """Outcome of one named check."""

    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    precision: int | None = None
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "skip"
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status, "detail": jsonable(self.detail)}
        if self.precision is not None:
            out["certified_precision"] = jsonable(self.precision)
        return out

    def __bool__(self):
        return self.passed


@dataclass
class RunReport:
    """Everything one CLI command produced."""

    command: str
    inputs: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    sign_ledger: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    def add(self, report: Report) -> Report:
        if any(c.name == report.name for c in self.checks):
            raise ValueError(f"duplicate check {report.name!r}")
        self.checks.append(report)
        return report

    @property
    def passed(self) -> bool:
        return all(c.passed or c.skipped for c in self.checks)

    def to_dict(self, with_timing: bool = True) -> dict:
        out = {
            "command": self.command,
            "inputs": jsonable(self.inputs),
            "checks": [c.to_dict() for c in self.checks],
            "sign_ledger": jsonable(self.sign_ledger),
            "passed": self.passed,
        }
        if with_timing:
            out["timing"] = jsonable(self.timing)
        return out

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_dict(with_timing), indent=2, sort_keys=False)

    def table(self) -> str:
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"{'check'.ljust(width)}  status  detail"]
        for c in self.checks:
            brief = ", ".join(f"{k}={jsonable(v)}" for k, v in list(c.detail.items())[:4])
            if len(brief) > 100:
                brief = brief[:97] + "..."
            lines.append(f"{c.name.ljust(width)}  {c.status:6}  {brief}")
        if self.sign_ledger:
            lines.append(f"sign ledger: {jsonable(self.sign_ledger)}")
        return "\n".join(lines)
