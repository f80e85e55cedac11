"""Structured pass/fail records for identity suites."""

from __future__ import annotations

from dataclasses import dataclass, field

from .rational import format_scalar
from .tensor import SymTensor

PASS = "pass"
FAIL = "fail"
REPORTED = "reported"


@dataclass
class IdentityCheck:
    """One verified identity: pass means the residual is exactly zero.

    ``reported`` marks exploratory checks that are recorded but never
    asserted (they do not fail a suite).
    """

    identity: str
    formula: str
    status: str
    residual: str
    seed: int | None = None

    def to_dict(self) -> dict:
        return {"identity": self.identity, "formula": self.formula,
                "status": self.status, "residual": self.residual,
                "seed": self.seed}


@dataclass
class VerificationReport:
    suite: str
    checks: list[IdentityCheck] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)
        self.notes.update(other.notes)

    def to_dict(self) -> dict:
        out = {"suite": self.suite,
               "checks": [c.to_dict() for c in self.checks],
               "all_pass": self.all_pass}
        if self.notes:
            out["notes"] = self.notes
        return out


def residual_magnitude(residual) -> str:
    """Exact string form of a residual's largest component."""
    if isinstance(residual, SymTensor):
        return format_scalar(residual.max_abs())
    return format_scalar(abs(residual))


def check(identity: str, formula: str, residual, seed: int | None = None,
          asserted: bool = True) -> IdentityCheck:
    """Build a check row from a residual (scalar, tensor, or exact max)."""
    magnitude = residual_magnitude(residual)
    if not asserted:
        status = REPORTED
    else:
        status = PASS if magnitude == "0" else FAIL
    return IdentityCheck(identity, formula, status, magnitude, seed)
