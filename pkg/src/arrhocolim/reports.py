from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .complex_core import HomologyReport


@dataclass
class CheckReport:
    """Outcome of one homology comparison, serializable as report JSON."""

    check: str
    passed: bool
    lhs: HomologyReport | None = None
    rhs: HomologyReport | None = None
    per_degree: list[dict[str, Any]] = field(default_factory=list)
    detail: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict[str, Any]:
        out = {
            "check": self.check,
            "pass": self.passed,
            "lhs": self.lhs.to_json() if self.lhs is not None else None,
            "rhs": self.rhs.to_json() if self.rhs is not None else None,
            "per_degree": self.per_degree,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


def compare_degreewise(check: str, lhs: HomologyReport, rhs: HomologyReport, **detail) -> CheckReport:
    top = max(len(lhs.betti), len(rhs.betti))
    per_degree = [
        {
            "degree": d,
            "equal": lhs.degree_equal(rhs, d),
            "lhs_betti": lhs.betti_at(d),
            "rhs_betti": rhs.betti_at(d),
            "lhs_torsion": list(lhs.torsion_at(d)),
            "rhs_torsion": list(rhs.torsion_at(d)),
        }
        for d in range(top)
    ]
    return CheckReport(check, lhs == rhs, lhs, rhs, per_degree, dict(detail))
