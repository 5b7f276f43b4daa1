"""Audit reports shared by the symbolic and numerical checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass(frozen=True)
class AuditReport:
    """Outcome of one identity audit.

    ``passed`` records whether the audit's stated expectation held; a failed
    expectation is a finding to report, never an exception.
    """

    name: str
    mode: str
    lhs: Any
    rhs: Any
    residual_terms: List[str]
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "mode": self.mode,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual_terms": list(self.residual_terms),
            "pass": self.passed,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)
