from __future__ import annotations

import json
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class CheckResult(BaseModel):
    id: str = Field(min_length=1)
    description: str
    reference: str = ""
    status: Literal["pass", "fail"]
    witness: Optional[dict[str, Any]] = None
    elapsed_ms: float = 0.0

    @model_validator(mode="after")
    def failure_has_witness(self) -> CheckResult:
        if self.status == "fail" and self.witness is None:
            raise ValueError(f"failed check {self.id} carries no witness")
        return self


class VerificationReport(BaseModel):
    suite: str
    group: str
    normal: str
    field: str
    battery_version: str
    battery: list[str] = Field(default_factory=list)
    skipped: list[str] = Field(default_factory=list)
    checks: list[CheckResult] = Field(default_factory=list)
    passed: int = 0
    failed: int = 0

    @model_validator(mode="after")
    def ids_unique(self) -> VerificationReport:
        ids = [c.id for c in self.checks]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate check ids: {dupes}")
        return self

    @classmethod
    def build(cls, *, checks: list[CheckResult], **header: Any) -> VerificationReport:
        ordered = sorted(checks, key=lambda c: c.id)
        passed = sum(1 for c in ordered if c.status == "pass")
        return cls(checks=ordered, passed=passed, failed=len(ordered) - passed, **header)

    @property
    def all_passed(self) -> bool:
        return self.failed == 0

    def canonical_json(self) -> str:
        """Deterministic JSON without timings."""
        data = self.model_dump(exclude={"checks": {"__all__": {"elapsed_ms"}}})
        return json.dumps(data, sort_keys=True, separators=(",", ":"))
