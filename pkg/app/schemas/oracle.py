# app/schemas/oracle.py
from typing import List, Literal

from pydantic import BaseModel, ConfigDict, model_validator

from app.schemas.window import Window


class ClaimReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    claim_id: str
    statement: str
    universe: str  # e.g. "m=3 over {1..4}"
    m: int
    alphabet_size: int
    checked: int
    violations: List[Window]
    verdict: Literal["pass", "fail"]
    expect_violations: bool = False

    @model_validator(mode="after")
    def _verdict_matches(self) -> "ClaimReport":
        if (self.verdict == "pass") != (not self.violations):
            raise ValueError("verdict must be 'pass' exactly when no violation was found")
        return self

    @property
    def confirmed(self) -> bool:
        """Expected-fail claims are confirmed by finding violations."""
        return bool(self.violations) if self.expect_violations else not self.violations
