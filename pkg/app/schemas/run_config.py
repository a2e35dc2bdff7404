# app/schemas/run_config.py
from typing import Literal, Optional

from pydantic import BaseModel, model_validator

from app.schemas.pattern import PatternKind, TiePolicy
from app.utils.errors import UsageError

Command = Literal["encode", "hist", "entropy", "irrev", "enumerate", "verify", "demo"]

SERIES_COMMANDS = ("encode", "hist", "entropy", "irrev")


class RunConfig(BaseModel):
    command: Command
    input: Optional[str] = None  # path, or "-" for stdin
    m: Optional[int] = None
    tau: int = 1
    kind: PatternKind = PatternKind.AMP
    policy: TiePolicy = TiePolicy.SMALLEST_INDEX
    normalize: bool = False
    output_format: Literal["json", "csv"] = "json"
    quantize: Optional[int] = None
    column: Optional[str] = None
    alphabet: Optional[int] = None
    axis: Literal["time", "amplitude"] = "time"

    @model_validator(mode="after")
    def _check_combination(self) -> "RunConfig":
        if self.m is not None and self.m < 1:
            raise UsageError(f"--m must be >= 1, got {self.m}")
        if self.tau < 1:
            raise UsageError(f"--tau must be >= 1, got {self.tau}")
        if self.quantize is not None and self.quantize < 2:
            raise UsageError(f"--quantize needs at least 2 levels, got {self.quantize}")
        if self.alphabet is not None and self.alphabet < 1:
            raise UsageError(f"--alphabet must be >= 1, got {self.alphabet}")

        if self.command == "irrev":
            wanted = PatternKind.AMP if self.axis == "time" else PatternKind.ORP
            if self.kind is not wanted:
                raise UsageError(
                    f"--kind {self.kind.value.lower()} is unsupported for {self.axis} irreversibility: "
                    f"only reversed {wanted.value}s stand for {self.axis}-symmetric windows"
                )
            if not self.policy.is_equal_scheme:
                raise UsageError(
                    "--policy none is unsupported for irreversibility: occurrence-order patterns "
                    "of symmetric windows are not symmetric (use smallest or largest)"
                )
        if self.command not in SERIES_COMMANDS:
            if self.input is not None:
                raise UsageError(f"{self.command} takes no input file (got {self.input!r})")
            if self.column is not None or self.quantize is not None:
                raise UsageError(f"--column/--quantize do not apply to {self.command}")
        if self.command == "verify" and self.m is not None and self.m < 2:
            raise UsageError(f"verify needs --m >= 2: at m={self.m} the expected-fail claims have no witnesses")
        if self.alphabet is not None and self.command != "verify":
            raise UsageError("--alphabet only applies to verify")
        return self
