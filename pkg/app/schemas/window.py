# app/schemas/window.py
import math
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.utils.errors import EmptyWindowError, NonFiniteValueError
from app.utils.formatting import format_values


class Window(BaseModel):
    """An m-length vector cut from a series, with its delay-embedding provenance."""

    model_config = ConfigDict(frozen=True)

    values: Tuple[float, ...]
    source_index: Optional[int] = None  # one-based start position in the series
    delay: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_values(self) -> "Window":
        if not self.values:
            raise EmptyWindowError("a window needs at least one value")
        for pos, v in enumerate(self.values, start=1):
            if not math.isfinite(v):
                raise NonFiniteValueError(f"non-finite value {v!r} at position {pos}")
        return self

    @property
    def m(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return f"({format_values(self.values)})"


class RankedWindow(BaseModel):
    """Stable ascending arrangement of a window, before any tie rewriting."""

    model_config = ConfigDict(frozen=True)

    order: Tuple[int, ...]  # one-based source positions, ascending by value, ties by occurrence
    ranks: Tuple[int, ...]  # one-based rank of each original position
    groups: Tuple[Tuple[int, ...], ...]  # maximal equal-value blocks, ascending by value
