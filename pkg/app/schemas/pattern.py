# app/schemas/pattern.py
from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from app.utils.errors import ParseError
from app.utils.formatting import format_indexes


class PatternKind(str, Enum):
    ORP = "OrP"
    AMP = "AmP"

    @property
    def flipped(self) -> "PatternKind":
        return PatternKind.AMP if self is PatternKind.ORP else PatternKind.ORP


class TiePolicy(str, Enum):
    """How indexes inside a group of equal values are written."""

    OCCURRENCE_ORDER = "none"
    SMALLEST_INDEX = "smallest"
    LARGEST_INDEX = "largest"

    @property
    def label(self) -> str:
        return _POLICY_LABELS[self]

    @property
    def is_equal_scheme(self) -> bool:
        return self is not TiePolicy.OCCURRENCE_ORDER

    @property
    def flipped(self) -> "TiePolicy":
        """SmallestIndex <-> LargestIndex; occurrence order maps to itself."""
        if self is TiePolicy.SMALLEST_INDEX:
            return TiePolicy.LARGEST_INDEX
        if self is TiePolicy.LARGEST_INDEX:
            return TiePolicy.SMALLEST_INDEX
        return self


_POLICY_LABELS = {
    TiePolicy.OCCURRENCE_ORDER: "NonE",
    TiePolicy.SMALLEST_INDEX: "SmallestIndex",
    TiePolicy.LARGEST_INDEX: "LargestIndex",
}


class Pattern(BaseModel):
    """An OrP or AmP: m one-based indexes, written under a tie policy."""

    model_config = ConfigDict(frozen=True)

    kind: PatternKind
    indexes: Tuple[int, ...]
    policy: TiePolicy = TiePolicy.SMALLEST_INDEX

    @model_validator(mode="after")
    def _check_indexes(self) -> "Pattern":
        m = len(self.indexes)
        if m == 0:
            raise ValueError("a pattern needs at least one index")
        if any(i < 1 or i > m for i in self.indexes):
            raise ValueError(f"indexes must lie in [1, {m}], got {self.indexes}")
        if self.policy is TiePolicy.OCCURRENCE_ORDER:
            if len(set(self.indexes)) != m:
                raise ValueError(f"occurrence-order patterns are permutations, got {self.indexes}")
        elif self.kind is PatternKind.ORP and not runs_are_consecutive(self.indexes):
            raise ValueError(f"equal indexes of an OrP must be consecutive, got {self.indexes}")
        return self

    @property
    def m(self) -> int:
        return len(self.indexes)

    @property
    def key(self) -> str:
        """Canonical text form, e.g. 'AmP:3,1,5,1,4'."""
        return f"{self.kind.value}:{format_indexes(self.indexes)}"

    @property
    def has_repeats(self) -> bool:
        return len(set(self.indexes)) != len(self.indexes)

    def __str__(self) -> str:
        return self.key

    @classmethod
    def parse(cls, text: str, policy: TiePolicy, line: int = 0) -> "Pattern":
        prefix, sep, body = text.strip().partition(":")
        if not sep:
            raise ParseError(line, f"missing kind prefix in pattern {text!r}")
        try:
            kind = PatternKind(prefix)
            indexes = tuple(int(tok) for tok in body.split(","))
        except ValueError:
            raise ParseError(line, f"malformed pattern {text!r}")
        try:
            return cls(kind=kind, indexes=indexes, policy=policy)
        except ValueError as e:
            raise ParseError(line, f"invalid pattern {text!r}: {e}")


def runs_are_consecutive(indexes: Tuple[int, ...]) -> bool:
    """True when every repeated value forms a single contiguous run."""
    seen = set()
    previous = None
    for i in indexes:
        if i != previous:
            if i in seen:
                return False
            seen.add(i)
        previous = i
    return True
