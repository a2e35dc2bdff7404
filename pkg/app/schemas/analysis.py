# app/schemas/analysis.py
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.schemas.pattern import Pattern, PatternKind, TiePolicy
from app.utils.errors import EmptyInputError, MixedPatternSpacesError


class EmbeddingParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    tau: int = Field(default=1, ge=1)

    @property
    def span(self) -> int:
        """Samples covered by one window."""
        return (self.m - 1) * self.tau + 1

    def window_count(self, length: int) -> int:
        return length - (self.m - 1) * self.tau


class PatternDistribution(BaseModel):
    """Frequency map over one pattern space (m, kind, policy)."""

    counts: Dict[Pattern, int]
    total: int
    m: int
    kind: PatternKind
    policy: TiePolicy
    params: Optional[EmbeddingParams] = None

    @model_validator(mode="after")
    def _check_counts(self) -> "PatternDistribution":
        if self.total < 1 or not self.counts:
            raise EmptyInputError("a distribution needs at least one pattern")
        if sum(self.counts.values()) != self.total:
            raise ValueError(f"counts sum to {sum(self.counts.values())}, total is {self.total}")
        for p in self.counts:
            if (p.m, p.kind, p.policy) != (self.m, self.kind, self.policy):
                raise MixedPatternSpacesError(f"{p.key} ({p.policy.label}) does not belong to this distribution")
        return self

    def probability(self, p: Pattern) -> float:
        return self.counts.get(p, 0) / self.total

    def probabilities(self) -> Dict[Pattern, float]:
        return {p: c / self.total for p, c in self.counts.items()}

    def records(self) -> List[Tuple[str, int, float]]:
        """(pattern key, count, probability), probability desc then key."""
        rows = [(p.key, c, c / self.total) for p, c in self.counts.items()]
        rows.sort(key=lambda r: (-r[1], r[0]))
        return rows

    def merge(self, other: "PatternDistribution") -> "PatternDistribution":
        if (other.m, other.kind, other.policy) != (self.m, self.kind, self.policy):
            raise MixedPatternSpacesError("cannot merge distributions over different pattern spaces")
        counts = dict(self.counts)
        for p, c in other.counts.items():
            counts[p] = counts.get(p, 0) + c
        params = self.params if self.params == other.params else None
        return PatternDistribution(
            counts=counts,
            total=self.total + other.total,
            m=self.m,
            kind=self.kind,
            policy=self.policy,
            params=params,
        )


class TieStatistics(BaseModel):
    neighbour_equal_rate: float  # fraction of consecutive sample pairs that are equal
    tied_window_rate: float  # fraction of windows holding at least one tie


class AsymmetryPair(BaseModel):
    pattern: str
    reversed: str
    p: float
    p_reversed: float
    contribution: float
