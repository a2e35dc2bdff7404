# app/schemas/symmetry.py
from enum import Enum
from typing import FrozenSet, List

from pydantic import BaseModel, ConfigDict

from app.schemas.pattern import Pattern, PatternKind, TiePolicy


class SymmetryKind(str, Enum):
    TIME_REVERSAL = "time"
    AMPLITUDE_REFLECTION = "amplitude"
    CENTRAL = "central"


class PatternCatalog(BaseModel):
    """Every pattern realisable by some window of length m."""

    model_config = ConfigDict(frozen=True)

    m: int
    kind: PatternKind
    policy: TiePolicy
    patterns: FrozenSet[Pattern]

    @property
    def size(self) -> int:
        return len(self.patterns)

    def keys(self) -> List[str]:
        """Canonical strings, lexicographically sorted."""
        return sorted(p.key for p in self.patterns)

    def __contains__(self, p: Pattern) -> bool:
        return p in self.patterns


class SymmetryRow(BaseModel):
    """One weak ordering of the catalog table with its OrP/AmP and partners."""

    vector: str
    orp: str
    amp: str
    orp_equals_amp: bool
    time_partner: str
    amplitude_partner: str
    time_self_symmetric: bool
