from .window import Window, RankedWindow
from .pattern import Pattern, PatternKind, TiePolicy
from .symmetry import PatternCatalog, SymmetryKind, SymmetryRow
from .analysis import AsymmetryPair, EmbeddingParams, PatternDistribution, TieStatistics
from .oracle import ClaimReport
from .run_config import RunConfig
