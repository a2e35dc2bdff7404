# app/services/analysis_service.py
# ---------------------------------------------------------------------
# Series -> windows -> patterns -> distribution -> statistics:
# - Delay embedding with stride 1
# - Batch encoding of all windows in one kernel call
# - Permutation entropy normalised by the realisable catalog size
# - Reversal asymmetry on the time axis (AmP) and amplitude axis (OrP)
# ---------------------------------------------------------------------

import logging
from collections import Counter
from typing import Iterable, List, Optional, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from app.schemas.analysis import AsymmetryPair, EmbeddingParams, PatternDistribution, TieStatistics
from app.schemas.pattern import Pattern, PatternKind, TiePolicy
from app.schemas.window import Window
from app.services import ordinal_service, symmetry_service
from app.utils.errors import (
    EmptyInputError,
    InvalidParameterError,
    MixedPatternSpacesError,
    NonFiniteValueError,
    SeriesTooShortError,
    UnsupportedPatternSpaceError,
)

logger = logging.getLogger(__name__)


def _as_series(series) -> np.ndarray:
    x = np.asarray(series, dtype=float).ravel()
    if not np.isfinite(x).all():
        bad = int(np.argmax(~np.isfinite(x)))
        raise NonFiniteValueError(f"non-finite sample {x[bad]!r} at position {bad + 1}")
    return x


def embedding_matrix(series, params: EmbeddingParams) -> np.ndarray:
    """(N, m) matrix; row i holds x(i), x(i + tau), ..., x(i + (m - 1) tau)."""
    x = _as_series(series)
    if x.size < params.span:
        raise SeriesTooShortError(x.size, params.m, params.tau)
    return sliding_window_view(x, params.span)[:, ::params.tau]


def embed(series, params: EmbeddingParams) -> List[Window]:
    rows = embedding_matrix(series, params)
    return [
        Window.model_construct(values=tuple(row), source_index=i, delay=params.tau)
        for i, row in enumerate(rows.tolist(), start=1)
    ]


def encode_series(series, params: EmbeddingParams, kind: PatternKind, policy: TiePolicy) -> List[Pattern]:
    rows = embedding_matrix(series, params)
    codes = ordinal_service.encode_windows(rows, kind, policy)
    logger.info(f"encoded {len(codes)} windows (m={params.m}, tau={params.tau}, {kind.value}/{policy.label})")
    return ordinal_service.patterns_from_matrix(codes, kind, policy)


def distribution(patterns: Iterable[Pattern], params: Optional[EmbeddingParams] = None) -> PatternDistribution:
    counts = Counter(patterns)
    if not counts:
        raise EmptyInputError("cannot build a distribution from an empty pattern sequence")
    spaces = {(p.m, p.kind, p.policy) for p in counts}
    if len(spaces) > 1:
        raise MixedPatternSpacesError(f"patterns span {len(spaces)} different (m, kind, policy) spaces")
    m, kind, policy = spaces.pop()
    return PatternDistribution(
        counts=dict(counts),
        total=sum(counts.values()),
        m=m,
        kind=kind,
        policy=policy,
        params=params,
    )


def series_distribution(series, params: EmbeddingParams, kind: PatternKind, policy: TiePolicy) -> PatternDistribution:
    return distribution(encode_series(series, params, kind, policy), params=params)


def permutation_entropy(d: PatternDistribution, normalize: bool = False) -> float:
    """Shannon entropy (natural log) of the pattern distribution."""
    counts = np.fromiter(d.counts.values(), dtype=float)
    p = counts[counts > 0] / d.total
    h = float(np.sum(p * np.log(1.0 / p)))
    if not normalize:
        return h
    size = symmetry_service.catalog_size(d.m, d.kind, d.policy)
    if size <= 1:
        return 0.0
    return h / float(np.log(size))


def _reversal_pairs(d: PatternDistribution) -> List[AsymmetryPair]:
    pairs = []
    seen = set()
    for p in d.counts:
        if p in seen:
            continue
        q = symmetry_service.reverse_pattern(p)
        seen.update((p, q))
        if q == p:
            continue
        first, second = sorted((p, q), key=lambda x: x.key)
        a, b = d.probability(first), d.probability(second)
        pairs.append(AsymmetryPair(pattern=first.key, reversed=second.key, p=a, p_reversed=b, contribution=abs(a - b)))
    pairs.sort(key=lambda r: (-r.contribution, r.pattern))
    return pairs


def _require_space(d: PatternDistribution, kind: PatternKind, axis: str) -> None:
    if d.kind is not kind:
        raise UnsupportedPatternSpaceError(
            f"{axis} asymmetry needs {kind.value} patterns; reversed {d.kind.value}s do not "
            f"stand for {axis}-symmetric windows"
        )
    if not d.policy.is_equal_scheme:
        raise UnsupportedPatternSpaceError(
            f"{axis} asymmetry needs an equal-value scheme (smallest or largest); "
            "occurrence-order patterns of symmetric windows are not symmetric"
        )


def asymmetry_breakdown(d: PatternDistribution) -> List[AsymmetryPair]:
    """Per-pair terms |p(π) - p(reverse π)| over non-palindromic pairs."""
    return _reversal_pairs(d)


def irreversibility_index(d: PatternDistribution) -> float:
    """
    Half the L1 distance between the AmP distribution and its time-reversed
    image, in [0, 1]. Library-defined statistic; palindromic AmPs add nothing.
    """
    _require_space(d, PatternKind.AMP, "time")
    return float(sum(pair.contribution for pair in _reversal_pairs(d)))


def amplitude_asymmetry_index(d: PatternDistribution) -> float:
    """Same statistic on OrPs, where reversal stands for amplitude reflection."""
    _require_space(d, PatternKind.ORP, "amplitude")
    return float(sum(pair.contribution for pair in _reversal_pairs(d)))


def quantize(series, levels: int) -> np.ndarray:
    """Map each sample to the midpoint of its uniform bin over [min, max]."""
    if levels < 2:
        raise InvalidParameterError(f"quantize needs at least 2 levels, got {levels}")
    x = _as_series(series)
    if x.size == 0:
        return x.copy()
    lo, hi = float(x.min()), float(x.max())
    if hi == lo:
        return x.copy()
    # work on halves so hi - lo cannot overflow; halving is exact above the subnormals
    half_width = (hi / 2 - lo / 2) / levels
    bins = np.clip(np.floor((x / 2 - lo / 2) / half_width), 0, levels - 1)
    return 2 * (lo / 2 + (bins + 0.5) * half_width)


def tie_statistics(series, params: EmbeddingParams) -> TieStatistics:
    x = _as_series(series)
    rows = embedding_matrix(x, params)
    neighbour = float(np.mean(x[1:] == x[:-1])) if x.size > 1 else 0.0
    ordered = np.sort(rows, axis=1)
    tied = (ordered[:, 1:] == ordered[:, :-1]).any(axis=1) if params.m > 1 else np.zeros(len(rows), dtype=bool)
    return TieStatistics(neighbour_equal_rate=neighbour, tied_window_rate=float(np.mean(tied)))


def reversed_series(series: Sequence[float]) -> np.ndarray:
    return _as_series(series)[::-1].copy()
