# app/services/symmetry_service.py
# ---------------------------------------------------------------------
# Time reversal, amplitude reflection and their composition:
# - Window-level transforms
# - Pattern-level counterparts where one exists (AmP under time
#   reversal, OrP under amplitude reflection, either under the
#   central composition)
# - Exhaustive catalogs of realisable patterns for small m
# ---------------------------------------------------------------------

import itertools
import logging
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, isfinite

import numpy as np

from app.config import MAX_CATALOG_M
from app.schemas.pattern import Pattern, PatternKind, TiePolicy
from app.schemas.symmetry import PatternCatalog, SymmetryKind, SymmetryRow
from app.schemas.window import Window
from app.services import ordinal_service
from app.utils.errors import DimensionTooLargeError, InvalidParameterError, UnsupportedCombinationError
from app.utils.formatting import format_values

logger = logging.getLogger(__name__)


# --- Window transforms -------------------------------------------------

def time_reverse(w: Window) -> Window:
    return Window(values=w.values[::-1], source_index=w.source_index, delay=w.delay)


def _mid_range_image(values: tuple):
    """(max + min) - v for every v, or None when float rounding or overflow would bite."""
    hi, lo = max(values), min(values)
    level = hi + lo
    if not isfinite(level) or Fraction(level) != Fraction(hi) + Fraction(lo):
        return None
    image = tuple(level - v for v in values)
    exact = all(
        isfinite(r) and Fraction(r) == Fraction(level) - Fraction(v)
        for v, r in zip(values, image)
    )
    return image if exact else None


def amplitude_reflect(w: Window) -> Window:
    """
    Reflect about the mid-range level: v -> (max + min) - v.
    Falls back to v -> -v when the mid-range image is not exact in floats;
    either map reverses the order exactly and is its own inverse.
    """
    image = _mid_range_image(w.values)
    if image is None:
        logger.debug(f"window {w.source_index}: mid-range reflection inexact, negating instead")
        image = tuple(0.0 - v for v in w.values)
    return Window(values=image, source_index=w.source_index, delay=w.delay)



def central(w: Window) -> Window:
    return amplitude_reflect(time_reverse(w))


def transform(w: Window, s: SymmetryKind) -> Window:
    if s is SymmetryKind.TIME_REVERSAL:
        return time_reverse(w)
    if s is SymmetryKind.AMPLITUDE_REFLECTION:
        return amplitude_reflect(w)
    return central(w)


def is_self_symmetric(w: Window, s: SymmetryKind) -> bool:
    return transform(w, s).values == w.values


# --- Pattern-level maps ------------------------------------------------

def reverse_pattern(p: Pattern) -> Pattern:
    return Pattern(kind=p.kind, indexes=p.indexes[::-1], policy=p.policy)


def _complement_amp(p: Pattern) -> tuple:
    """AmP labels of the amplitude-reflected window, positions unchanged."""
    m = p.m
    counts = Counter(p.indexes)
    if p.policy is TiePolicy.SMALLEST_INDEX:
        # block of first rank r and size c -> first rank m + 1 - (r + c - 1)
        return tuple(m + 2 - r - counts[r] for r in p.indexes)
    if p.policy is TiePolicy.LARGEST_INDEX:
        return tuple(m - r + counts[r] for r in p.indexes)
    return tuple(m + 1 - r for r in p.indexes)


def pattern_counterpart(p: Pattern, s: SymmetryKind) -> Pattern:
    """
    Pattern of the transformed window, computed from the pattern alone.
    - (TimeReversal, AmP) and (AmplitudeReflection, OrP): reversal, same policy
    - Central on AmP: reversed and rank-complemented, same policy
    - Central on OrP: reversed and index-complemented; SmallestIndex and
      LargestIndex swap, since a smallest-index OrP does not say which other
      positions share a group
    Under occurrence order the maps are exact for tie-free windows only.
    """
    if s is SymmetryKind.TIME_REVERSAL:
        if p.kind is not PatternKind.AMP:
            raise UnsupportedCombinationError(
                "OrPs of time-reversed windows are not reversed OrPs; encode the reversed window instead"
            )
        return reverse_pattern(p)

    if s is SymmetryKind.AMPLITUDE_REFLECTION:
        if p.kind is not PatternKind.ORP:
            raise UnsupportedCombinationError(
                "AmPs of amplitude-reflected windows are not reversed AmPs; encode the reflected window instead"
            )
        return reverse_pattern(p)

    if p.kind is PatternKind.AMP:
        return Pattern(kind=p.kind, indexes=_complement_amp(p)[::-1], policy=p.policy)
    m = p.m
    flipped = tuple(m + 1 - i for i in p.indexes[::-1])
    return Pattern(kind=p.kind, indexes=flipped, policy=p.policy.flipped)


# --- Catalogs -----------------------------------------------------------

def ordered_bell(m: int) -> int:
    """Number of weak orderings of m elements (1, 1, 3, 13, 75, 541, ...)."""
    counts = [1]
    for n in range(1, m + 1):
        counts.append(sum(comb(n, k) * counts[n - k] for k in range(1, n + 1)))
    return counts[m]


def _check_dimension(m: int) -> None:
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    if m > MAX_CATALOG_M:
        raise DimensionTooLargeError(f"m={m} exceeds the enumeration limit of {MAX_CATALOG_M}")


def alphabet_matrix(m: int, alphabet_size: int) -> np.ndarray:
    """All alphabet_size**m windows over {1..alphabet_size}, lexicographic rows."""
    return np.array(list(itertools.product(range(1, alphabet_size + 1), repeat=m)), dtype=float)


@lru_cache(maxsize=None)
def enumerate_patterns(m: int, kind: PatternKind, policy: TiePolicy) -> PatternCatalog:
    """
    Exact set of realisable patterns. Windows over {1..m} suffice: m distinct
    levels give every strict order and repeated levels every tie structure.
    """
    _check_dimension(m)
    codes = ordinal_service.encode_windows(alphabet_matrix(m, m), kind, policy)
    unique = np.unique(codes, axis=0)
    patterns = frozenset(ordinal_service.patterns_from_matrix(unique, kind, policy))
    logger.info(f"catalog m={m} {kind.value}/{policy.label}: {len(patterns)} patterns")
    return PatternCatalog(m=m, kind=kind, policy=policy, patterns=patterns)


def catalog_size(m: int, kind: PatternKind, policy: TiePolicy) -> int:
    if m <= MAX_CATALOG_M:
        return enumerate_patterns(m, kind, policy).size
    if policy is TiePolicy.OCCURRENCE_ORDER:
        return factorial(m)
    if kind is PatternKind.AMP:
        return ordered_bell(m)
    raise DimensionTooLargeError(f"no closed form for the {kind.value}/{policy.label} catalog at m={m}")


def dense_windows(m: int) -> list[Window]:
    """One representative window per weak ordering: values cover {1..k} exactly."""
    out = []
    for values in itertools.product(range(1, m + 1), repeat=m):
        if set(values) == set(range(1, max(values) + 1)):
            out.append(ordinal_service.window(values))
    return out


def symmetry_table(m: int, policy: TiePolicy = TiePolicy.SMALLEST_INDEX) -> list[SymmetryRow]:
    _check_dimension(m)
    rows = []
    for w in dense_windows(m):
        p_orp = ordinal_service.orp(w, policy)
        p_amp = ordinal_service.amp(w, policy)
        rows.append(SymmetryRow(
            vector=format_values(w.values),
            orp=p_orp.key,
            amp=p_amp.key,
            orp_equals_amp=p_orp.indexes == p_amp.indexes,
            time_partner=format_values(time_reverse(w).values),
            amplitude_partner=format_values(amplitude_reflect(w).values),
            time_self_symmetric=is_self_symmetric(w, SymmetryKind.TIME_REVERSAL),
        ))
    return rows
