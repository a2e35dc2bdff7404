# app/services/ordinal_service.py
# ---------------------------------------------------------------------
# OrP / AmP encoding with exact equal-value handling:
# - One vectorised kernel (encode_windows) over an (N, m) matrix;
#   single-window operations are the N = 1 case
# - Stable ascending arrangement, ties kept in occurrence order
# - Tie rewriting: each equal-value group reports its smallest or
#   largest original index (OrP) / rank (AmP)
# ---------------------------------------------------------------------

import logging
from collections import Counter
from typing import Iterable, Optional, Sequence

import numpy as np

from app.schemas.pattern import Pattern, PatternKind, TiePolicy
from app.schemas.window import RankedWindow, Window
from app.utils.errors import EmptyWindowError, NonFiniteValueError, NotInvertibleError

logger = logging.getLogger(__name__)


def window(values: Iterable[float], source_index: Optional[int] = None, delay: Optional[int] = None) -> Window:
    return Window(values=tuple(float(v) for v in values), source_index=source_index, delay=delay)


def _as_matrix(values) -> np.ndarray:
    x = np.asarray(values, dtype=float)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    if x.ndim != 2:
        raise ValueError(f"expected an (N, m) matrix, got shape {x.shape}")
    if x.shape[1] == 0:
        raise EmptyWindowError("windows need at least one value")
    if not np.isfinite(x).all():
        row, col = np.argwhere(~np.isfinite(x))[0]
        raise NonFiniteValueError(f"non-finite value {x[row, col]!r} in window {row + 1}, position {col + 1}")
    return x


def _arrangement(x: np.ndarray):
    """Zero-based stable order plus the first/last slot of each slot's tie group."""
    n, m = x.shape
    order = np.argsort(x, axis=1, kind="stable")
    ascending = np.take_along_axis(x, order, axis=1)
    slots = np.broadcast_to(np.arange(m), (n, m))

    starts = np.ones((n, m), dtype=bool)
    starts[:, 1:] = ascending[:, 1:] != ascending[:, :-1]
    ends = np.ones((n, m), dtype=bool)
    ends[:, :-1] = starts[:, 1:]

    group_first = np.maximum.accumulate(np.where(starts, slots, 0), axis=1)
    group_last = np.minimum.accumulate(np.where(ends, slots, m - 1)[:, ::-1], axis=1)[:, ::-1]
    return order, slots, group_first, group_last


def encode_windows(values, kind: PatternKind, policy: TiePolicy) -> np.ndarray:
    """
    Encode every row of an (N, m) matrix.
    Returns an (N, m) int matrix of one-based indexes.
    """
    x = _as_matrix(values)
    order, slots, group_first, group_last = _arrangement(x)

    if kind is PatternKind.ORP:
        if policy is TiePolicy.SMALLEST_INDEX:
            # Positions inside a group are ascending, so the group's first slot
            # holds its smallest original index.
            return np.take_along_axis(order, group_first, axis=1) + 1
        if policy is TiePolicy.LARGEST_INDEX:
            return np.take_along_axis(order, group_last, axis=1) + 1
        return order + 1

    if policy is TiePolicy.SMALLEST_INDEX:
        slot_rank = group_first
    elif policy is TiePolicy.LARGEST_INDEX:
        slot_rank = group_last
    else:
        slot_rank = slots
    slot_of_position = np.empty_like(order)
    np.put_along_axis(slot_of_position, order, slots, axis=1)
    return np.take_along_axis(slot_rank, slot_of_position, axis=1) + 1


def patterns_from_matrix(codes: np.ndarray, kind: PatternKind, policy: TiePolicy) -> list[Pattern]:
    """Wrap kernel output rows; rows come from encode_windows and are valid by construction."""
    return [
        Pattern.model_construct(kind=kind, indexes=tuple(row), policy=policy)
        for row in codes.tolist()
    ]


def rank_with_ties(w: Window) -> RankedWindow:
    x = _as_matrix(w.values)
    order, _, group_first, _ = _arrangement(x)
    order_1 = (order[0] + 1).tolist()
    ranks = encode_windows(x, PatternKind.AMP, TiePolicy.OCCURRENCE_ORDER)[0].tolist()

    groups = []
    for slot, position in enumerate(order_1):
        if slot == 0 or group_first[0, slot] == slot:
            groups.append([])
        groups[-1].append(position)
    return RankedWindow(
        order=tuple(order_1),
        ranks=tuple(ranks),
        groups=tuple(tuple(g) for g in groups),
    )


def _encode_one(w: Window, kind: PatternKind, policy: TiePolicy) -> Pattern:
    codes = encode_windows(w.values, kind, policy)
    return Pattern(kind=kind, indexes=tuple(codes[0].tolist()), policy=policy)


def orp(w: Window, policy: TiePolicy = TiePolicy.SMALLEST_INDEX) -> Pattern:
    return _encode_one(w, PatternKind.ORP, policy)


def amp(w: Window, policy: TiePolicy = TiePolicy.SMALLEST_INDEX) -> Pattern:
    return _encode_one(w, PatternKind.AMP, policy)


def has_ties(w: Window) -> bool:
    return len(set(w.values)) != len(w.values)


def inverse(p: Pattern) -> Pattern:
    """Inverse permutation with the kind flipped (OrP <-> AmP)."""
    if p.has_repeats:
        raise NotInvertibleError(f"{p.key} has repeated indexes and is not a permutation")
    inv = [0] * p.m
    for slot, index in enumerate(p.indexes, start=1):
        inv[index - 1] = slot
    return Pattern(kind=p.kind.flipped, indexes=tuple(inv), policy=p.policy)


def is_valid_pattern(indexes: Sequence[int], m: int, kind: PatternKind, policy: TiePolicy) -> bool:
    """True iff some window of length m encodes to exactly these indexes."""
    try:
        idx = [int(i) for i in indexes]
    except (TypeError, ValueError):
        return False
    if m < 1 or len(idx) != m or any(i < 1 or i > m for i in idx):
        return False

    if policy is TiePolicy.OCCURRENCE_ORDER:
        return sorted(idx) == list(range(1, m + 1))

    if kind is PatternKind.AMP:
        # The labels must be a rank assignment: every member of a tie block
        # carries the block's first (or last) rank.
        ranked = sorted(idx)
        counts = Counter(ranked)
        if policy is TiePolicy.SMALLEST_INDEX:
            return all(ranked[k] == ranked.index(ranked[k]) + 1 for k in range(m))
        return all(ranked[k] == ranked.index(ranked[k]) + counts[ranked[k]] for k in range(m))

    return _orp_groups_realizable(idx, m, policy)


def _orp_groups_realizable(idx: list[int], m: int, policy: TiePolicy) -> bool:
    runs = []
    for i in idx:
        if runs and runs[-1][0] == i:
            runs[-1][1] += 1
        else:
            runs.append([i, 1])
    labels = [label for label, _ in runs]
    if len(set(labels)) != len(labels):
        return False

    # Each run labelled v needs (size - 1) further positions, all above v for
    # SmallestIndex (below v for LargestIndex). Those sets are nested, so the
    # Hall condition on every threshold decides feasibility.
    free = sorted(set(range(1, m + 1)) - set(labels))
    if policy is TiePolicy.SMALLEST_INDEX:
        for label in labels:
            needed = sum(size - 1 for v, size in runs if v >= label)
            available = sum(1 for f in free if f > label)
            if needed > available:
                return False
    else:
        for label in labels:
            needed = sum(size - 1 for v, size in runs if v <= label)
            available = sum(1 for f in free if f < label)
            if needed > available:
                return False
    return sum(size - 1 for _, size in runs) == len(free)
