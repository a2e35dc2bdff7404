# app/services/oracle_service.py
# ---------------------------------------------------------------------
# Exhaustive verifier for the OrP/AmP symmetry relations:
# - Enumerates every window over {1..alphabet}^m (lexicographic)
# - Batch-encodes each universe once per (transform, kind, policy)
#   through the library kernel
# - Recomputes the expected side with its own plain-Python encoder
#   (fresh sort, fresh rank counting), never with the code under test
# - Negative results are registered as expected-fail claims
# ---------------------------------------------------------------------

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.config import MAX_ALPHABET, MAX_CATALOG_M, MAX_UNIVERSE
from app.schemas.oracle import ClaimReport
from app.schemas.pattern import Pattern, PatternKind, TiePolicy, runs_are_consecutive
from app.schemas.symmetry import SymmetryKind
from app.schemas.window import Window
from app.services import ordinal_service, symmetry_service
from app.utils.errors import UniverseTooLargeError, UnknownClaimError

logger = logging.getLogger(__name__)

NONE = TiePolicy.OCCURRENCE_ORDER
SMALLEST = TiePolicy.SMALLEST_INDEX
LARGEST = TiePolicy.LARGEST_INDEX
ALL_POLICIES = (NONE, SMALLEST, LARGEST)
EQUAL_SCHEMES = (SMALLEST, LARGEST)

Codes = Tuple[int, ...]


# --- Reference encoder (independent of ordinal_service) ---------------

def reference_amp(values: Sequence[float], policy: TiePolicy) -> Codes:
    out = []
    for p, x in enumerate(values):
        below = sum(1 for v in values if v < x)
        equal = sum(1 for v in values if v == x)
        equal_before = sum(1 for v in values[:p] if v == x)
        if policy is SMALLEST:
            out.append(below + 1)
        elif policy is LARGEST:
            out.append(below + equal)
        else:
            out.append(below + equal_before + 1)
    return tuple(out)


def reference_orp(values: Sequence[float], policy: TiePolicy) -> Codes:
    arranged = sorted(range(len(values)), key=lambda p: (values[p], p))
    out = []
    for p in arranged:
        group = [q for q, v in enumerate(values) if v == values[p]]
        if policy is SMALLEST:
            out.append(min(group) + 1)
        elif policy is LARGEST:
            out.append(max(group) + 1)
        else:
            out.append(p + 1)
    return tuple(out)


def _reference(values, kind: PatternKind, policy: TiePolicy) -> Codes:
    if kind is PatternKind.ORP:
        return reference_orp(values, policy)
    return reference_amp(values, policy)


def weak_orderings(m: int) -> List[List[Tuple[int, ...]]]:
    """All ordered set partitions of positions {1..m}, lowest block first."""

    def _split(remaining: Tuple[int, ...]):
        if not remaining:
            yield []
            return
        for size in range(1, len(remaining) + 1):
            for block in itertools.combinations(remaining, size):
                rest = tuple(x for x in remaining if x not in block)
                for tail in _split(rest):
                    yield [block] + tail

    return list(_split(tuple(range(1, m + 1))))


def weak_ordering_labels(blocks: List[Tuple[int, ...]], m: int, policy: TiePolicy) -> Codes:
    """AmP labels of a weak ordering under an equal-value scheme."""
    labels = [0] * m
    placed = 0
    for block in blocks:
        label = placed + 1 if policy is SMALLEST else placed + len(block)
        for position in block:
            labels[position - 1] = label
        placed += len(block)
    return tuple(labels)


# --- Universes ----------------------------------------------------------

def _check_universe(m: int, alphabet_size: int) -> None:
    if m < 1 or alphabet_size < 1:
        raise UniverseTooLargeError(f"m and alphabet size must be >= 1, got m={m}, alphabet={alphabet_size}")
    if m > MAX_CATALOG_M or alphabet_size > MAX_ALPHABET or alphabet_size ** m > MAX_UNIVERSE:
        raise UniverseTooLargeError(
            f"{alphabet_size}^{m} windows exceed the limits (m <= {MAX_CATALOG_M}, "
            f"alphabet <= {MAX_ALPHABET}, at most {MAX_UNIVERSE} windows)"
        )


def enumerate_windows(m: int, alphabet_size: int) -> List[Window]:
    _check_universe(m, alphabet_size)
    return [ordinal_service.window(row) for row in itertools.product(range(1, alphabet_size + 1), repeat=m)]


_TRANSFORMS: Dict[str, Optional[SymmetryKind]] = {
    "id": None,
    "time": SymmetryKind.TIME_REVERSAL,
    "amplitude": SymmetryKind.AMPLITUDE_REFLECTION,
    "central": SymmetryKind.CENTRAL,
}


class Universe:
    """All windows of one (m, alphabet) with cached encodings."""

    def __init__(self, m: int, alphabet_size: int):
        self.m = m
        self.alphabet_size = alphabet_size
        self.windows = enumerate_windows(m, alphabet_size)
        self.values = [w.values for w in self.windows]
        self._matrices: Dict[str, np.ndarray] = {"id": np.array(self.values, dtype=float)}
        self._codes: Dict[tuple, List[Codes]] = {}
        self._refs: Dict[tuple, List[Codes]] = {}
        self.tie_free = [len(set(v)) == m for v in self.values]

    def __len__(self) -> int:
        return len(self.windows)

    def matrix(self, name: str) -> np.ndarray:
        if name not in self._matrices:
            if name == "negate":
                self._matrices[name] = -self._matrices["id"]
            else:
                s = _TRANSFORMS[name]
                moved = [symmetry_service.transform(w, s).values for w in self.windows]
                self._matrices[name] = np.array(moved, dtype=float)
        return self._matrices[name]

    def codes(self, name: str, kind: PatternKind, policy: TiePolicy) -> List[Codes]:
        """Library encodings of the (transformed) universe."""
        key = (name, kind, policy)
        if key not in self._codes:
            encoded = ordinal_service.encode_windows(self.matrix(name), kind, policy)
            self._codes[key] = [tuple(row) for row in encoded.tolist()]
        return self._codes[key]

    def ref(self, name: str, kind: PatternKind, policy: TiePolicy) -> List[Codes]:
        """Reference encodings of the (transformed) universe."""
        key = (name, kind, policy)
        if key not in self._refs:
            self._refs[key] = [_reference(tuple(row), kind, policy) for row in self.matrix(name).tolist()]
        return self._refs[key]


@lru_cache(maxsize=32)
def universe(m: int, alphabet_size: int) -> Universe:
    u = Universe(m, alphabet_size)
    logger.info(f"universe m={m} over {{1..{alphabet_size}}}: {len(u)} windows")
    return u


# --- Claim predicates --------------------------------------------------
# Each predicate answers "does the claim hold on window i".

def _time_symmetry(policy: TiePolicy):
    def holds(u: Universe, i: int) -> bool:
        return u.codes("time", PatternKind.AMP, policy)[i] == u.ref("id", PatternKind.AMP, policy)[i][::-1]
    return holds


def _amplitude_symmetry(policy: TiePolicy):
    def holds(u: Universe, i: int) -> bool:
        expected = u.ref("id", PatternKind.ORP, policy)[i][::-1]
        return (
            u.codes("amplitude", PatternKind.ORP, policy)[i] == expected
            and u.codes("negate", PatternKind.ORP, policy)[i] == expected
        )
    return holds


def _orp_time_symmetry(u: Universe, i: int) -> bool:
    return all(
        u.codes("time", PatternKind.ORP, policy)[i] == u.ref("id", PatternKind.ORP, policy)[i][::-1]
        for policy in ALL_POLICIES
    )


def _self_symmetric_palindrome(u: Universe, i: int) -> bool:
    if not symmetry_service.is_self_symmetric(u.windows[i], SymmetryKind.TIME_REVERSAL):
        return True
    for policy in EQUAL_SCHEMES:
        observed = u.codes("id", PatternKind.AMP, policy)[i]
        if observed != observed[::-1] or u.ref("id", PatternKind.AMP, policy)[i] != observed:
            return False
    return True


def _central_closure(u: Universe, i: int) -> bool:
    for policy in ALL_POLICIES:
        if u.ref("id", PatternKind.ORP, policy)[i] != u.ref("id", PatternKind.AMP, policy)[i]:
            continue
        if u.codes("central", PatternKind.ORP, policy)[i] != u.codes("central", PatternKind.AMP, policy)[i]:
            return False
    return True


def _monotone_identity(u: Universe, i: int) -> bool:
    v = u.values[i]
    m = u.m
    steps = list(zip(v, v[1:]))
    ascending = tuple(range(1, m + 1))
    if all(a < b for a, b in steps):
        expected = {policy: ascending for policy in ALL_POLICIES}
    elif all(a > b for a, b in steps):
        expected = {policy: ascending[::-1] for policy in ALL_POLICIES}
    elif all(a == b for a, b in steps):
        expected = {NONE: ascending, SMALLEST: (1,) * m, LARGEST: (m,) * m}
    else:
        return True
    return all(
        u.codes("id", PatternKind.ORP, policy)[i] == expected[policy]
        and u.codes("id", PatternKind.AMP, policy)[i] == expected[policy]
        for policy in ALL_POLICIES
    )


def _orp_tie_adjacency(u: Universe, i: int) -> bool:
    return all(runs_are_consecutive(u.codes("id", PatternKind.ORP, policy)[i]) for policy in EQUAL_SCHEMES)


def _invert(codes: Codes) -> Codes:
    inv = [0] * len(codes)
    for slot, index in enumerate(codes, start=1):
        inv[index - 1] = slot
    return tuple(inv)


def _tiefree_inverse(u: Universe, i: int) -> bool:
    if not u.tie_free[i]:
        return True
    return all(
        u.codes("id", PatternKind.AMP, policy)[i] == _invert(u.ref("id", PatternKind.ORP, policy)[i])
        for policy in ALL_POLICIES
    )


def _tiefree_involution(u: Universe, i: int) -> bool:
    if not u.tie_free[i]:
        return True
    observed = u.codes("id", PatternKind.ORP, NONE)[i]
    involution = all(observed[observed[j] - 1] == j + 1 for j in range(u.m))
    same = u.ref("id", PatternKind.ORP, NONE)[i] == u.ref("id", PatternKind.AMP, NONE)[i]
    return involution == same


_COUNTERPARTS = (
    (PatternKind.AMP, SymmetryKind.TIME_REVERSAL, "time"),
    (PatternKind.ORP, SymmetryKind.AMPLITUDE_REFLECTION, "amplitude"),
    (PatternKind.AMP, SymmetryKind.CENTRAL, "central"),
    (PatternKind.ORP, SymmetryKind.CENTRAL, "central"),
)


def _counterpart_consistency(u: Universe, i: int) -> bool:
    for policy in ALL_POLICIES:
        if policy is NONE and not u.tie_free[i]:
            continue
        for kind, s, name in _COUNTERPARTS:
            source = Pattern(kind=kind, indexes=u.codes("id", kind, policy)[i], policy=policy)
            mapped = symmetry_service.pattern_counterpart(source, s)
            if mapped.indexes != u.ref(name, kind, mapped.policy)[i]:
                return False
    return True


@lru_cache(maxsize=None)
def _weak_label_sets(m: int) -> Dict[TiePolicy, frozenset]:
    blocks = weak_orderings(m)
    return {policy: frozenset(weak_ordering_labels(b, m, policy) for b in blocks) for policy in EQUAL_SCHEMES}


def _catalog_counts(u: Universe, i: int) -> bool:
    labels = _weak_label_sets(u.m)
    return all(u.codes("id", PatternKind.AMP, policy)[i] in labels[policy] for policy in EQUAL_SCHEMES)


def _catalog_counts_extra(u: Universe) -> List[Window]:
    """Weak orderings missing from the enumerated catalogs, as rank-vector windows."""
    missing = []
    for policy, labels in _weak_label_sets(u.m).items():
        catalog = {p.indexes for p in symmetry_service.enumerate_patterns(u.m, PatternKind.AMP, policy).patterns}
        if len(catalog) != len(labels):
            logger.warning(f"catalog m={u.m} {policy.label}: {len(catalog)} patterns, {len(labels)} weak orderings")
        missing.extend(ordinal_service.window(lab) for lab in sorted(labels - catalog))
    return missing


@lru_cache(maxsize=None)
def _catalog_sets(m: int) -> Dict[tuple, frozenset]:
    return {
        (kind, policy): frozenset(p.indexes for p in symmetry_service.enumerate_patterns(m, kind, policy).patterns)
        for kind in PatternKind
        for policy in ALL_POLICIES
    }


def _alphabet_sufficiency(u: Universe, i: int) -> bool:
    catalogs = _catalog_sets(u.m)
    return all(u.codes("id", kind, policy)[i] in catalogs[(kind, policy)] for kind, policy in catalogs)


# --- Registry ----------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    claim_id: str
    statement: str
    holds: Callable[[Universe, int], bool]
    expect_violations: bool = False
    extra: Optional[Callable[[Universe], List[Window]]] = None


CLAIMS: Dict[str, Claim] = {c.claim_id: c for c in (
    Claim("amp-time-symmetry-smallest",
          "AmP(reverse w) = reverse(AmP(w)) under SmallestIndex",
          _time_symmetry(SMALLEST)),
    Claim("amp-time-symmetry-largest",
          "AmP(reverse w) = reverse(AmP(w)) under LargestIndex",
          _time_symmetry(LARGEST)),
    Claim("amp-time-symmetry-none",
          "AmP(reverse w) = reverse(AmP(w)) under occurrence order (fails on ties)",
          _time_symmetry(NONE), expect_violations=True),
    Claim("orp-amplitude-symmetry-smallest",
          "OrP(reflect w) = reverse(OrP(w)) under SmallestIndex, same policy on both sides",
          _amplitude_symmetry(SMALLEST)),
    Claim("orp-amplitude-symmetry-largest",
          "OrP(reflect w) = reverse(OrP(w)) under LargestIndex, same policy on both sides",
          _amplitude_symmetry(LARGEST)),
    Claim("orp-amplitude-symmetry-none",
          "OrP(reflect w) = reverse(OrP(w)) under occurrence order (fails on ties)",
          _amplitude_symmetry(NONE), expect_violations=True),
    Claim("orp-time-asymmetry",
          "OrP(reverse w) = reverse(OrP(w)) under every policy (expected to fail)",
          _orp_time_symmetry, expect_violations=True),
    Claim("self-symmetric-palindrome",
          "palindromic w has a palindromic equal-scheme AmP",
          _self_symmetric_palindrome),
    Claim("same-orp-amp-central-closure",
          "OrP(w) = AmP(w) implies OrP = AmP for the central image of w",
          _central_closure),
    Claim("monotone-equal-identity",
          "all-up, all-down and all-equal windows have OrP = AmP",
          _monotone_identity),
    Claim("orp-tie-adjacency",
          "equal indexes of an equal-scheme OrP are consecutive",
          _orp_tie_adjacency),
    Claim("tiefree-inverse",
          "AmP = inverse(OrP) on tie-free windows",
          _tiefree_inverse),
    Claim("tiefree-involution",
          "on tie-free windows OrP = AmP iff the permutation is an involution",
          _tiefree_involution),
    Claim("pattern-counterpart-consistency",
          "pattern-level counterparts match encoding the transformed window",
          _counterpart_consistency),
    Claim("catalog-counts",
          "equal-scheme AmP catalogs are exactly the weak orderings (ordered Bell numbers)",
          _catalog_counts, extra=_catalog_counts_extra),
    Claim("enumeration-alphabet-sufficiency",
          "every pattern over {1..alphabet} already occurs over {1..m}",
          _alphabet_sufficiency),
)}

ALIASES = {"orp-amp-inverse-tiefree": "tiefree-inverse"}


def registered_claims() -> List[str]:
    return list(CLAIMS)


def _lookup(claim_id: str) -> Claim:
    claim = CLAIMS.get(ALIASES.get(claim_id, claim_id))
    if claim is None:
        raise UnknownClaimError(f"unknown claim {claim_id!r}; registered: {', '.join(CLAIMS)}")
    return claim


def check_claim(claim_id: str, m: int, alphabet_size: Optional[int] = None) -> ClaimReport:
    claim = _lookup(claim_id)
    alphabet_size = m + 1 if alphabet_size is None else alphabet_size
    u = universe(m, alphabet_size)

    violations = [u.windows[i] for i in range(len(u)) if not claim.holds(u, i)]
    if claim.extra is not None:
        violations.extend(claim.extra(u))
    unique = {w.values: w for w in violations}
    violations = [unique[k] for k in sorted(unique)]

    report = ClaimReport(
        claim_id=claim.claim_id,
        statement=claim.statement,
        universe=f"m={m} over {{1..{alphabet_size}}}",
        m=m,
        alphabet_size=alphabet_size,
        checked=len(u),
        violations=violations,
        verdict="fail" if violations else "pass",
        expect_violations=claim.expect_violations,
    )
    logger.info(f"{claim.claim_id} [{report.universe}]: {len(violations)} violations, confirmed={report.confirmed}")
    return report


def check_all(m: int, alphabet_sizes: Optional[Iterable[int]] = None) -> List[ClaimReport]:
    """Every registered claim at alphabet m + 1 and at alphabet m (sufficiency)."""
    sizes = list(alphabet_sizes) if alphabet_sizes is not None else [m + 1, m]
    return [check_claim(claim_id, m, size) for claim_id in CLAIMS for size in sizes]
