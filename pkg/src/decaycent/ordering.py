"""Pairwise orderings on distance profiles and maximizer-set computation.

Two vector orders drive everything:

* lexicographic: decided at the first differing index; total on equal-length
  vectors, never ``incomparable``;
* unsorted dominance: all prefix sums weakly larger with at least one strict;
  a strict partial order, so ``incomparable`` is a first-class outcome.

Profile dominance (on distance counts) or reversed farness-vector dominance
each force the decay-centrality order at every value of the decay parameter.
The half-range checkers certify the order on (0, 1/2] from a degree surplus
and on [1/2, 1) from a farness deficit.  A checker that does not fire is
silent, not evidence that the curves cross; callers must not fall back to
numeric evaluation implicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .centrality import (
    TIE_PREFILTER,
    DeltaGrid,
    dc_difference_sign,
    decay_matrix,
)
from .graph import DistanceProfile, Graph, profile_matrix


class Relation(str, Enum):
    GREATER = "greater"
    LESS = "less"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class ComparisonVerdict:
    """Outcome of one pairwise comparison.

    ``rule`` names the comparator or sufficient condition that produced the
    verdict; ``detail`` is the witness index (first differing or violating
    position), when one exists.
    """

    relation: Relation
    rule: str
    detail: int | None = None


def _require_same_length(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise ValueError(f"vector lengths differ: {len(a)} vs {len(b)}")


def lex_compare(a: Sequence[int], b: Sequence[int], rule: str = "lex") -> ComparisonVerdict:
    """Lexicographic comparison: decided at the first differing index."""
    _require_same_length(a, b)
    for idx, (x, y) in enumerate(zip(a, b)):
        if x != y:
            rel = Relation.GREATER if x > y else Relation.LESS
            return ComparisonVerdict(relation=rel, rule=rule, detail=idx)
    return ComparisonVerdict(relation=Relation.EQUAL, rule=rule)


def lex_compare_cvec(
    fvec_i: Sequence[int], fvec_j: Sequence[int]
) -> ComparisonVerdict:
    """Lexicographic order of the reciprocal (closeness-side) vectors,
    decided from the farness-side integers without any real division.

    Entry values order as ``1/f`` with the ``f == 0 -> 0`` convention:
    positive entries beat zero beat negative, and within one sign the
    smaller farness entry wins.
    """
    _require_same_length(fvec_i, fvec_j)
    for idx, (fi, fj) in enumerate(zip(fvec_i, fvec_j)):
        if fi == fj:
            continue
        cls_i = (fi > 0) - (fi < 0)
        cls_j = (fj > 0) - (fj < 0)
        if cls_i != cls_j:
            rel = Relation.GREATER if cls_i > cls_j else Relation.LESS
        else:
            rel = Relation.GREATER if fi < fj else Relation.LESS
        return ComparisonVerdict(relation=rel, rule="lex-cvec", detail=idx)
    return ComparisonVerdict(relation=Relation.EQUAL, rule="lex-cvec")


def ud_compare(a: Sequence[int], b: Sequence[int], rule: str = "ud") -> ComparisonVerdict:
    """Unsorted dominance: compare all prefix sums.

    ``greater`` iff every prefix sum of ``a`` is >= the matching prefix sum
    of ``b`` with at least one strict inequality; symmetric for ``less``;
    ``equal`` iff the vectors coincide; otherwise ``incomparable`` (witness:
    the index at which the second direction appears).
    """
    _require_same_length(a, b)
    sa = 0
    sb = 0
    direction = 0
    first_strict: int | None = None
    for idx, (x, y) in enumerate(zip(a, b)):
        sa += x
        sb += y
        if sa == sb:
            continue
        here = 1 if sa > sb else -1
        if direction == 0:
            direction = here
            first_strict = idx
        elif here != direction:
            return ComparisonVerdict(
                relation=Relation.INCOMPARABLE, rule=rule, detail=idx
            )
    if direction == 0:
        return ComparisonVerdict(relation=Relation.EQUAL, rule=rule)
    rel = Relation.GREATER if direction > 0 else Relation.LESS
    return ComparisonVerdict(relation=rel, rule=rule, detail=first_strict)


def check_profile_dominance(
    pi: DistanceProfile | Sequence[int], pj: DistanceProfile | Sequence[int]
) -> ComparisonVerdict:
    """Dominance of distance profiles certifies the decay order for every
    decay parameter in (0, 1); ``incomparable`` means this test is silent."""
    ci = pi.counts if isinstance(pi, DistanceProfile) else tuple(pi)
    cj = pj.counts if isinstance(pj, DistanceProfile) else tuple(pj)
    return ud_compare(ci, cj, rule="profile-dominance")


def check_farness_dominance(
    fvec_i: Sequence[int], fvec_j: Sequence[int]
) -> ComparisonVerdict:
    """Reversed dominance of farness vectors: node ``i`` is greater when
    ``fvec_j`` dominates ``fvec_i`` (lower farness terms mean more
    centrality), again for every decay parameter."""
    # swapped arguments: dominance of j's vector means i wins, and the
    # ud relations then carry over to i-vs-j verbatim
    return ud_compare(fvec_j, fvec_i, rule="farness-dominance")


@dataclass(frozen=True)
class SufficiencyResult:
    """Which sufficient conditions fired for an ordered node pair.

    ``applicable`` is False when the precondition on the leading difference
    fails (the check then says nothing about either node).
    """

    applicable: bool
    satisfied: frozenset[int]
    rule: str

    @property
    def fires(self) -> bool:
        return self.applicable and bool(self.satisfied)


def check_low_delta_conditions(
    pi: DistanceProfile | Sequence[int], pj: DistanceProfile | Sequence[int]
) -> SufficiencyResult:
    """Sufficient conditions for a strict decay-centrality advantage of
    ``i`` over ``j`` on the whole range (0, 1/2].

    Requires a strict degree surplus ``A1 = deg(i) - deg(j) > 0``.  With
    ``A_l`` the per-level profile differences and ``n - 1`` the profile
    length plus one, the four conditions are:

    1. ``2*A1 >= (n-1) - deg(j)``
    2. ``4*A1 + 2*A2 >= (n-1) - (deg(j) + dist2(j))``
    3. ``A1 >= max_l |A_l|   (l >= 2)``
    4. ``A1 >= max_k |A_1 + ... + A_k|   (k = 2 .. n-2)``

    Empty ranges (tiny graphs) make the max zero, so the condition reduces
    to the precondition.
    """
    ci = pi.counts if isinstance(pi, DistanceProfile) else tuple(pi)
    cj = pj.counts if isinstance(pj, DistanceProfile) else tuple(pj)
    _require_same_length(ci, cj)
    rule = "low-delta-conditions"
    diffs = [int(a) - int(b) for a, b in zip(ci, cj)]
    a1 = diffs[0]
    if a1 <= 0:
        return SufficiencyResult(applicable=False, satisfied=frozenset(), rule=rule)
    n = len(ci) + 1
    deg_j = int(cj[0])
    dist2_j = int(cj[1]) if len(cj) >= 2 else 0
    a2 = diffs[1] if len(diffs) >= 2 else 0
    satisfied: set[int] = set()
    if 2 * a1 >= (n - 1) - deg_j:
        satisfied.add(1)
    if 4 * a1 + 2 * a2 >= (n - 1) - (deg_j + dist2_j):
        satisfied.add(2)
    tail_max = max((abs(d) for d in diffs[1:]), default=0)
    if a1 >= tail_max:
        satisfied.add(3)
    prefix_max = 0
    acc = 0
    for k in range(1, n - 1):
        acc += diffs[k - 1]
        if k >= 2:
            prefix_max = max(prefix_max, abs(acc))
    if a1 >= prefix_max:
        satisfied.add(4)
    return SufficiencyResult(applicable=True, satisfied=frozenset(satisfied), rule=rule)


def check_high_delta_conditions(
    fvec_i: Sequence[int], fvec_j: Sequence[int]
) -> SufficiencyResult:
    """Sufficient conditions for a strict decay-centrality advantage of
    ``i`` over ``j`` on the whole range [1/2, 1).

    Requires a strict farness deficit ``B1 = farness(i) - farness(j) < 0``.
    With ``B_l`` the farness-vector differences:

    1. ``|B1| >= max_l |B_l|   (l >= 2)``
    2. ``|B1| >= max_k |B_1 + ... + B_k|   (k = 2 .. n-2)``
    """
    _require_same_length(fvec_i, fvec_j)
    rule = "high-delta-conditions"
    diffs = [int(a) - int(b) for a, b in zip(fvec_i, fvec_j)]
    b1 = diffs[0]
    if b1 >= 0:
        return SufficiencyResult(applicable=False, satisfied=frozenset(), rule=rule)
    n = len(fvec_i) + 1
    satisfied: set[int] = set()
    tail_max = max((abs(d) for d in diffs[1:]), default=0)
    if -b1 >= tail_max:
        satisfied.add(1)
    prefix_max = 0
    acc = 0
    for k in range(1, n - 1):
        acc += diffs[k - 1]
        if k >= 2:
            prefix_max = max(prefix_max, abs(acc))
    if -b1 >= prefix_max:
        satisfied.add(2)
    return SufficiencyResult(applicable=True, satisfied=frozenset(satisfied), rule=rule)


@dataclass(frozen=True)
class MaximizerSets:
    """Argmax node sets: by degree, by closeness (exact farness ties), and
    by decay centrality at each grid point."""

    by_degree: frozenset[int]
    by_closeness: frozenset[int]
    by_decay: tuple[frozenset[int], ...]


def _profile_group_ids(profiles: np.ndarray) -> np.ndarray:
    _, inverse = np.unique(profiles, axis=0, return_inverse=True)
    return inverse.reshape(-1)


def exact_argmax_nodes(
    candidates: Sequence[int],
    profiles: np.ndarray,
    delta: Fraction,
    group_ids: np.ndarray | None = None,
) -> list[int]:
    """Exact decay argmax among candidate nodes at one rational delta.

    Nodes with identical profiles are tied by construction; distinct
    profiles are compared by the exact integer sign of the polynomial
    difference, so a crossing that lands exactly on the grid point yields
    a genuine multi-profile tie.  Returns sorted node ids.
    """
    if group_ids is None:
        group_ids = _profile_group_ids(profiles)
    reps: dict[int, int] = {}
    for node in candidates:
        reps.setdefault(int(group_ids[node]), int(node))
    rep_items = list(reps.items())
    best_groups = [rep_items[0][0]]
    best_row = profiles[rep_items[0][1]]
    for gid, node in rep_items[1:]:
        s = dc_difference_sign(profiles[node], best_row, delta)
        if s > 0:
            best_groups = [gid]
            best_row = profiles[node]
        elif s == 0:
            best_groups.append(gid)
    keep = set(best_groups)
    return sorted(int(v) for v in candidates if int(group_ids[v]) in keep)


def decay_argmax_sets(
    dc: np.ndarray,
    profiles: np.ndarray,
    grid: DeltaGrid,
    group_ids: np.ndarray | None = None,
) -> tuple[frozenset[int], ...]:
    """Decay argmax set at every grid point.

    A float pre-filter (window :data:`TIE_PREFILTER`) collects candidates;
    whenever more than one distinct profile survives it, the winner set is
    confirmed in exact rational arithmetic.
    """
    if group_ids is None:
        group_ids = _profile_group_ids(profiles)
    fracs = grid.fractions()
    out: list[frozenset[int]] = []
    col_max = dc.max(axis=0)
    for g in range(dc.shape[1]):
        col = dc[:, g]
        cand = np.flatnonzero(col >= col_max[g] - TIE_PREFILTER)
        if len(cand) == 1:
            out.append(frozenset((int(cand[0]),)))
            continue
        cand_groups = group_ids[cand]
        if (cand_groups == cand_groups[0]).all():
            out.append(frozenset(int(v) for v in cand))
            continue
        winners = exact_argmax_nodes(cand.tolist(), profiles, fracs[g], group_ids)
        out.append(frozenset(winners))
    return tuple(out)


def int_argmax_set(values: Sequence[int]) -> frozenset[int]:
    """All indices attaining the maximum of an integer sequence."""
    best = max(values)
    return frozenset(i for i, v in enumerate(values) if v == best)


def int_argmin_set(values: Sequence[int]) -> frozenset[int]:
    """All indices attaining the minimum of an integer sequence."""
    best = min(values)
    return frozenset(i for i, v in enumerate(values) if v == best)


def maximizer_sets(g: Graph, grid: DeltaGrid) -> MaximizerSets:
    """Compute all three maximizer families for a connected graph.

    Degree and closeness winners come from exact integer comparisons
    (closeness ties are exact farness ties); the per-delta decay winners use
    the exact-confirmation path of :func:`decay_argmax_sets`.
    """
    profiles = profile_matrix(g)
    if g.n == 1:
        only = frozenset((0,))
        return MaximizerSets(only, only, tuple(only for _ in grid.values))
    degrees = profiles[:, 0].tolist()
    weights = np.arange(1, profiles.shape[1] + 1, dtype=np.int64)
    farness = (profiles @ weights).tolist()
    dc = decay_matrix(profiles, grid)
    return MaximizerSets(
        by_degree=int_argmax_set(degrees),
        by_closeness=int_argmin_set(farness),
        by_decay=decay_argmax_sets(dc, profiles, grid),
    )
