"""Randomized property checks with independent brute-force oracles.

Each check regenerates its ground truth from first principles (Floyd-
Warshall distances, naive per-pair decay sums, exhaustive prefix scans)
rather than reusing the production code paths it is checking.  Failures
are report content with counterexample dumps, not exceptions, so the CLI
``check`` command can emit a full pass/fail report and exit nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .centrality import (
    DeltaGrid,
    dc_difference_coeffs,
    dc_difference_factored,
    dc_difference_factored_eps,
    dc_difference_sign,
    decay_matrix,
)
from .generation import TrialSeed, sample_connected_gnp
from .graph import Graph, all_profiles, distance_profile, profile_matrix
from .ordering import (
    ComparisonVerdict,
    Relation,
    check_farness_dominance,
    check_high_delta_conditions,
    check_low_delta_conditions,
    check_profile_dominance,
    exact_argmax_nodes,
    lex_compare,
    lex_compare_cvec,
    ud_compare,
)

MAX_REPORTED_FAILURES = 5


@dataclass
class PropertyResult:
    """Outcome of one property over a batch of random instances."""

    name: str
    cases: int
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, **counterexample) -> None:
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(counterexample)
        else:
            self.failures[-1]["suppressed"] = (
                self.failures[-1].get("suppressed", 0) + 1
            )


def sample_graphs(count: int, n_max: int, seed: int, n_min: int = 4) -> list[Graph]:
    """Deterministic batch of small connected graphs with varied size and
    density."""
    probs = (0.25, 0.4, 0.55, 0.7)
    graphs: list[Graph] = []
    sizes = list(range(max(2, n_min), n_max + 1))
    for i in range(count):
        n = sizes[i % len(sizes)]
        p = probs[(i // len(sizes)) % len(probs)]
        g, _ = sample_connected_gnp(n, p, TrialSeed(seed, i), max_rejects=1_000_000)
        graphs.append(g)
    return graphs


def floyd_warshall(g: Graph) -> list[list[float]]:
    """Textbook all-pairs shortest paths; the distance oracle."""
    inf = float("inf")
    n = g.n
    dist = [[inf] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0
    for u, v in g.edges:
        dist[u][v] = 1
        dist[v][u] = 1
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == inf:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def naive_decay(dist_row: Sequence[float], node: int, delta: float) -> float:
    """Per-pair decay sum straight from a distance row."""
    return sum(delta ** d for j, d in enumerate(dist_row) if j != node)


def _edge_dump(g: Graph) -> list[list[int]]:
    return [[u, v] for u, v in g.edges]


def check_bfs_distances(graphs: Sequence[Graph]) -> PropertyResult:
    """BFS profiles match Floyd-Warshall counts; distances are symmetric;
    profile counts sum to n - 1; batch and per-node paths agree."""
    res = PropertyResult(name="bfs-distances", cases=0)
    for g in graphs:
        res.cases += 1
        dist = floyd_warshall(g)
        n = g.n
        sym_ok = all(dist[i][j] == dist[j][i] for i in range(n) for j in range(n))
        if not sym_ok:
            res.record(graph=_edge_dump(g), problem="asymmetric oracle distances")
            continue
        expected = [
            tuple(
                sum(1 for j in range(n) if dist[i][j] == l) for l in range(1, n)
            )
            for i in range(n)
        ]
        per_node = [distance_profile(g, i).counts for i in range(n)]
        batch = [tuple(int(c) for c in row) for row in profile_matrix(g)]
        for i in range(n):
            if per_node[i] != expected[i] or batch[i] != expected[i]:
                res.record(
                    graph=_edge_dump(g),
                    node=i,
                    expected=list(expected[i]),
                    bfs=list(per_node[i]),
                    batch=list(batch[i]),
                )
                break
            if sum(per_node[i]) != n - 1:
                res.record(graph=_edge_dump(g), node=i, problem="profile sum")
                break
    return res


def check_difference_factorizations(
    graphs: Sequence[Graph], grid: DeltaGrid | None = None, tol: float = 1e-10
) -> PropertyResult:
    """Both factored difference forms match the naive per-pair evaluation at
    every grid point, and the coefficient vectors sum to zero exactly."""
    if grid is None:
        grid = DeltaGrid.uniform(99)
    res = PropertyResult(name="difference-factorizations", cases=0)
    for g in graphs:
        dist = floyd_warshall(g)
        profiles = all_profiles(g)
        n = g.n
        for i in range(n):
            for j in range(i + 1, n):
                res.cases += 1
                avec, bvec = dc_difference_coeffs(profiles[i], profiles[j])
                if sum(avec) != 0 or sum(bvec) != 0:
                    res.record(
                        graph=_edge_dump(g), pair=[i, j],
                        problem="coefficients do not sum to zero",
                    )
                    continue
                for delta in grid.values:
                    direct = naive_decay(dist[i], i, delta) - naive_decay(
                        dist[j], j, delta
                    )
                    fa = dc_difference_factored(avec, delta)
                    fb = dc_difference_factored_eps(bvec, delta)
                    if abs(fa - direct) > tol or abs(fb - direct) > tol:
                        res.record(
                            graph=_edge_dump(g), pair=[i, j], delta=delta,
                            direct=direct, factored=fa, factored_eps=fb,
                        )
                        break
    return res


def check_reciprocal_reversal(
    graphs: Sequence[Graph],
    compare_fn: Callable[[Sequence[int], Sequence[int]], ComparisonVerdict]
    | None = None,
) -> PropertyResult:
    """Lex order of the signed farness vectors is the exact reverse of the
    implemented lex order of their reciprocal views."""
    from .centrality import fvec_from_counts

    if compare_fn is None:
        compare_fn = lex_compare_cvec
    flipped = {
        Relation.GREATER: Relation.LESS,
        Relation.LESS: Relation.GREATER,
        Relation.EQUAL: Relation.EQUAL,
    }
    res = PropertyResult(name="reciprocal-lex-reversal", cases=0)
    for g in graphs:
        fvecs = [fvec_from_counts(p.counts) for p in all_profiles(g)]
        for i in range(g.n):
            for j in range(i + 1, g.n):
                res.cases += 1
                on_f = lex_compare(fvecs[i], fvecs[j]).relation
                on_c = compare_fn(fvecs[i], fvecs[j]).relation
                if flipped[on_f] != on_c:
                    res.record(
                        graph=_edge_dump(g), pair=[i, j],
                        fvec_relation=on_f.value, cvec_relation=on_c.value,
                    )
    return res


def _strict_order_everywhere(
    counts_i: Sequence[int],
    counts_j: Sequence[int],
    deltas: Sequence[float],
    diffs: np.ndarray,
    tol: float = 1e-12,
) -> float | None:
    """Return a violating delta if DC_i <= DC_j anywhere, else None.

    Float differences near zero are handed to the exact integer sign.
    """
    suspicious = np.flatnonzero(diffs <= tol)
    for k in suspicious.tolist():
        if dc_difference_sign(counts_i, counts_j, deltas[k]) <= 0:
            return float(deltas[k])
    return None


def check_dominance_checkers(
    graphs: Sequence[Graph], grid: DeltaGrid | None = None
) -> PropertyResult:
    """Whenever a full-range dominance check fires, the strict decay order
    holds at every grid point."""
    if grid is None:
        grid = DeltaGrid.uniform(999)
    from .centrality import fvec_from_counts

    res = PropertyResult(name="dominance-checkers-sound", cases=0)
    deltas = grid.values
    for g in graphs:
        pm = profile_matrix(g)
        dc = decay_matrix(pm, grid)
        fvecs = [fvec_from_counts(tuple(int(c) for c in row)) for row in pm]
        for i in range(g.n):
            for j in range(g.n):
                if i == j:
                    continue
                claims = []
                if check_profile_dominance(pm[i], pm[j]).relation is Relation.GREATER:
                    claims.append("profile-dominance")
                if (
                    check_farness_dominance(fvecs[i], fvecs[j]).relation
                    is Relation.GREATER
                ):
                    claims.append("farness-dominance")
                if not claims:
                    continue
                res.cases += 1
                bad = _strict_order_everywhere(pm[i], pm[j], deltas, dc[i] - dc[j])
                if bad is not None:
                    res.record(
                        graph=_edge_dump(g), pair=[i, j], delta=bad, rules=claims
                    )
    return res


def check_half_range_conditions(
    graphs: Sequence[Graph], grid: DeltaGrid | None = None
) -> PropertyResult:
    """Fired low-delta conditions imply strict order on (0, 0.5]; fired
    high-delta conditions imply strict order on [0.5, 1)."""
    if grid is None:
        grid = DeltaGrid.uniform(999)
    from .centrality import fvec_from_counts

    res = PropertyResult(name="half-range-conditions-sound", cases=0)
    deltas = np.asarray(grid.values)
    low_mask = deltas <= 0.5
    high_mask = deltas >= 0.5
    low_deltas = [d for d in grid.values if d <= 0.5]
    high_deltas = [d for d in grid.values if d >= 0.5]
    for g in graphs:
        pm = profile_matrix(g)
        dc = decay_matrix(pm, grid)
        fvecs = [fvec_from_counts(tuple(int(c) for c in row)) for row in pm]
        for i in range(g.n):
            for j in range(g.n):
                if i == j:
                    continue
                low = check_low_delta_conditions(pm[i], pm[j])
                if low.fires:
                    res.cases += 1
                    bad = _strict_order_everywhere(
                        pm[i], pm[j], low_deltas, (dc[i] - dc[j])[low_mask]
                    )
                    if bad is not None:
                        res.record(
                            graph=_edge_dump(g), pair=[i, j], delta=bad,
                            rule="low-delta", conditions=sorted(low.satisfied),
                        )
                high = check_high_delta_conditions(fvecs[i], fvecs[j])
                if high.fires:
                    res.cases += 1
                    bad = _strict_order_everywhere(
                        pm[i], pm[j], high_deltas, (dc[i] - dc[j])[high_mask]
                    )
                    if bad is not None:
                        res.record(
                            graph=_edge_dump(g), pair=[i, j], delta=bad,
                            rule="high-delta", conditions=sorted(high.satisfied),
                        )
    return res


def cvec_sort_key(fvec: Sequence[int]) -> tuple:
    """Sort key realizing the reciprocal-view lex order on farness vectors."""
    return tuple(((f > 0) - (f < 0), -f) for f in fvec)


def check_limit_orderings(
    graphs: Sequence[Graph],
    low_delta: float = 1e-6,
    high_delta: float = 1 - 1e-6,
) -> PropertyResult:
    """Near the endpoints the exact decay argmax coincides with the
    lexicographic winners: by distance profile at the low end and by the
    reciprocal farness view at the high end."""
    from .centrality import fvec_from_counts

    res = PropertyResult(name="limit-orderings", cases=0)
    lo = Fraction(low_delta)
    hi = Fraction(high_delta)
    for g in graphs:
        res.cases += 1
        pm = profile_matrix(g)
        rows = [tuple(int(c) for c in row) for row in pm]
        best_profile = max(rows)
        lexmax_low = {i for i, r in enumerate(rows) if r == best_profile}
        keys = [cvec_sort_key(fvec_from_counts(r)) for r in rows]
        best_key = max(keys)
        lexmax_high = {i for i, k in enumerate(keys) if k == best_key}
        argmax_low = set(exact_argmax_nodes(range(g.n), pm, lo))
        argmax_high = set(exact_argmax_nodes(range(g.n), pm, hi))
        if argmax_low != lexmax_low:
            res.record(
                graph=_edge_dump(g), delta=low_delta,
                lex_winners=sorted(lexmax_low), decay_winners=sorted(argmax_low),
            )
        if argmax_high != lexmax_high:
            res.record(
                graph=_edge_dump(g), delta=high_delta,
                lex_winners=sorted(lexmax_high), decay_winners=sorted(argmax_high),
            )
    return res


def check_dominance_partial_order(
    graphs: Sequence[Graph], seed: int = 0
) -> PropertyResult:
    """The dominance comparison behaves as a strict partial order on
    profile vectors: self-equal, antisymmetric, transitive on triples."""
    rng = np.random.default_rng(seed)
    res = PropertyResult(name="dominance-partial-order", cases=0)
    rel = {
        Relation.GREATER: 1,
        Relation.LESS: -1,
        Relation.EQUAL: 0,
        Relation.INCOMPARABLE: None,
    }
    for g in graphs:
        pm = profile_matrix(g)
        rows = [tuple(int(c) for c in row) for row in pm]
        n = len(rows)
        for i in range(n):
            res.cases += 1
            if ud_compare(rows[i], rows[i]).relation is not Relation.EQUAL:
                res.record(graph=_edge_dump(g), node=i, problem="not reflexive-equal")
        for i in range(n):
            for j in range(n):
                fwd = rel[ud_compare(rows[i], rows[j]).relation]
                bwd = rel[ud_compare(rows[j], rows[i]).relation]
                res.cases += 1
                if (fwd is None) != (bwd is None) or (
                    fwd is not None and fwd != -bwd
                ):
                    res.record(
                        graph=_edge_dump(g), pair=[i, j], problem="not antisymmetric"
                    )
        if n >= 3:
            for _ in range(min(20, n * 2)):
                i, j, k = (int(x) for x in rng.integers(0, n, size=3))
                ab = rel[ud_compare(rows[i], rows[j]).relation]
                bc = rel[ud_compare(rows[j], rows[k]).relation]
                if ab == 1 and bc == 1:
                    res.cases += 1
                    if rel[ud_compare(rows[i], rows[k]).relation] != 1:
                        res.record(
                            graph=_edge_dump(g), triple=[i, j, k],
                            problem="not transitive",
                        )
    return res


def run_all_checks(
    n_max: int = 12, graphs: int = 200, seed: int = 0
) -> list[PropertyResult]:
    """Run every property suite on one deterministic batch of graphs."""
    if graphs <= 0:
        return []
    batch = sample_graphs(graphs, n_max=n_max, seed=seed)
    small = batch[: max(1, len(batch) // 4)]
    return [
        check_bfs_distances(batch),
        check_difference_factorizations(small, grid=DeltaGrid.uniform(49)),
        check_reciprocal_reversal(batch),
        check_dominance_checkers(batch),
        check_half_range_conditions(batch),
        check_limit_orderings(batch),
        check_dominance_partial_order(small),
    ]
