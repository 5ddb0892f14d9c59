"""Monte-Carlo harness: maximizer-set relations across a decay-parameter grid.

One trial samples a connected G(n, p) graph and records, at every grid
value, how the decay-centrality maximizer set relates to the max-degree and
max-closeness sets, together with decay ranks of three selection policies
(best max-degree node, best max-closeness node, and the 0.5-threshold rule
of thumb).  Aggregation produces per-delta frequencies over all trials and
over the subpopulation where the degree and closeness sets are disjoint,
plus mean / 5th / 95th-percentile rank curves.

Trials are pure functions of ``(config, trial_index)``; running them on any
number of workers yields byte-identical output files.
"""

from __future__ import annotations

import csv
import json
import math
import multiprocessing
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache, partial
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .centrality import TIE_PREFILTER, DeltaGrid, dc_difference_sign, decay_matrix
from .generation import (
    DEFAULT_MAX_REJECTS,
    RejectionLimitError,
    TrialSeed,
    sample_connected_gnp,
)
from .graph import Graph, profile_matrix
from .meta import conventions, version_string
from .ordering import (
    _profile_group_ids,
    decay_argmax_sets,
    exact_argmax_nodes,
    int_argmax_set,
    int_argmin_set,
)


@lru_cache(maxsize=8)
def uniform_grid(points: int = 99) -> DeltaGrid:
    return DeltaGrid.uniform(points)


@dataclass(frozen=True)
class TrialRecord:
    """Everything recorded about one simulated graph.

    The per-delta tuples are aligned with the grid.  ``subset_core`` tracks
    containment in the *intersection* of the degree and closeness sets;
    ``disjoint`` means the decay maximizers avoid their union entirely.
    ``threshold_index`` is the first grid index from which containment in
    the closeness set persists to the end of the grid (absent when it does
    not); ``transition_clean`` reports, for trials whose degree and
    closeness sets are disjoint, whether the flag pattern along the grid is
    exactly degree-prefix, neither-zone, closeness-tail.
    """

    trial_index: int
    n: int
    p: float
    rejects: int
    deg_set: frozenset[int]
    clos_set: frozenset[int]
    intersects: bool
    subset_deg: tuple[bool, ...]
    subset_clos: tuple[bool, ...]
    subset_core: tuple[bool, ...]
    disjoint: tuple[bool, ...]
    rank_deg_best: tuple[int, ...]
    rank_clos_best: tuple[int, ...]
    rank_rule: tuple[int, ...]
    rank_deg_avg: tuple[float, ...]
    rank_clos_avg: tuple[float, ...]
    rule_pick: tuple[int, ...]
    threshold_index: int | None
    transition_clean: bool | None

    @property
    def escapes_core(self) -> bool:
        """True when the sets intersect yet some grid value pushes the decay
        maximizers outside the intersection."""
        return self.intersects and not all(self.subset_core)


def _strict_greater_count(
    col: np.ndarray,
    v: int,
    profiles: np.ndarray,
    gid: np.ndarray,
    frac: Fraction,
) -> int:
    """Number of nodes with strictly greater decay value than ``v`` at one
    grid point, with borderline floats resolved exactly."""
    base = int((col > col[v] + TIE_PREFILTER).sum())
    near = np.flatnonzero(np.abs(col - col[v]) <= TIE_PREFILTER)
    for u in near.tolist():
        if u == v or gid[u] == gid[v]:
            continue
        if dc_difference_sign(profiles[u], profiles[v], frac) > 0:
            base += 1
    return base


def _rank_matrix(
    dc: np.ndarray,
    members: Sequence[int],
    profiles: np.ndarray,
    gid: np.ndarray,
    fracs: Sequence[Fraction],
) -> np.ndarray:
    """Competition ranks of the given nodes at every grid point, shape
    ``(len(members), len(grid))``.

    Clearly-greater nodes are counted in one vectorized comparison; float
    near-ties across *different* profiles (same-profile nodes are exact ties
    by construction) go through the exact rational sign.
    """
    sub = dc[list(members)]  # (m, G)
    greater = (dc[:, None, :] > sub[None, :, :] + TIE_PREFILTER).sum(axis=0)
    near = np.abs(dc[:, None, :] - sub[None, :, :]) <= TIE_PREFILTER
    same_group = gid[:, None] == gid[list(members)][None, :]
    near &= ~same_group[:, :, None]
    for u, mi, g in zip(*np.nonzero(near)):
        v = members[mi]
        if dc_difference_sign(profiles[u], profiles[v], fracs[g]) > 0:
            greater[mi, g] += 1
    return greater + 1


def _exact_best_members(
    col: np.ndarray,
    members: Sequence[int],
    profiles: np.ndarray,
    gid: np.ndarray,
    frac: Fraction,
) -> list[int]:
    """Members of a node set attaining its exact decay maximum, sorted."""
    best_float = max(col[v] for v in members)
    cand = [v for v in members if col[v] >= best_float - TIE_PREFILTER]
    if len(cand) == 1:
        return cand
    return exact_argmax_nodes(cand, profiles, frac, gid)


def rank_of(
    node_set: Iterable[int],
    dc_values: Sequence[float],
    *,
    profiles: np.ndarray | None = None,
    delta: float | Fraction | None = None,
) -> int:
    """Best competition rank among the set's members.

    ``rank(v) = 1 + #{u : DC_u > DC_v}`` and the set's rank is the minimum
    over members, i.e. the rank of its decay-best member.  When ``profiles``
    and ``delta`` are given, near-ties are resolved exactly; otherwise plain
    float comparison is used.
    """
    members = sorted(int(v) for v in node_set)
    if not members:
        raise ValueError("rank of an empty node set is undefined")
    col = np.asarray(dc_values, dtype=np.float64)
    if profiles is None or delta is None:
        best = max(members, key=lambda v: col[v])
        return 1 + int((col > col[best]).sum())
    frac = delta if isinstance(delta, Fraction) else Fraction(delta)
    gid = _profile_group_ids(profiles)
    v = _exact_best_members(col, members, profiles, gid, frac)[0]
    return 1 + _strict_greater_count(col, v, profiles, gid, frac)


def rule_of_thumb_pick(
    deg_set: Iterable[int],
    clos_set: Iterable[int],
    dc_values: Sequence[float],
    delta: float,
    *,
    profiles: np.ndarray | None = None,
) -> int:
    """Pick a node by the 0.5-threshold rule.

    Candidates come from the max-degree set below 0.5, the max-closeness set
    above 0.5, and their union exactly at 0.5; the pick is the candidate
    with maximum decay centrality, exact ties broken toward the lowest id.
    """
    deg = frozenset(int(v) for v in deg_set)
    clos = frozenset(int(v) for v in clos_set)
    if not deg or not clos:
        raise ValueError("candidate sets must be nonempty")
    if delta < 0.5:
        candidates = deg
    elif delta > 0.5:
        candidates = clos
    else:
        candidates = deg | clos
    col = np.asarray(dc_values, dtype=np.float64)
    members = sorted(candidates)
    if profiles is None:
        return max(members, key=lambda v: (col[v], -v))
    frac = Fraction(delta)
    gid = _profile_group_ids(profiles)
    return _exact_best_members(col, members, profiles, gid, frac)[0]


def _detect_threshold(
    subset_deg: Sequence[bool], subset_clos: Sequence[bool], intersects: bool
) -> tuple[int | None, bool | None]:
    """Persistence start of the closeness containment, plus pattern
    cleanliness for disjoint-set trials (None when not applicable)."""
    npts = len(subset_clos)
    if not subset_clos[-1]:
        return None, None
    t = npts - 1
    while t > 0 and subset_clos[t - 1]:
        t -= 1
    if intersects:
        return t, None
    s = 0
    while s < t and subset_deg[s]:
        s += 1
    clean = all(
        not subset_deg[i] and not subset_clos[i] for i in range(s, t)
    )
    return t, clean


def run_trial(
    g: Graph,
    grid: DeltaGrid,
    *,
    trial_index: int = 0,
    rejects: int = 0,
    p: float = float("nan"),
) -> TrialRecord:
    """Evaluate one connected graph over the whole grid."""
    profiles = profile_matrix(g)
    degrees = profiles[:, 0].tolist()
    weights = np.arange(1, profiles.shape[1] + 1, dtype=np.int64)
    farness = (profiles @ weights).tolist()
    deg_set = int_argmax_set(degrees)
    clos_set = int_argmin_set(farness)
    core = deg_set & clos_set
    union = deg_set | clos_set
    intersects = bool(core)

    dc = decay_matrix(profiles, grid)
    gid = _profile_group_ids(profiles)
    dc_sets = decay_argmax_sets(dc, profiles, grid, gid)
    fracs = grid.fractions()

    npts = len(grid)
    subset_deg = [False] * npts
    subset_clos = [False] * npts
    subset_core = [False] * npts
    disjoint = [False] * npts
    rank_rule = [0] * npts
    rule_pick = [0] * npts

    union_members = sorted(union)
    ranks = _rank_matrix(dc, union_members, profiles, gid, fracs)
    pos = {v: k for k, v in enumerate(union_members)}
    deg_rows = ranks[[pos[v] for v in sorted(deg_set)]]
    clos_rows = ranks[[pos[v] for v in sorted(clos_set)]]
    rank_deg_best = deg_rows.min(axis=0).tolist()
    rank_clos_best = clos_rows.min(axis=0).tolist()
    rank_deg_avg = deg_rows.mean(axis=0).tolist()
    rank_clos_avg = clos_rows.mean(axis=0).tolist()

    deg_members = sorted(deg_set)
    clos_members = sorted(clos_set)
    for gi, delta in enumerate(grid.values):
        dset = dc_sets[gi]
        subset_deg[gi] = dset <= deg_set
        subset_clos[gi] = dset <= clos_set
        subset_core[gi] = bool(core) and dset <= core
        disjoint[gi] = not (dset & union)

        if delta < 0.5:
            candidates = deg_members
        elif delta > 0.5:
            candidates = clos_members
        else:
            candidates = union_members
        # two candidates share a rank only when their decay values are
        # exactly equal, so min-rank plus lowest id is the exact-tie pick
        best_rank = min(ranks[pos[v], gi] for v in candidates)
        pick = next(v for v in candidates if ranks[pos[v], gi] == best_rank)
        rule_pick[gi] = pick
        rank_rule[gi] = int(best_rank)

    threshold_index, transition_clean = _detect_threshold(
        subset_deg, subset_clos, intersects
    )
    return TrialRecord(
        trial_index=trial_index,
        n=g.n,
        p=p,
        rejects=rejects,
        deg_set=deg_set,
        clos_set=clos_set,
        intersects=intersects,
        subset_deg=tuple(subset_deg),
        subset_clos=tuple(subset_clos),
        subset_core=tuple(subset_core),
        disjoint=tuple(disjoint),
        rank_deg_best=tuple(rank_deg_best),
        rank_clos_best=tuple(rank_clos_best),
        rank_rule=tuple(rank_rule),
        rank_deg_avg=tuple(rank_deg_avg),
        rank_clos_avg=tuple(rank_clos_avg),
        rule_pick=tuple(rule_pick),
        threshold_index=threshold_index,
        transition_clean=transition_clean,
    )


@dataclass(frozen=True)
class RankStats:
    """Per-delta mean and nearest-rank 5th / 95th percentiles."""

    mean: tuple[float, ...]
    p5: tuple[float, ...]
    p95: tuple[float, ...]


@dataclass(frozen=True)
class AggregateStats:
    """Aggregated frequencies and rank statistics for one (n, p) batch."""

    trials: int
    grid: DeltaGrid
    count_intersect: int
    count_intersect_dc_escapes: int
    count_nonintersect: int
    count_disjoint_any_delta: int
    count_threshold: int
    count_transition_clean: int
    count_transition_violations: int
    n_subset_deg: tuple[int, ...]
    n_subset_clos: tuple[int, ...]
    n_disjoint: tuple[int, ...]
    n_subset_deg_nonint: tuple[int, ...]
    n_subset_clos_nonint: tuple[int, ...]
    n_disjoint_nonint: tuple[int, ...]
    rank_deg_best: RankStats
    rank_clos_best: RankStats
    rank_rule: RankStats
    rank_deg_avg: RankStats
    rank_clos_avg: RankStats

    def freq_subset_deg(self) -> np.ndarray:
        return np.asarray(self.n_subset_deg) / self.trials

    def freq_subset_clos(self) -> np.ndarray:
        return np.asarray(self.n_subset_clos) / self.trials

    def freq_disjoint(self) -> np.ndarray:
        return np.asarray(self.n_disjoint) / self.trials


def nearest_rank_percentile(sorted_vals: np.ndarray, q: float) -> np.ndarray:
    """Nearest-rank percentile per column of a pre-sorted sample matrix."""
    idx = max(1, math.ceil(q * sorted_vals.shape[0]))
    return sorted_vals[idx - 1]


def _rank_stats(matrix: np.ndarray) -> RankStats:
    means = matrix.mean(axis=0)
    s = np.sort(matrix, axis=0)
    p5 = nearest_rank_percentile(s, 0.05)
    p95 = nearest_rank_percentile(s, 0.95)
    return RankStats(
        mean=tuple(float(x) for x in means),
        p5=tuple(float(x) for x in p5),
        p95=tuple(float(x) for x in p95),
    )


def aggregate(records: Sequence[TrialRecord], grid: DeltaGrid) -> AggregateStats:
    """Fold trial records (in trial order) into frequency and rank curves."""
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    npts = len(grid)
    for rec in records:
        if len(rec.subset_deg) != npts:
            raise ValueError("record grid length does not match the grid")

    def colsum(field: str, only_nonint: bool) -> tuple[int, ...]:
        acc = np.zeros(npts, dtype=np.int64)
        for rec in records:
            if only_nonint and rec.intersects:
                continue
            acc += np.asarray(getattr(rec, field), dtype=np.int64)
        return tuple(int(x) for x in acc)

    nonint = [rec for rec in records if not rec.intersects]
    thresholds = [rec for rec in records if rec.threshold_index is not None]
    clean = sum(1 for rec in nonint if rec.transition_clean is True)
    dirty = sum(1 for rec in nonint if rec.transition_clean is False)

    def ranks(field: str) -> RankStats:
        return _rank_stats(
            np.array([getattr(rec, field) for rec in records], dtype=np.float64)
        )

    return AggregateStats(
        trials=len(records),
        grid=grid,
        count_intersect=sum(1 for rec in records if rec.intersects),
        count_intersect_dc_escapes=sum(1 for rec in records if rec.escapes_core),
        count_nonintersect=len(nonint),
        count_disjoint_any_delta=sum(1 for rec in records if any(rec.disjoint)),
        count_threshold=len(thresholds),
        count_transition_clean=clean,
        count_transition_violations=dirty,
        n_subset_deg=colsum("subset_deg", False),
        n_subset_clos=colsum("subset_clos", False),
        n_disjoint=colsum("disjoint", False),
        n_subset_deg_nonint=colsum("subset_deg", True),
        n_subset_clos_nonint=colsum("subset_clos", True),
        n_disjoint_nonint=colsum("disjoint", True),
        rank_deg_best=ranks("rank_deg_best"),
        rank_clos_best=ranks("rank_clos_best"),
        rank_rule=ranks("rank_rule"),
        rank_deg_avg=ranks("rank_deg_avg"),
        rank_clos_avg=ranks("rank_clos_avg"),
    )


@dataclass(frozen=True)
class SimulationConfig:
    """Inputs of one experiment batch; results are a pure function of it."""

    n: int
    p: float
    trials: int
    seed: int
    grid_points: int = 99
    workers: int = 1
    max_rejects: int = DEFAULT_MAX_REJECTS

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if self.workers < 1:
            raise ValueError("need at least one worker")

    def grid(self) -> DeltaGrid:
        return uniform_grid(self.grid_points)


def _run_single(config: SimulationConfig, trial_index: int):
    seed = TrialSeed(config.seed, trial_index)
    try:
        graph, rejects = sample_connected_gnp(
            config.n, config.p, seed, config.max_rejects
        )
    except RejectionLimitError:
        return trial_index, None
    record = run_trial(
        graph,
        config.grid(),
        trial_index=trial_index,
        rejects=rejects,
        p=config.p,
    )
    return trial_index, record


def iter_trials(config: SimulationConfig) -> Iterator[tuple[int, TrialRecord | None]]:
    """Yield ``(trial_index, record-or-None)`` in trial order.

    ``None`` marks a trial whose generation exhausted the rejection budget.
    Worker count affects scheduling only, never content or order.
    """
    if config.workers == 1:
        for ti in range(config.trials):
            yield _run_single(config, ti)
        return
    chunk = max(1, min(64, config.trials // (config.workers * 4) or 1))
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=config.workers) as pool:
        yield from pool.imap(
            partial(_run_single, config), range(config.trials), chunksize=chunk
        )


def run_trials(config: SimulationConfig) -> tuple[list[TrialRecord], list[int]]:
    """All trial records plus the indices of failed generations."""
    records: list[TrialRecord] = []
    failed: list[int] = []
    for ti, rec in iter_trials(config):
        if rec is None:
            failed.append(ti)
        else:
            records.append(rec)
    return records, failed


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


RECORDS_HEADER = [
    "trial",
    "rejects",
    "intersects",
    "threshold_index",
    "transition_clean",
    "delta",
    "subset_deg",
    "subset_clos",
    "subset_core",
    "disjoint",
    "rank_deg_best",
    "rank_clos_best",
    "rank_rule",
    "rank_deg_avg",
    "rank_clos_avg",
    "rule_pick",
]


def _record_rows(rec: TrialRecord, grid: DeltaGrid) -> Iterator[list[str]]:
    thr = "" if rec.threshold_index is None else str(rec.threshold_index)
    clean = "" if rec.transition_clean is None else str(int(rec.transition_clean))
    for gi, delta in enumerate(grid.values):
        yield [
            str(rec.trial_index),
            str(rec.rejects),
            str(int(rec.intersects)),
            thr,
            clean,
            _fmt(delta),
            str(int(rec.subset_deg[gi])),
            str(int(rec.subset_clos[gi])),
            str(int(rec.subset_core[gi])),
            str(int(rec.disjoint[gi])),
            str(rec.rank_deg_best[gi]),
            str(rec.rank_clos_best[gi]),
            str(rec.rank_rule[gi]),
            _fmt(rec.rank_deg_avg[gi]),
            _fmt(rec.rank_clos_avg[gi]),
            str(rec.rule_pick[gi]),
        ]


AGGREGATE_HEADER = (
    ["delta", "n_trials", "freq_subset_deg", "freq_subset_clos", "freq_disjoint"]
    + ["n_nonintersect", "freq_subset_deg_nonint", "freq_subset_clos_nonint",
       "freq_disjoint_nonint"]
    + [
        f"rank_{family}_{stat}"
        for family in ("deg_best", "clos_best", "rule", "deg_avg", "clos_avg")
        for stat in ("mean", "p5", "p95")
    ]
)


def _aggregate_rows(agg: AggregateStats) -> Iterator[list[str]]:
    t = agg.trials
    nn = agg.count_nonintersect
    families = (
        agg.rank_deg_best,
        agg.rank_clos_best,
        agg.rank_rule,
        agg.rank_deg_avg,
        agg.rank_clos_avg,
    )
    for gi, delta in enumerate(agg.grid.values):
        row = [
            _fmt(delta),
            str(t),
            _fmt(agg.n_subset_deg[gi] / t),
            _fmt(agg.n_subset_clos[gi] / t),
            _fmt(agg.n_disjoint[gi] / t),
            str(nn),
            _fmt(agg.n_subset_deg_nonint[gi] / nn) if nn else "",
            _fmt(agg.n_subset_clos_nonint[gi] / nn) if nn else "",
            _fmt(agg.n_disjoint_nonint[gi] / nn) if nn else "",
        ]
        for fam in families:
            row.extend([_fmt(fam.mean[gi]), _fmt(fam.p5[gi]), _fmt(fam.p95[gi])])
        yield row


@dataclass(frozen=True)
class ExperimentResult:
    aggregate: AggregateStats
    failed_trials: tuple[int, ...]
    records_path: Path
    aggregate_path: Path
    summary_path: Path


def run_experiment(config: SimulationConfig, out_dir: str | Path) -> ExperimentResult:
    """Run the batch, streaming records to disk, then write the aggregate
    and summary.  Identical configs produce byte-identical CSV files at any
    worker count."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid = config.grid()
    records_path = out / "records.csv"
    aggregate_path = out / "aggregate.csv"
    summary_path = out / "summary.json"

    records: list[TrialRecord] = []
    failed: list[int] = []
    with records_path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RECORDS_HEADER)
        for ti, rec in iter_trials(config):
            if rec is None:
                failed.append(ti)
                continue
            records.append(rec)
            writer.writerows(_record_rows(rec, grid))

    if not records:
        raise RuntimeError(
            f"all {config.trials} generations failed at max_rejects="
            f"{config.max_rejects}; raise the budget or the link probability"
        )

    agg = aggregate(records, grid)
    with aggregate_path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(AGGREGATE_HEADER)
        writer.writerows(_aggregate_rows(agg))

    summary = {
        "config": asdict(config),
        "version": version_string(),
        "conventions": conventions(),
        "results": {
            "trials_requested": config.trials,
            "trials_succeeded": agg.trials,
            "failed_trials": failed,
            "count_intersect": agg.count_intersect,
            "count_intersect_dc_escapes": agg.count_intersect_dc_escapes,
            "count_nonintersect": agg.count_nonintersect,
            "count_disjoint_any_delta": agg.count_disjoint_any_delta,
            "count_threshold": agg.count_threshold,
            "count_transition_clean": agg.count_transition_clean,
            "count_transition_violations": agg.count_transition_violations,
        },
    }
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return ExperimentResult(
        aggregate=agg,
        failed_trials=tuple(failed),
        records_path=records_path,
        aggregate_path=aggregate_path,
        summary_path=summary_path,
    )
