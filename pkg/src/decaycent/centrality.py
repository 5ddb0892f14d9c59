"""Centrality quantities on connected graphs.

Degree, farness, closeness, and decay centrality, plus the signed
higher-order farness vectors and their reciprocal views that drive the
near-limit orderings.  Integer quantities (degrees, farness, the signed
vectors, difference coefficients) are computed exactly; only decay values
are floating point.

Decay centrality of node ``i`` at ``delta`` in (0, 1) is
``sum_l delta**l * counts[l-1]``, the per-pair sum of ``delta**d(i,j)``.
The difference of two decay polynomials factors as
``delta * (1 - delta) * sum_k P_k delta**(k-1)`` where ``P_k`` are prefix
sums of the profile differences (and symmetrically in ``eps = 1 - delta``
with farness-vector differences); both factored forms are exposed here and
pinned to the direct evaluation by the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .graph import (
    DistanceProfile,
    Graph,
    all_profiles,
    profile_matrix,
)

#: Float window inside which two decay values are handed to the exact
#: rational comparison instead of being trusted as distinct.
TIE_PREFILTER = 1e-9


@dataclass(frozen=True)
class DeltaGrid:
    """Strictly increasing decay-parameter values inside (0, 1)."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("delta grid must be nonempty")
        prev = 0.0
        for v in self.values:
            if not (0.0 < v < 1.0):
                raise ValueError(f"grid value {v!r} outside the open interval (0, 1)")
            if v <= prev:
                raise ValueError("grid values must be strictly increasing")
            prev = v

    @classmethod
    def uniform(cls, points: int = 99) -> "DeltaGrid":
        """``points`` evenly spaced values ``i / (points + 1)``; the default
        99-point grid is ``0.01, 0.02, ..., 0.99``."""
        if points < 1:
            raise ValueError("grid needs at least one point")
        return cls(tuple(i / (points + 1) for i in range(1, points + 1)))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[float]:
        return iter(self.values)

    def fractions(self) -> tuple[Fraction, ...]:
        """Exact rational values of the grid floats."""
        return tuple(Fraction(v) for v in self.values)


def _as_counts(profile: DistanceProfile | Sequence[int]) -> Sequence[int]:
    if isinstance(profile, DistanceProfile):
        return profile.counts
    return profile


def decay_centrality(profile: DistanceProfile | Sequence[int], delta: float) -> float:
    """Evaluate the decay polynomial by Horner's scheme from the highest power."""
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta!r}")
    counts = _as_counts(profile)
    acc = 0.0
    for c in reversed(counts):
        acc = acc * delta + c
    return acc * delta


def decay_curve(
    profile: DistanceProfile | Sequence[int], grid: DeltaGrid
) -> np.ndarray:
    """Decay centrality at every grid point (pointwise equal to
    :func:`decay_centrality`)."""
    if not isinstance(grid, DeltaGrid):
        grid = DeltaGrid(tuple(grid))
    counts = _as_counts(profile)
    return np.array([decay_centrality(counts, d) for d in grid], dtype=np.float64)


def decay_matrix(profiles: np.ndarray, grid: DeltaGrid) -> np.ndarray:
    """Batch decay evaluation: ``(n, len(grid))`` array from a profile matrix.

    All terms are nonnegative, so the matrix product loses no more than a
    few ulps relative to the Horner path; exact tie handling never relies
    on these floats alone.
    """
    levels = profiles.shape[1]
    gridvals = np.asarray(grid.values, dtype=np.float64)
    powers = gridvals[None, :] ** np.arange(1, levels + 1, dtype=np.float64)[:, None]
    return profiles.astype(np.float64) @ powers


def farness_from_counts(counts: Sequence[int]) -> int:
    """Sum of geodesic distances to all other nodes."""
    return sum(l * c for l, c in enumerate(counts, start=1))


def fvec_from_counts(counts: Sequence[int]) -> tuple[int, ...]:
    """Signed higher-order farness vector.

    Entry ``k`` (1-based) is ``(-1)**(k-1) * sum_{l>=k} C(l, k) * counts[l-1]``,
    computed in exact integer arithmetic; entry 1 is the farness.  The sign
    alternates (or the entry is zero) because every summand is nonnegative.
    """
    n1 = len(counts)
    out: list[int] = []
    for k in range(1, n1 + 1):
        total = 0
        for l in range(k, n1 + 1):
            c = counts[l - 1]
            if c:
                total += math.comb(l, k) * c
        out.append(total if k % 2 == 1 else -total)
    return tuple(out)


def cvec_from_fvec(fvec: Sequence[int]) -> tuple[float, ...]:
    """Reciprocal view: ``1 / f`` per entry, with ``0`` where ``f == 0``."""
    return tuple(0.0 if f == 0 else float(Fraction(1, f)) for f in fvec)


@dataclass(frozen=True)
class CentralityTable:
    """All per-node centrality quantities for one connected graph.

    Farness is exact; closeness is kept as the exact rational ``1/farness``
    (see :meth:`closeness_exact`) with :attr:`closeness` as the float view,
    so maximizer ties stay exact.
    """

    graph: Graph
    profiles: tuple[DistanceProfile, ...]
    degrees: tuple[int, ...]
    farness: tuple[int, ...]
    fvecs: tuple[tuple[int, ...], ...]
    cvecs: tuple[tuple[float, ...], ...]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def closeness(self) -> tuple[float, ...]:
        return tuple(1.0 / f for f in self.farness)

    def closeness_exact(self, node: int) -> Fraction:
        return Fraction(1, self.farness[node])

    def decay(self, node: int, delta: float) -> float:
        return decay_centrality(self.profiles[node], delta)

    def decay_values(self, grid: DeltaGrid) -> np.ndarray:
        mat = np.array([p.counts for p in self.profiles], dtype=np.int64)
        return decay_matrix(mat, grid)


def centrality_table(g: Graph) -> CentralityTable:
    """Populate every quantity; requires a connected graph with ``n >= 2``."""
    if g.n < 2:
        raise ValueError("centrality table needs at least two nodes")
    profiles = tuple(all_profiles(g))
    degrees = tuple(p.degree for p in profiles)
    farness = tuple(farness_from_counts(p.counts) for p in profiles)
    fvecs = tuple(fvec_from_counts(p.counts) for p in profiles)
    cvecs = tuple(cvec_from_fvec(f) for f in fvecs)
    return CentralityTable(
        graph=g,
        profiles=profiles,
        degrees=degrees,
        farness=farness,
        fvecs=fvecs,
        cvecs=cvecs,
    )


def dc_difference_coeffs(
    pi: DistanceProfile | Sequence[int], pj: DistanceProfile | Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-level profile differences and farness-vector differences.

    Both vectors sum to zero exactly on profiles drawn from one connected
    graph (profile counts each total ``n - 1``, and the alternating
    binomial sums telescope to the same constant).
    """
    ci, cj = _as_counts(pi), _as_counts(pj)
    if len(ci) != len(cj):
        raise ValueError(f"profile lengths differ: {len(ci)} vs {len(cj)}")
    avec = tuple(int(a) - int(b) for a, b in zip(ci, cj))
    if sum(avec) != 0:
        raise ValueError(
            "profiles do not come from the same connected graph (level counts "
            f"sum to {sum(ci)} vs {sum(cj)})"
        )
    fi = fvec_from_counts(ci)
    fj = fvec_from_counts(cj)
    bvec = tuple(a - b for a, b in zip(fi, fj))
    return avec, bvec


def _prefix_sums(vec: Sequence[int]) -> list[int]:
    out: list[int] = []
    acc = 0
    for v in vec[:-1]:
        acc += v
        out.append(acc)
    return out


def dc_difference_factored(avec: Sequence[int], delta: float) -> float:
    """Evaluate the factored decay difference
    ``delta * (1 - delta) * [P_1 + P_2*delta + ... + P_{n-2}*delta**(n-3)]``
    where ``P_k`` is the k-th prefix sum of ``avec``; requires the
    coefficients to sum to zero (they always do for same-graph profiles).
    """
    if sum(avec) != 0:
        raise ValueError("difference coefficients must sum to zero")
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta!r}")
    prefixes = _prefix_sums(avec)
    acc = 0.0
    for p in reversed(prefixes):
        acc = acc * delta + p
    return delta * (1.0 - delta) * acc


def dc_difference_factored_eps(bvec: Sequence[int], delta: float) -> float:
    """The mirrored factored form in ``eps = 1 - delta`` built on
    farness-vector differences:
    ``-eps * (1 - eps) * [Q_1 + Q_2*eps + ... + Q_{n-2}*eps**(n-3)]``
    with ``Q_k`` the prefix sums of ``bvec``."""
    if sum(bvec) != 0:
        raise ValueError("difference coefficients must sum to zero")
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta!r}")
    eps = 1.0 - delta
    prefixes = _prefix_sums(bvec)
    acc = 0.0
    for q in reversed(prefixes):
        acc = acc * eps + q
    return -eps * (1.0 - eps) * acc


def dc_difference_sign(
    counts_i: Sequence[int],
    counts_j: Sequence[int],
    delta: float | Fraction,
) -> int:
    """Exact sign of ``DC_i(delta) - DC_j(delta)`` at a rational point.

    The float ``delta`` is taken at its exact binary value; the sign is
    decided in integer arithmetic, so grid points that sit exactly on a
    crossing (possible at e.g. 0.5) resolve as true ties.
    Returns -1, 0, or 1.
    """
    if len(counts_i) != len(counts_j):
        raise ValueError("profile lengths differ")
    diffs = [int(a) - int(b) for a, b in zip(counts_i, counts_j)]
    while diffs and diffs[-1] == 0:
        diffs.pop()
    if not diffs:
        return 0
    frac = delta if isinstance(delta, Fraction) else Fraction(delta)
    if not (0 < frac < 1):
        raise ValueError(f"delta must lie in (0, 1), got {delta!r}")
    num, den = frac.numerator, frac.denominator
    # sign(sum_l diffs[l-1] * delta**l) == sign(sum_l diffs[l-1] * num**(l-1) * den**(L-l))
    acc = 0
    den_pow = 1
    for l in range(len(diffs), 0, -1):
        acc = acc * num + diffs[l - 1] * den_pow
        den_pow *= den
    return (acc > 0) - (acc < 0)
