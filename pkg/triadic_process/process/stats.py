# triadic-process
# Copyright (C) 2026 triadic-process authors
#
# All rights reserved.
#
# This file is part of triadic-process.
#
# triadic-process is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# triadic-process is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with triadic-process.  If not, see <http://www.gnu.org/licenses/>.
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from metricq import get_logger
from networkx.utils import UnionFind

from .enumerator import OpenWalk, open_walks_incremental
from .state import GraphState, StatsLevel

logger = get_logger(__name__)


class StatsLimitError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeStats:
    degrees: Dict[int, int]
    max_degree: int
    min_degree: int
    mean_degree: float


@dataclass(frozen=True)
class OpenStructureCounts:
    walk_count: int
    open_walks: Dict[int, int]
    max_open_walks: int
    max_y: int
    max_z: int


@dataclass(frozen=True)
class StatsSnapshot:
    round: int
    nonhub_edge_count: int
    max_degree: int
    min_degree: int
    mean_degree: float
    max_codegree: int
    degrees: Optional[Tuple[int, ...]] = None
    open_walk_counts: Optional[OpenStructureCounts] = None


@dataclass(frozen=True)
class ChernoffBounds:
    two_sided: Optional[float]
    upper: float


def degree_stats(state: GraphState) -> DegreeStats:
    """|D_u| for every non-hub u, counting non-hub neighbours only."""
    hubs = len(state.hubs)
    # hub edges are never removed, every non-hub sees all hubs
    degrees = {u: len(state.adjacency[u]) - hubs for u in state.nonhubs}
    values = list(degrees.values())
    return DegreeStats(
        degrees=degrees,
        max_degree=max(values),
        min_degree=min(values),
        mean_degree=2 * state.nonhub_edge_count / state.nonhub_count,
    )


def codegree_max(state: GraphState) -> int:
    """Largest |X_uv| over non-hub pairs, by wedge counting.

    Wedges u - w - x are counted from their smaller endpoint u, so only one counter
    row is alive at a time.
    """
    first_nonhub = state.r - 2
    adjacency = state.adjacency
    best = 0
    for u in state.nonhubs:
        wedges = Counter(
            x
            for w in adjacency[u]
            if w >= first_nonhub
            for x in adjacency[w]
            if x > u
        )
        if wedges:
            best = max(best, max(wedges.values()))
    return best


def open_structure_counts(
    state: GraphState,
    round: int,
    walks: Optional[Iterable[OpenWalk]] = None,
    limit: int = 500,
) -> OpenStructureCounts:
    """F_u, and the maxima of Y_uv and Z_uv, for the open walks of `round`.

    Y_uv counts open walks uWw' extended by an edge w'v, Z_uv pairs of open walks
    uW1w' and w'W2v glued at w'. Only non-hub endpoints u, v are counted.

    Both are aggregated per middle vertex w': with C[w', u] the number of open walks
    between w' and u, Y = C^T A and Z = C^T C, less the walks whose W holds the
    other endpoint.
    """
    if state.n > limit:
        raise StatsLimitError(
            f"Full open-structure counts are limited to n <= {limit}, got n = {state.n}"
        )
    if walks is None:
        walks = open_walks_incremental(state, state.new_edges(round - 1), round)
    walks = list(walks)

    first_nonhub = state.r - 2
    size = state.nonhub_count
    open_walks = {u: 0 for u in state.nonhubs}
    walks_to = np.zeros((state.n, size), dtype=np.int64)
    # (middle, x, end): walks between middle and end with x in W, x and end non-hubs
    holding: Counter = Counter()
    for walk in walks:
        u, v = walk.pair
        for middle, end in ((u, v), (v, u)):
            if middle in open_walks:
                open_walks[middle] += 1
            if end < first_nonhub:
                continue
            walks_to[middle, end - first_nonhub] += 1
            for x in walk.walk_set:
                if x >= first_nonhub:
                    holding[(middle, x, end)] += 1

    neighbours = np.zeros((state.n, size), dtype=np.int64)
    for middle in range(state.n):
        for end in state.adjacency[middle]:
            if end >= first_nonhub:
                neighbours[middle, end - first_nonhub] = 1

    y_counts = walks_to.T @ neighbours
    z_counts = walks_to.T @ walks_to
    for (middle, x, end), count in holding.items():
        i, j = end - first_nonhub, x - first_nonhub
        if neighbours[middle, j]:
            y_counts[i, j] -= count
        # pairs of a walk ending at x with one ending at end that holds x
        bad = walks_to[middle, j] * count
        if x < end:
            # pairs where each walk holds the other endpoint were taken off twice
            bad -= count * holding.get((middle, end, x), 0)
        z_counts[i, j] -= bad
        z_counts[j, i] -= bad
    np.fill_diagonal(y_counts, 0)
    np.fill_diagonal(z_counts, 0)

    return OpenStructureCounts(
        walk_count=len(walks),
        open_walks=open_walks,
        max_open_walks=max(open_walks.values(), default=0),
        max_y=int(y_counts.max(initial=0)),
        max_z=int(z_counts.max(initial=0)),
    )


def connectivity_after_hub_removal(state: GraphState) -> bool:
    components = UnionFind(state.nonhubs)
    for u, v in state.nonhub_edges():
        components.union(u, v)
    return len({components[vertex] for vertex in state.nonhubs}) == 1


def matrix_connected(adjacency: np.ndarray) -> bool:
    """Breadth-first search over a dense boolean adjacency matrix."""
    size = adjacency.shape[0]
    if size == 0:
        return True
    reached = np.zeros(size, dtype=bool)
    reached[0] = True
    frontier = reached.copy()
    while frontier.any():
        frontier = adjacency[frontier].any(axis=0) & ~reached
        reached |= frontier
    return bool(reached.all())


def take_snapshot(
    state: GraphState,
    level: StatsLevel,
    walks: Optional[Iterable[OpenWalk]] = None,
    limit: int = 500,
) -> StatsSnapshot:
    """Statistics of G(i) after round i; at full level the open structures are those of
    the walks sampled in round i + 1."""
    degrees = degree_stats(state)
    full = level is StatsLevel.FULL
    return StatsSnapshot(
        round=state.current_round,
        nonhub_edge_count=state.nonhub_edge_count,
        max_degree=degrees.max_degree,
        min_degree=degrees.min_degree,
        mean_degree=degrees.mean_degree,
        max_codegree=codegree_max(state),
        degrees=tuple(degrees.degrees[u] for u in state.nonhubs) if full else None,
        open_walk_counts=open_structure_counts(
            state, state.current_round + 1, walks=walks, limit=limit
        )
        if full
        else None,
    )


def chernoff_bounds(n_trials: int, p: float, t: float) -> ChernoffBounds:
    """Tail bounds for X ~ Bin[n_trials, p].

    two_sided bounds P[|X - np| > t] and needs 0 < t <= np, it is None for larger t;
    upper bounds P[X > np + t] for any t > 0.
    """
    if n_trials < 0 or not 0.0 <= p <= 1.0:
        raise ValueError(f"Not a binomial distribution: Bin[{n_trials}, {p}]")
    if not t > 0:
        raise ValueError(f"Deviation t must be positive, got {t}")
    mean = n_trials * p
    two_sided = None
    if t <= mean:
        two_sided = 2 * math.exp(-(t ** 2) / (3 * mean))
    upper = math.exp(-(t ** 2) / (2 * (mean + t / 3)))
    return ChernoffBounds(two_sided=two_sided, upper=upper)


def chernoff_deviation(mean: float, failure_probability: float) -> float:
    """The t with 2 exp(-t^2 / 3 mean) = failure_probability."""
    if mean < 0 or not 0.0 < failure_probability <= 2.0:
        raise ValueError(
            f"Can't size a deviation for mean {mean}, probability {failure_probability}"
        )
    return math.sqrt(3 * mean * math.log(2 / failure_probability))


def classify_regime(n: int, p: float) -> int:
    """1 for p >= n^(-7/8), 3 for p <= n^(-33/24), 2 in between."""
    if p >= n ** (-7 / 8):
        return 1
    if p <= n ** (-33 / 24):
        return 3
    return 2
