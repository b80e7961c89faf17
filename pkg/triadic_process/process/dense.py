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

# Dense engine for r = 3. A triple is open at most once over the whole process: once
# two of its edges are old it is never open again, whether or not the third edge was
# added. So the k open walks of a pair in a round are k distinct r-sets, and the pair
# succeeds with probability 1 - (1 - p)^k. For every pair k is the codegree gained in
# the last round, A^2 - A_old^2.
from math import comb
from typing import List, Optional

import numpy as np
from metricq import get_logger

from .core import ProcessResult, RoundReport
from .state import ConfigError, ProcessConfig, StatsLevel
from .stats import StatsSnapshot, matrix_connected

logger = get_logger(__name__)


def _snapshot(
    round: int, adjacency: np.ndarray, codegree: np.ndarray, hubs: int
) -> StatsSnapshot:
    inner = adjacency[hubs:, hubs:]
    degrees = inner.sum(axis=1)
    edges = int(degrees.sum()) // 2
    shared = codegree[hubs:, hubs:].copy()
    np.fill_diagonal(shared, 0.0)
    # every hub is a common neighbour of every non-hub pair
    max_codegree = max(int(shared.max()) - hubs, 0)
    return StatsSnapshot(
        round=round,
        nonhub_edge_count=edges,
        max_degree=int(degrees.max()),
        min_degree=int(degrees.min()),
        mean_degree=2 * edges / inner.shape[0],
        max_codegree=max_codegree,
    )


def run_dense_process(config: ProcessConfig) -> ProcessResult:
    config.validate()
    if config.r != 3:
        raise ConfigError(f"The codegree engine samples r = 3 only, got r = {config.r}")

    n, p = config.n, config.p
    hubs = config.r - 2
    rng = np.random.default_rng(config.seed)

    # float32 products are exact for counts below 2^24
    adjacency = np.zeros((n, n), dtype=np.float32)
    adjacency[:hubs, hubs:] = 1.0
    adjacency[hubs:, :hubs] = 1.0
    codegree = adjacency @ adjacency
    codegree_old = np.zeros_like(codegree)
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)

    per_round: List[RoundReport] = []
    terminated = False
    round_one_connected: Optional[bool] = None
    queries = 0
    round = 1
    while True:
        fresh = codegree - codegree_old
        candidates = upper & (adjacency == 0.0) & (fresh > 0.0)
        rows, cols = np.nonzero(candidates)
        walks = fresh[rows, cols].astype(np.int64)
        walk_count = int(walks.sum())
        if walk_count == 0:
            terminated = True
            break
        if round > config.max_rounds:
            logger.warning(
                f"Round cap {config.max_rounds} hit with open walks left "
                f"(n={n}, p={p}, seed={config.seed})"
            )
            break

        success = rng.random(len(walks)) < 1.0 - (1.0 - p) ** walks
        adjacency[rows[success], cols[success]] = 1.0
        adjacency[cols[success], rows[success]] = 1.0
        queries += walk_count
        codegree_old, codegree = codegree, adjacency @ adjacency

        if round == 1:
            round_one_connected = matrix_connected(adjacency[hubs:, hubs:] > 0.0)

        stats = None
        if config.stats_level is StatsLevel.CHEAP:
            stats = _snapshot(round, adjacency, codegree, hubs)
        per_round.append(
            RoundReport(
                round=round,
                walks_sampled=walk_count,
                distinct_rsets_queried=walk_count,
                edges_added=int(success.sum()),
                stats=stats,
            )
        )
        logger.debug(
            f"Round {round}: {walk_count} walks over {len(walks)} pairs, "
            f"{int(success.sum())} edges added"
        )
        round += 1

    inner = adjacency[hubs:, hubs:] > 0.0
    final_edges = int(inner.sum()) // 2
    return ProcessResult(
        config=config,
        rounds_run=len(per_round),
        terminated=terminated,
        final_edges_nonhub=final_edges,
        final_edges_hub=0,
        nonhub_complete=final_edges == comb(config.nonhub_count, 2),
        connected_after_hub_removal=matrix_connected(inner),
        round_one_connected=round_one_connected,
        oracle_queries=queries,
        per_round=tuple(per_round),
    )
