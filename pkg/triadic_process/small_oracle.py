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
from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Dict, Iterator, Tuple

from metricq import get_logger

from .process.enumerator import open_walks_bruteforce
from .process.state import (
    GraphState,
    ProcessConfig,
    RSet,
    init_state,
)

logger = get_logger(__name__)

MAX_RSETS = 35
MAX_LEAVES = 2 ** 21


class OracleBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class OracleOutcome:
    expectation: float
    variance: float
    distribution: Dict[int, float]
    leaves: int
    reachable_rsets: int


def reachable_rset_count(config: ProcessConfig) -> int:
    """With only r - 2 hubs every r-set holds two non-hubs, so any of them can become
    a sample under either hub pair policy."""
    return comb(config.n, config.r)


def _assignments(
    fresh: Tuple[RSet, ...], p: float
) -> Iterator[Tuple[Dict[RSet, bool], float]]:
    if p in (0.0, 1.0):
        # only one assignment carries weight
        yield {rset: p == 1.0 for rset in fresh}, 1.0
        return
    for bits in product((False, True), repeat=len(fresh)):
        present = sum(bits)
        weight = p ** present * (1.0 - p) ** (len(fresh) - present)
        yield dict(zip(fresh, bits)), weight


def exhaustive_small_oracle(
    config: ProcessConfig, max_rsets: int = MAX_RSETS, max_leaves: int = MAX_LEAVES
) -> OracleOutcome:
    """Exact distribution of final_edges_nonhub by enumerating hyperedge assignments.

    Each round branches over every assignment of the r-sets it samples for the first
    time, weighted by p^k (1 - p)^(m - k); r-sets decided in an earlier round keep their
    value. Walks come from the brute-force enumerator.
    """
    config.validate()
    reachable = reachable_rset_count(config)
    if reachable > max_rsets:
        raise OracleBudgetError(
            f"{reachable} reachable r-sets for n={config.n}, r={config.r}, "
            f"the exhaustive oracle enumerates at most {max_rsets}"
        )

    distribution: Dict[int, float] = defaultdict(float)
    leaves = 0

    def explore(state: GraphState, decided: Dict[RSet, bool], weight: float):
        nonlocal leaves
        round = state.current_round + 1
        walks = open_walks_bruteforce(state, round)
        if not walks or round > config.max_rounds:
            leaves += 1
            if leaves > max_leaves:
                raise OracleBudgetError(
                    f"More than {max_leaves} outcomes for n={config.n}, r={config.r}"
                )
            distribution[state.nonhub_edge_count] += weight
            return

        samples = [(walk.pair, walk.rset) for walk in walks]
        fresh = tuple(sorted({rset for _, rset in samples} - decided.keys()))
        for assignment, branch_weight in _assignments(fresh, config.p):
            if branch_weight == 0.0:
                continue
            known = {**decided, **assignment}
            accepted = sorted({pair for pair, rset in samples if known[rset]})
            child = state.copy()
            child.commit_round(accepted, round)
            explore(child, known, weight * branch_weight)

    explore(init_state(config), {}, 1.0)

    expectation = math.fsum(edges * weight for edges, weight in distribution.items())
    variance = math.fsum(
        (edges - expectation) ** 2 * weight for edges, weight in distribution.items()
    )
    logger.info(
        f"Exhaustive oracle n={config.n} r={config.r} p={config.p}: "
        f"E = {expectation} over {leaves} outcomes"
    )
    return OracleOutcome(
        expectation=expectation,
        variance=variance,
        distribution=dict(sorted(distribution.items())),
        leaves=leaves,
        reachable_rsets=reachable,
    )
