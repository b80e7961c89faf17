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
from dataclasses import asdict, dataclass
from math import comb
from typing import Dict, List, Optional, Set, Tuple

from metricq import get_logger

from .enumerator import OpenWalk, open_walks
from .state import (
    ConfigError,
    Engine,
    EnumeratorKind,
    GraphState,
    HubPairPolicy,
    HyperedgeOracle,
    ProcessConfig,
    StatsLevel,
    init_state,
)
from .stats import StatsSnapshot, connectivity_after_hub_removal, take_snapshot

logger = get_logger(__name__)

__all__ = [
    "ConfigError",
    "ProcessResult",
    "RoundReport",
    "TriadicProcess",
    "init_state",
    "run_process",
    "run_round",
]


@dataclass(frozen=True)
class RoundReport:
    round: int
    walks_sampled: int
    distinct_rsets_queried: int
    edges_added: int
    stats: Optional[StatsSnapshot] = None


@dataclass(frozen=True)
class ProcessResult:
    config: ProcessConfig
    rounds_run: int
    terminated: bool
    final_edges_nonhub: int
    final_edges_hub: int
    nonhub_complete: bool
    connected_after_hub_removal: bool
    round_one_connected: Optional[bool]
    oracle_queries: int
    per_round: Tuple[RoundReport, ...]

    @property
    def cap_hit(self) -> bool:
        return not self.terminated

    def as_dict(self) -> Dict:
        result = asdict(self)
        result["config"] = self.config.as_dict()
        return result


def _run_hub_block_round(state: GraphState, oracle: HyperedgeOracle) -> RoundReport:
    # round one samples every non-hub pair once, with W = hubs
    pairs = comb(state.nonhub_count, 2)
    queried_before = oracle.query_count
    hits = oracle.decide_hub_block(state.nonhubs)
    added = state.commit_round(hits, 1)
    return RoundReport(
        round=1,
        walks_sampled=pairs,
        distinct_rsets_queried=oracle.query_count - queried_before,
        edges_added=added,
    )


def run_round(
    state: GraphState,
    oracle: HyperedgeOracle,
    round: int,
    walks: Optional[Set[OpenWalk]] = None,
    enumerator: EnumeratorKind = EnumeratorKind.INCREMENTAL,
) -> RoundReport:
    """Sample all open walks of `round` and commit the successful pairs together.

    Pairs are added only after every walk has been sampled, so nothing added in this
    round opens a walk of the same round.
    """
    if round != state.current_round + 1:
        raise ValueError(
            f"Round {round} can't follow round {state.current_round} of the graph"
        )
    if round == 1 and walks is None and state.hub_pair_policy is HubPairPolicy.EXCLUDE:
        return _run_hub_block_round(state, oracle)

    if walks is None:
        walks = open_walks(state, round, enumerator)
    samples = [(walk.pair, walk.rset) for walk in walks]

    queried_before = oracle.query_count
    decisions = oracle.decide_many(rset for _, rset in samples)
    accepted = sorted({pair for pair, rset in samples if decisions[rset]})
    added = state.commit_round(accepted, round)

    logger.debug(
        f"Round {round}: {len(samples)} walks, "
        f"{oracle.query_count - queried_before} new r-sets, {added} edges added"
    )
    return RoundReport(
        round=round,
        walks_sampled=len(samples),
        distinct_rsets_queried=oracle.query_count - queried_before,
        edges_added=added,
    )


class TriadicProcess:
    """One run of the walk engine: G(0), the oracle, and the reports so far."""

    def __init__(self, config: ProcessConfig):
        self.config = config.validate()
        if config.engine is not Engine.WALK:
            raise ConfigError(
                f"TriadicProcess runs the walk engine, got {config.engine}"
            )
        self.state = init_state(config)
        self.oracle = HyperedgeOracle.for_config(config)
        self.per_round: List[RoundReport] = []
        self.terminated = False
        self.finished = False
        self.round_one_connected: Optional[bool] = None
        self._pending_walks: Optional[Set[OpenWalk]] = None

    def _walks_for(self, round: int) -> Optional[Set[OpenWalk]]:
        if self._pending_walks is not None:
            walks, self._pending_walks = self._pending_walks, None
            return walks
        if round == 1 and self.state.hub_pair_policy is HubPairPolicy.EXCLUDE:
            # decided as one block by run_round, never empty
            return None
        return open_walks(self.state, round, self.config.enumerator)

    def step(self) -> Optional[RoundReport]:
        """Run the next round; None once the process has stopped."""
        if self.finished:
            return None
        round = self.state.current_round + 1
        walks = self._walks_for(round)
        if walks is not None and not walks:
            self.terminated = True
            self.finished = True
            logger.debug(f"No open walks left for round {round}, process terminated")
            return None
        if round > self.config.max_rounds:
            self.finished = True
            logger.warning(
                f"Round cap {self.config.max_rounds} hit with open walks left "
                f"(n={self.config.n}, r={self.config.r}, p={self.config.p}, "
                f"seed={self.config.seed})"
            )
            return None

        report = run_round(self.state, self.oracle, round, walks=walks)
        if round == 1:
            self.round_one_connected = connectivity_after_hub_removal(self.state)

        level = self.config.stats_level
        if level is not StatsLevel.NONE:
            next_walks = None
            if level is StatsLevel.FULL:
                next_walks = open_walks(self.state, round + 1, self.config.enumerator)
                self._pending_walks = next_walks
            snapshot = take_snapshot(
                self.state, level, walks=next_walks, limit=self.config.full_stats_limit
            )
            report = RoundReport(
                round=report.round,
                walks_sampled=report.walks_sampled,
                distinct_rsets_queried=report.distinct_rsets_queried,
                edges_added=report.edges_added,
                stats=snapshot,
            )
        self.per_round.append(report)
        return report

    def run(self) -> ProcessResult:
        while self.step() is not None:
            pass
        return self.result()

    def result(self) -> ProcessResult:
        state = self.state
        return ProcessResult(
            config=self.config,
            rounds_run=len(self.per_round),
            terminated=self.terminated,
            final_edges_nonhub=state.nonhub_edge_count,
            final_edges_hub=state.hub_edge_count,
            nonhub_complete=state.nonhub_edge_count == comb(state.nonhub_count, 2),
            connected_after_hub_removal=connectivity_after_hub_removal(state),
            round_one_connected=self.round_one_connected,
            oracle_queries=self.oracle.query_count,
            per_round=tuple(self.per_round),
        )


def run_process(config: ProcessConfig) -> ProcessResult:
    config.validate()
    if config.engine is Engine.CODEGREE:
        from .dense import run_dense_process

        result = run_dense_process(config)
    else:
        result = TriadicProcess(config).run()
    logger.debug(
        f"Process n={config.n} r={config.r} p={config.p} seed={config.seed}: "
        f"{result.final_edges_nonhub} edges after {result.rounds_run} rounds"
    )
    return result
