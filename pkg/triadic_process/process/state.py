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
from dataclasses import dataclass, fields
from enum import Enum
from itertools import repeat
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from metricq import get_logger

logger = get_logger(__name__)

Edge = Tuple[int, int]
RSet = Tuple[int, ...]

SEED_LIMIT = 2 ** 64


class ConfigError(ValueError):
    pass


class HubPairPolicy(str, Enum):
    EXCLUDE = "exclude"
    INCLUDE = "include"


class StatsLevel(str, Enum):
    NONE = "none"
    CHEAP = "cheap"
    FULL = "full"


class Engine(str, Enum):
    WALK = "walk"
    CODEGREE = "codegree"


class EnumeratorKind(str, Enum):
    INCREMENTAL = "incremental"
    BRUTEFORCE = "bruteforce"


_ENUM_FIELDS = {
    "hub_pair_policy": HubPairPolicy,
    "stats_level": StatsLevel,
    "engine": Engine,
    "enumerator": EnumeratorKind,
}


def default_max_rounds(n: int) -> int:
    return 4 * math.ceil(math.log(n))


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ProcessConfig:
    n: int
    r: int = 3
    p: float = 0.0
    seed: int = 0
    max_rounds: Optional[int] = None
    hub_pair_policy: HubPairPolicy = HubPairPolicy.EXCLUDE
    stats_level: StatsLevel = StatsLevel.CHEAP
    engine: Engine = Engine.WALK
    enumerator: EnumeratorKind = EnumeratorKind.INCREMENTAL
    full_stats_limit: int = 500

    def __post_init__(self):
        for name, enum_type in _ENUM_FIELDS.items():
            value = getattr(self, name)
            if not isinstance(value, enum_type):
                try:
                    object.__setattr__(self, name, enum_type(value))
                except ValueError:
                    # left as given, validate() reports it
                    pass

        if self.max_rounds is None and isinstance(self.n, int) and self.n > 1:
            object.__setattr__(self, "max_rounds", default_max_rounds(self.n))

    @property
    def hubs(self) -> Tuple[int, ...]:
        return tuple(range(self.r - 2))

    @property
    def nonhub_count(self) -> int:
        return self.n - self.r + 2

    def problems(self) -> List[str]:
        problems = []
        if not isinstance(self.r, int) or self.r < 3:
            problems.append(f"r must be an integer >= 3, got {self.r!r}")
        if not isinstance(self.n, int):
            problems.append(f"n must be an integer, got {self.n!r}")
        elif isinstance(self.r, int) and self.n < self.r:
            problems.append(f"n must be at least r = {self.r}, got {self.n}")
        if not isinstance(self.p, (int, float)) or not 0.0 <= self.p <= 1.0:
            problems.append(f"p must lie in [0, 1], got {self.p!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < SEED_LIMIT:
            problems.append(
                f"seed must be a 64-bit unsigned integer, got {self.seed!r}"
            )
        if not isinstance(self.max_rounds, int) or self.max_rounds < 1:
            problems.append(f"max_rounds must be >= 1, got {self.max_rounds!r}")
        if not isinstance(self.full_stats_limit, int) or self.full_stats_limit < 1:
            problems.append(
                f"full_stats_limit must be >= 1, got {self.full_stats_limit!r}"
            )
        for name, enum_type in _ENUM_FIELDS.items():
            value = getattr(self, name)
            if not isinstance(value, enum_type):
                choices = ", ".join(member.value for member in enum_type)
                problems.append(f"unknown {name} {value!r} (choose from {choices})")
        if self.engine is Engine.CODEGREE:
            if self.r != 3:
                problems.append(
                    f"the codegree engine samples r = 3 only, got r = {self.r}"
                )
            if self.stats_level is StatsLevel.FULL:
                problems.append("the codegree engine has no full statistics level")
        return problems

    def validate(self) -> "ProcessConfig":
        problems = self.problems()
        for problem in problems:
            logger.error(f"Invalid process config: {problem}")
        if problems:
            raise ConfigError("Config has errors! " + "; ".join(problems))
        return self

    def as_dict(self) -> Dict:
        result = {}
        for field in fields(self):
            value = getattr(self, field.name)
            result[field.name] = value.value if isinstance(value, Enum) else value
        return result


class GraphState:
    """The evolving simple graph G(i).

    Vertices 0 .. r-3 are the hubs, r-2 .. n-1 the non-hubs. Every edge carries the
    round it was added in; the hub/non-hub edges of the seed graph carry round 0.
    """

    def __init__(
        self, n: int, r: int, hub_pair_policy: HubPairPolicy = HubPairPolicy.EXCLUDE
    ):
        self.n = n
        self.r = r
        self.hub_pair_policy = HubPairPolicy(hub_pair_policy)
        self.hubs: Tuple[int, ...] = tuple(range(r - 2))
        self.adjacency: List[Set[int]] = [set() for _ in range(n)]
        self.edge_stamp: Dict[Edge, int] = {}
        self.edges_by_round: List[List[Edge]] = [[]]
        self.current_round = 0
        self.nonhub_edge_count = 0
        self.hub_edge_count = 0

    @property
    def nonhubs(self) -> range:
        return range(self.r - 2, self.n)

    @property
    def nonhub_count(self) -> int:
        return self.n - self.r + 2

    @property
    def edge_count(self) -> int:
        return len(self.edge_stamp)

    def is_hub(self, vertex: int) -> bool:
        return vertex < self.r - 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def stamp(self, u: int, v: int) -> Optional[int]:
        return self.edge_stamp.get(edge_key(u, v))

    def is_candidate_pair(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if self.hub_pair_policy is HubPairPolicy.INCLUDE:
            return True
        return not (self.is_hub(u) or self.is_hub(v))

    def new_edges(self, stamp: int) -> List[Edge]:
        if 0 <= stamp < len(self.edges_by_round):
            return self.edges_by_round[stamp]
        return []

    def nonhub_edges(self) -> Iterator[Edge]:
        for (u, v) in self.edge_stamp:
            if not (self.is_hub(u) or self.is_hub(v)):
                yield u, v

    def _add_edge(self, u: int, v: int, stamp: int) -> bool:
        key = edge_key(u, v)
        if u == v or key in self.edge_stamp:
            return False
        self.adjacency[u].add(v)
        self.adjacency[v].add(u)
        self.edge_stamp[key] = stamp
        self.edges_by_round[stamp].append(key)
        if self.is_hub(u) and self.is_hub(v):
            self.hub_edge_count += 1
        elif not (self.is_hub(u) or self.is_hub(v)):
            self.nonhub_edge_count += 1
        return True

    def commit_round(self, pairs: Iterable[Edge], round: int) -> int:
        """Add all pairs sampled successfully in `round` at once."""
        if round != self.current_round + 1:
            raise ValueError(
                f"Can't commit round {round}, graph is at round {self.current_round}"
            )
        self.edges_by_round.append([])
        added = sum(1 for u, v in pairs if self._add_edge(u, v, round))
        self.current_round = round
        return added

    def copy(self) -> "GraphState":
        clone = GraphState(self.n, self.r, self.hub_pair_policy)
        clone.adjacency = [set(neighbors) for neighbors in self.adjacency]
        clone.edge_stamp = dict(self.edge_stamp)
        clone.edges_by_round = [list(edges) for edges in self.edges_by_round]
        clone.current_round = self.current_round
        clone.nonhub_edge_count = self.nonhub_edge_count
        clone.hub_edge_count = self.hub_edge_count
        return clone


class HyperedgeOracle:
    """Lazy realisation of the random r-uniform hypergraph H_r(n, p).

    Every r-set is decided once, from a uniform draw of the seeded generator, and the
    decision is kept in `memo` under its sorted vertex tuple.
    """

    def __init__(self, n: int, r: int, p: float, seed: int):
        self.n = n
        self.r = r
        self.p = p
        self.seed = seed
        self.memo: Dict[RSet, bool] = {}
        self.query_count = 0
        self._rng = np.random.default_rng(seed)
        self._hubs: RSet = tuple(range(r - 2))
        self._hub_block: Optional[Set[Edge]] = None

    @classmethod
    def for_config(cls, config: ProcessConfig) -> "HyperedgeOracle":
        return cls(config.n, config.r, config.p, config.seed)

    def canonical(self, rset: Iterable[int]) -> RSet:
        key = tuple(sorted(rset))
        if len(key) != self.r or len(set(key)) != self.r:
            raise ValueError(f"Expected {self.r} distinct vertices, got {key}")
        if key[0] < 0 or key[-1] >= self.n:
            raise ValueError(f"Vertices of {key} outside [0, {self.n})")
        return key

    def _from_hub_block(self, key: RSet) -> Optional[bool]:
        if self._hub_block is None or key[: len(self._hubs)] != self._hubs:
            return None
        return (key[-2], key[-1]) in self._hub_block

    def _lookup(self, key: RSet) -> bool:
        decision = self._from_hub_block(key)
        if decision is None:
            decision = self.memo[key]
        return decision

    def hyperedge_present(self, rset: Iterable[int]) -> bool:
        key = self.canonical(rset)
        decision = self._from_hub_block(key)
        if decision is not None:
            return decision
        decision = self.memo.get(key)
        if decision is None:
            decision = bool(self._rng.random() < self.p)
            self.memo[key] = decision
            self.query_count += 1
        return decision

    def decide_many(self, rsets: Iterable[RSet]) -> Dict[RSet, bool]:
        """Decide canonical r-sets in bulk; undecided ones are drawn in sorted order."""
        wanted = set(rsets)
        fresh = sorted(
            key
            for key in wanted
            if key not in self.memo and self._from_hub_block(key) is None
        )
        if fresh:
            draws = (self._rng.random(len(fresh)) < self.p).tolist()
            self.memo.update(zip(fresh, draws))
            self.query_count += len(fresh)
        return {key: self._lookup(key) for key in wanted}

    def decide_hub_block(self, nonhubs: Sequence[int]) -> List[Edge]:
        """Decide every r-set hubs + {u, v} over the non-hub pairs at once.

        Returns the pairs whose r-set is present. One vectorised draw per non-hub row.
        """
        if self._hub_block is not None:
            raise ValueError("The hub block has already been decided")
        vertices = np.asarray(nonhubs, dtype=np.int64)
        hits: List[Edge] = []
        for index in range(len(vertices) - 1):
            partners = vertices[index + 1 :]
            present = self._rng.random(len(partners)) < self.p
            hits.extend(zip(repeat(int(vertices[index])), partners[present].tolist()))
        self._hub_block = set(hits)
        self.query_count += len(vertices) * (len(vertices) - 1) // 2
        return hits


def init_state(config: ProcessConfig) -> GraphState:
    """Build G(0), the complete bipartite graph between hubs and non-hubs."""
    config.validate()
    state = GraphState(config.n, config.r, config.hub_pair_policy)
    for hub in state.hubs:
        for vertex in state.nonhubs:
            state._add_edge(hub, vertex, 0)
    return state
