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
from itertools import combinations
from typing import Iterable, NamedTuple, Set, Tuple

from metricq import get_logger

from .state import Edge, EnumeratorKind, GraphState, HubPairPolicy, RSet

logger = get_logger(__name__)


class OpenWalk(NamedTuple):
    """An open walk uWv: the non-edge pair {u, v} and the set W of r - 2 vertices
    adjacent to both, kept in canonical (sorted) form."""

    pair: Tuple[int, int]
    walk_set: Tuple[int, ...]

    @property
    def rset(self) -> RSet:
        return tuple(sorted(self.pair + self.walk_set))


def canonical_walk(u: int, v: int, walk_set: Iterable[int]) -> OpenWalk:
    walk_set = tuple(sorted(walk_set))
    if u == v:
        raise ValueError(f"Walk endpoints must differ, got {u} twice")
    if len(set(walk_set)) != len(walk_set):
        raise ValueError(f"Walk set {walk_set} has repeated vertices")
    if u in walk_set or v in walk_set:
        raise ValueError(f"Walk set {walk_set} overlaps the pair ({u}, {v})")
    return OpenWalk((u, v) if u < v else (v, u), walk_set)


def open_walks_bruteforce(state: GraphState, round: int) -> Set[OpenWalk]:
    """Reference enumeration straight from the definition, O(n^2 * deg^(r-2))."""
    previous = round - 1
    adjacency = state.adjacency
    if state.hub_pair_policy is HubPairPolicy.INCLUDE:
        vertices = range(state.n)
    else:
        vertices = state.nonhubs

    walks = set()
    for u, v in combinations(vertices, 2):
        if v in adjacency[u]:
            continue
        common = sorted(adjacency[u] & adjacency[v])
        for walk_set in combinations(common, state.r - 2):
            if any(
                state.stamp(u, w) == previous or state.stamp(v, w) == previous
                for w in walk_set
            ):
                walks.add(OpenWalk((u, v), walk_set))
    return walks


def open_walks_incremental(
    state: GraphState, new_edges: Iterable[Edge], round: int
) -> Set[OpenWalk]:
    """Enumerate the open walks of `round` from the edges added in round - 1.

    Every open walk contains a new edge ab with a an endpoint and b in W, so it is
    found by fixing ab in both orientations, walking on to a neighbour v of b and
    completing W from the common neighbours of a and v. A walk containing several new
    edges is found several times; the set removes the repeats.
    """
    extension = state.r - 3
    adjacency = state.adjacency
    walks = set()
    for x, y in new_edges:
        for a, b in ((x, y), (y, x)):
            around_a = adjacency[a]
            for v in adjacency[b]:
                if v == a or v in around_a or not state.is_candidate_pair(a, v):
                    continue
                pair = (a, v) if a < v else (v, a)
                if extension:
                    common = around_a & adjacency[v]
                    common.discard(b)
                    candidates = sorted(common)
                else:
                    candidates = ()
                for rest in combinations(candidates, extension):
                    walks.add(OpenWalk(pair, tuple(sorted(rest + (b,)))))
    logger.debug(f"Round {round}: {len(walks)} open walks from new edges")
    return walks


def open_walks(
    state: GraphState,
    round: int,
    kind: EnumeratorKind = EnumeratorKind.INCREMENTAL,
) -> Set[OpenWalk]:
    if kind is EnumeratorKind.BRUTEFORCE:
        return open_walks_bruteforce(state, round)
    return open_walks_incremental(state, state.new_edges(round - 1), round)
