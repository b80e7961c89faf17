import pytest
from conftest import build_state, process_states, random_state
from hypothesis import given, settings
from hypothesis import strategies as st

from triadic_process.process.enumerator import (
    OpenWalk,
    canonical_walk,
    open_walks,
    open_walks_bruteforce,
    open_walks_incremental,
)
from triadic_process.process.state import EnumeratorKind, ProcessConfig, init_state


def test_canonical_walk_sorts():
    assert canonical_walk(3, 1, {2}) == OpenWalk((1, 3), (2,))
    assert canonical_walk(5, 2, {4, 1}) == OpenWalk((2, 5), (1, 4))


def test_canonical_walk_is_idempotent():
    walk = canonical_walk(2, 5, (1, 4))
    assert canonical_walk(*walk.pair, walk.walk_set) == walk
    assert walk.rset == (1, 2, 4, 5)


@pytest.mark.parametrize(
    "u, v, walk_set",
    [(1, 1, (2,)), (1, 2, (2,)), (1, 2, (3, 3))],
)
def test_canonical_walk_rejects_malformed_walks(u, v, walk_set):
    with pytest.raises(ValueError):
        canonical_walk(u, v, walk_set)


def test_round_one_r3():
    state = init_state(ProcessConfig(n=5, r=3))
    pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    expected = {OpenWalk(pair, (0,)) for pair in pairs}
    assert open_walks_bruteforce(state, 1) == expected
    assert open_walks_incremental(state, state.new_edges(0), 1) == expected


def test_round_one_r4():
    state = init_state(ProcessConfig(n=6, r=4))
    walks = open_walks(state, 1)
    assert len(walks) == 6
    assert {walk.walk_set for walk in walks} == {(0, 1)}
    assert walks == open_walks(state, 1, EnumeratorKind.BRUTEFORCE)


def test_round_two_hand_example():
    state = build_state(5, 3, [[(1, 2), (1, 3)]])
    expected = {OpenWalk((2, 3), (1,))}
    assert open_walks_bruteforce(state, 2) == expected
    assert open_walks_incremental(state, state.new_edges(1), 2) == expected


def test_no_new_edges_no_walks():
    state = build_state(6, 3, [[(1, 2), (2, 3)], []])
    assert open_walks_incremental(state, [], 3) == set()
    assert open_walks_bruteforce(state, 3) == set()


@pytest.mark.parametrize("closed", [False, True])
def test_walk_through_new_edge(closed):
    # new edge a-b, b's other neighbour v; a-b-v is open iff a-v is a non-edge
    a, b, v = 1, 2, 3
    rounds = [[(b, v)] + ([(a, v)] if closed else []), [(a, b)]]
    state = build_state(5, 3, rounds)
    walks = open_walks_incremental(state, state.new_edges(2), 3)
    assert (OpenWalk((a, v), (b,)) in walks) is not closed


@pytest.mark.parametrize("seed", range(100))
def test_incremental_matches_bruteforce_on_runs(seed):
    r = (3, 4, 5)[seed % 3]
    p = {3: 0.08, 4: 0.12, 5: 0.2}[r]
    config = ProcessConfig(n=30, r=r, p=p, seed=seed, stats_level="none")
    for state in process_states(config):
        round = state.current_round + 1
        assert open_walks_incremental(
            state, state.new_edges(round - 1), round
        ) == open_walks_bruteforce(state, round)


@pytest.mark.parametrize("policy", ["exclude", "include"])
def test_incremental_matches_bruteforce_include_policy(policy):
    config = ProcessConfig(n=14, r=4, p=0.3, seed=8, hub_pair_policy=policy)
    for state in process_states(config):
        round = state.current_round + 1
        assert open_walks(state, round) == open_walks_bruteforce(state, round)


@given(
    seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
    r=st.sampled_from([3, 4, 5]),
    n=st.integers(min_value=8, max_value=20),
    rounds=st.integers(min_value=1, max_value=4),
)
@settings(max_examples=50, deadline=None)
def test_incremental_matches_bruteforce_on_random_graphs(seed, r, n, rounds):
    state = random_state(n, r, seed, rounds=rounds)
    round = state.current_round + 1
    assert open_walks_incremental(
        state, state.new_edges(round - 1), round
    ) == open_walks_bruteforce(state, round)


def test_walks_are_well_formed():
    state = random_state(25, 4, seed=11)
    for walk in open_walks(state, state.current_round + 1):
        u, v = walk.pair
        assert u < v and not state.has_edge(u, v)
        assert len(walk.walk_set) == state.r - 2
        assert all(state.has_edge(u, w) and state.has_edge(v, w) for w in walk.walk_set)
        assert len(walk.rset) == state.r
