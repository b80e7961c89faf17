from itertools import combinations
from math import comb, sqrt

import numpy as np
import pytest
from conftest import build_state

from triadic_process.process.core import (
    TriadicProcess,
    run_process,
    run_round,
)
from triadic_process.process.state import (
    ConfigError,
    HubPairPolicy,
    HyperedgeOracle,
    ProcessConfig,
    default_max_rounds,
    init_state,
)
from triadic_process.process.stats import chernoff_deviation


@pytest.mark.parametrize(
    "n, r, hubs, nonhubs",
    [(5, 3, 1, 4), (6, 4, 2, 4), (3, 3, 1, 2)],
)
def test_init_state_is_complete_bipartite(n, r, hubs, nonhubs):
    state = init_state(ProcessConfig(n=n, r=r))
    assert state.hubs == tuple(range(hubs))
    assert len(state.nonhubs) == nonhubs
    assert state.edge_count == hubs * nonhubs
    assert set(state.edge_stamp.values()) == {0}
    assert state.nonhub_edge_count == 0
    for hub in state.hubs:
        assert all(state.has_edge(hub, v) for v in state.nonhubs)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=2, r=3),
        dict(n=10, r=2),
        dict(n=10, p=1.5),
        dict(n=10, p=-0.1),
        dict(n=10, seed=-1),
        dict(n=10, seed=2 ** 64),
        dict(n=10, max_rounds=0),
        dict(n=10, hub_pair_policy="sometimes"),
        dict(n=10, r=4, engine="codegree"),
        dict(n=10, engine="codegree", stats_level="full"),
    ],
)
def test_invalid_configs_are_rejected(kwargs):
    with pytest.raises(ConfigError, match="Config has errors!"):
        init_state(ProcessConfig(**kwargs))


def test_config_defaults():
    config = ProcessConfig(n=100)
    assert config.r == 3
    assert config.max_rounds == default_max_rounds(100) == 4 * 5
    assert config.hub_pair_policy is HubPairPolicy.EXCLUDE
    assert config.as_dict()["hub_pair_policy"] == "exclude"


@pytest.mark.parametrize("p, expected", [(0.0, False), (1.0, True)])
def test_oracle_certain_events(p, expected):
    oracle = HyperedgeOracle(n=10, r=3, p=p, seed=1)
    for rset in combinations(range(10), 3):
        assert oracle.hyperedge_present(rset) is expected


def test_oracle_memoizes():
    oracle = HyperedgeOracle(n=20, r=4, p=0.5, seed=3)
    first = [oracle.hyperedge_present(rset) for rset in combinations(range(8), 4)]
    queries = oracle.query_count
    # order of the vertices doesn't matter
    second = [
        oracle.hyperedge_present(tuple(reversed(rset)))
        for rset in combinations(range(8), 4)
    ]
    assert first == second
    assert oracle.query_count == queries == comb(8, 4)


def test_oracle_rejects_malformed_rsets():
    oracle = HyperedgeOracle(n=10, r=3, p=0.5, seed=0)
    with pytest.raises(ValueError):
        oracle.hyperedge_present((1, 2))
    with pytest.raises(ValueError):
        oracle.hyperedge_present((1, 1, 2))
    with pytest.raises(ValueError):
        oracle.hyperedge_present((1, 2, 10))


def test_oracle_frequency():
    p, count = 0.3, 10 ** 5
    oracle = HyperedgeOracle(n=100, r=3, p=p, seed=12345)
    rsets = [rset for rset, _ in zip(combinations(range(100), 3), range(count))]
    decisions = oracle.decide_many(rsets)
    frequency = sum(decisions.values()) / count
    assert abs(frequency - p) <= 3 * sqrt(p * (1 - p) / count)
    assert oracle.query_count == count


def test_decide_many_matches_single_queries():
    oracle = HyperedgeOracle(n=12, r=3, p=0.4, seed=9)
    rsets = list(combinations(range(12), 3))
    decisions = oracle.decide_many(rsets)
    assert all(oracle.hyperedge_present(rset) == decisions[rset] for rset in rsets)
    assert oracle.query_count == len(rsets)


def test_hub_block_agrees_with_single_queries():
    config = ProcessConfig(n=40, r=3, p=0.2, seed=5)
    state = init_state(config)
    oracle = HyperedgeOracle.for_config(config)
    report = run_round(state, oracle, 1)
    queried = oracle.query_count
    assert report.walks_sampled == report.distinct_rsets_queried == comb(39, 2)
    for u, v in combinations(state.nonhubs, 2):
        assert oracle.hyperedge_present((0, u, v)) == state.has_edge(u, v)
    assert oracle.query_count == queried


def test_round_one_adds_every_pair_at_p_one():
    config = ProcessConfig(n=5, r=3, p=1.0)
    state = init_state(config)
    report = run_round(state, HyperedgeOracle.for_config(config), 1)
    assert report.edges_added == 6
    assert state.nonhub_edge_count == 6
    assert all(stamp == 1 for (u, v), stamp in state.edge_stamp.items() if u > 0)


def test_round_one_at_p_zero():
    config = ProcessConfig(n=12, r=4, p=0.0)
    state = init_state(config)
    report = run_round(state, HyperedgeOracle.for_config(config), 1)
    assert report.walks_sampled == comb(12 - 4 + 2, 2)
    assert report.edges_added == 0


def test_round_two_single_walk():
    # hub 0, non-hubs a=1, b=2, c=3, d=4
    state = build_state(5, 3, [[(1, 2), (1, 3)]])
    oracle = HyperedgeOracle(n=5, r=3, p=1.0, seed=0)
    report = run_round(state, oracle, 2)
    assert report.walks_sampled == 1
    assert report.distinct_rsets_queried == 1
    assert list(oracle.memo) == [(1, 2, 3)]
    assert state.has_edge(2, 3) and state.stamp(2, 3) == 2


def test_run_round_checks_round_order():
    state = build_state(5, 3, [[(1, 2)]])
    oracle = HyperedgeOracle(n=5, r=3, p=0.5, seed=0)
    with pytest.raises(ValueError):
        run_round(state, oracle, 3)


def test_edges_of_a_round_do_not_open_walks_in_it():
    # path 1-2-3-4 from round 1; 1-3 and 2-4 close in round 2, 1-4 only in round 3
    state = build_state(6, 3, [[(1, 2), (2, 3), (3, 4)]])
    oracle = HyperedgeOracle(n=6, r=3, p=1.0, seed=0)
    report = run_round(state, oracle, 2)
    assert report.walks_sampled == 2
    assert state.has_edge(1, 3) and state.has_edge(2, 4)
    assert not state.has_edge(1, 4)

    report = run_round(state, oracle, 3)
    assert report.walks_sampled == 2
    assert state.stamp(1, 4) == 3


def test_run_process_p_zero():
    result = run_process(ProcessConfig(n=100, r=3, p=0.0, seed=1))
    assert result.final_edges_nonhub == 0
    assert result.rounds_run == 1
    assert result.terminated and not result.cap_hit


def test_run_process_p_one():
    result = run_process(ProcessConfig(n=6, r=3, p=1.0, seed=1))
    assert result.final_edges_nonhub == comb(5, 2) == 10
    assert result.nonhub_complete
    assert result.connected_after_hub_removal
    assert result.rounds_run == 1
    assert result.terminated


def test_include_policy_adds_hub_pairs():
    result = run_process(ProcessConfig(n=6, r=4, p=1.0, hub_pair_policy="include"))
    assert result.final_edges_hub == 1
    assert result.final_edges_nonhub == 6


def test_include_policy_matches_oracle():
    config = ProcessConfig(n=6, r=4, p=0.6, seed=21, hub_pair_policy="include")
    process = TriadicProcess(config)
    process.run()
    # every sampled r-set was decided once and is consistent on replay
    for rset, present in process.oracle.memo.items():
        assert process.oracle.hyperedge_present(rset) == present
    assert process.oracle.query_count == len(process.oracle.memo)


@pytest.mark.parametrize("r", [3, 4, 5])
def test_run_process_is_deterministic(r):
    config = ProcessConfig(n=40, r=r, p=0.05, seed=777, stats_level="full")
    assert run_process(config) == run_process(config)


def test_different_seeds_differ():
    first = run_process(ProcessConfig(n=60, p=0.1, seed=1))
    second = run_process(ProcessConfig(n=60, p=0.1, seed=2))
    assert first.per_round != second.per_round


@pytest.mark.parametrize("seed", range(5))
def test_edges_are_never_removed(seed):
    process = TriadicProcess(ProcessConfig(n=50, r=4, p=0.12, seed=seed))
    previous = dict(process.state.edge_stamp)
    while process.step() is not None:
        current = process.state.edge_stamp
        assert all(current[edge] == stamp for edge, stamp in previous.items())
        assert max(current.values()) <= process.state.current_round
        previous = dict(current)


@pytest.mark.parametrize("seed", range(5))
def test_every_rset_is_queried_once(seed):
    process = TriadicProcess(ProcessConfig(n=40, r=3, p=0.15, seed=seed))
    result = process.run()
    assert result.oracle_queries == sum(
        report.distinct_rsets_queried for report in result.per_round
    )
    assert all(
        report.distinct_rsets_queried <= report.walks_sampled
        for report in result.per_round
    )


def test_round_cap():
    result = run_process(ProcessConfig(n=30, r=3, p=0.3, seed=4, max_rounds=1))
    assert result.rounds_run == 1
    assert result.cap_hit


def test_round_one_connectivity_is_final_connectivity():
    for seed in range(10):
        result = run_process(ProcessConfig(n=60, r=3, p=0.05, seed=seed))
        assert result.round_one_connected == result.connected_after_hub_removal


def _round_one_edges(n, p, seeds):
    counts = []
    for seed in seeds:
        process = TriadicProcess(ProcessConfig(n=n, r=3, p=p, seed=seed))
        counts.append(process.step().edges_added)
    return np.array(counts)


def test_round_one_law():
    n, p, seeds = 500, 0.01, range(200)
    counts = _round_one_edges(n, p, seeds)
    pairs = comb(n - 1, 2)
    expected = pairs * p * len(seeds)
    assert abs(counts.sum() - expected) <= chernoff_deviation(expected, 1e-6)
    assert ((counts >= 0) & (counts <= pairs)).all()


@pytest.mark.slow
def test_round_one_law_at_scale():
    n, p, seeds = 5000, 1e-3, range(200)
    counts = _round_one_edges(n, p, seeds)
    pairs = comb(n - 1, 2)
    expected = pairs * p * len(seeds)
    assert abs(counts.sum() - expected) <= chernoff_deviation(expected, 1e-6)
    assert ((counts >= 0) & (counts <= pairs)).all()
