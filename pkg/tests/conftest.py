from typing import Iterable, List, Sequence, Tuple

import numpy as np
import pytest
from click.testing import CliRunner

from triadic_process.process.core import TriadicProcess
from triadic_process.process.state import GraphState, ProcessConfig, init_state


def build_state(
    n: int,
    r: int,
    rounds: Sequence[Iterable[Tuple[int, int]]],
    hub_pair_policy: str = "exclude",
) -> GraphState:
    """G(0) plus one list of added edges per round."""
    state = init_state(ProcessConfig(n=n, r=r, hub_pair_policy=hub_pair_policy))
    for round, edges in enumerate(rounds, start=1):
        state.commit_round(list(edges), round)
    return state


def random_state(n: int, r: int, seed: int, rounds: int = 3) -> GraphState:
    """A graph with a few rounds of random non-hub edges, not necessarily reachable
    by the process."""
    rng = np.random.default_rng(seed)
    state = init_state(ProcessConfig(n=n, r=r))
    nonhubs = list(state.nonhubs)
    for round in range(1, rounds + 1):
        density = rng.uniform(0.02, 0.15)
        added: List[Tuple[int, int]] = []
        for index, u in enumerate(nonhubs):
            for v in nonhubs[index + 1 :]:
                if not state.has_edge(u, v) and rng.random() < density:
                    added.append((u, v))
        state.commit_round(added, round)
    return state


def process_states(config: ProcessConfig):
    """Yield the graph before every round of a run."""
    process = TriadicProcess(config)
    yield process.state
    while process.step() is not None:
        yield process.state


@pytest.fixture
def runner():
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        # stderr is always separate from click 8.2 on
        return CliRunner()
