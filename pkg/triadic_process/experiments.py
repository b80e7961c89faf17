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
import concurrent.futures as cf
import math
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from metricq import Timestamp, get_logger

from .process.core import ProcessResult, run_process
from .process.state import (
    ConfigError,
    ProcessConfig,
    StatsLevel,
    default_max_rounds,
)
from .process.stats import chernoff_deviation, classify_regime
from .small_oracle import exhaustive_small_oracle
from .trial_cache import TrialCache

logger = get_logger(__name__)


class SweepKind(str, Enum):
    FINAL_SIZE = "final-size"
    THRESHOLD = "threshold"
    CONNECTIVITY = "connectivity"
    CONCENTRATION = "concentration"


def trial_seed(base_seed: int, trial: int) -> int:
    return base_seed ^ trial


@dataclass(frozen=True)
class GridPoint:
    n: int
    r: int
    p: float
    c: Optional[float] = None
    lineno: Optional[int] = None

    @property
    def scaled_p(self) -> float:
        """c in p = c n^(-1/2)."""
        return self.c if self.c is not None else self.p * math.sqrt(self.n)


@dataclass
class ExperimentSpec:
    base: ProcessConfig
    grid: List[GridPoint]
    trials: int = 1
    parallelism: int = 1
    max_rounds: Optional[int] = None
    alpha: float = 0.6
    epsilon: float = 1.0
    csv_path: Optional[str] = None
    json_path: Optional[str] = None
    cache_path: Optional[str] = None

    def config_for(self, point: GridPoint, trial: int) -> ProcessConfig:
        return replace(
            self.base,
            n=point.n,
            r=point.r,
            p=point.p,
            seed=trial_seed(self.base.seed, trial),
            max_rounds=self.max_rounds or default_max_rounds(point.n),
        )


@dataclass(frozen=True)
class RoundSummary:
    round: int
    walks_sampled: int
    edges_added: int
    max_degree: Optional[int] = None
    max_codegree: Optional[int] = None
    max_open_walks: Optional[int] = None
    max_y: Optional[int] = None
    max_z: Optional[int] = None


@dataclass(frozen=True)
class TrialOutcome:
    trial: int
    seed: int
    final_edges_nonhub: int
    rounds_run: int
    terminated: bool
    nonhub_complete: bool
    connected: bool
    round_one_connected: Optional[bool]
    rounds: Tuple[RoundSummary, ...] = ()

    @classmethod
    def from_result(cls, trial: int, result: ProcessResult) -> "TrialOutcome":
        rounds = []
        for report in result.per_round:
            stats = report.stats
            walks = stats.open_walk_counts if stats is not None else None
            rounds.append(
                RoundSummary(
                    round=report.round,
                    walks_sampled=report.walks_sampled,
                    edges_added=report.edges_added,
                    max_degree=stats.max_degree if stats else None,
                    max_codegree=stats.max_codegree if stats else None,
                    max_open_walks=walks.max_open_walks if walks else None,
                    max_y=walks.max_y if walks else None,
                    max_z=walks.max_z if walks else None,
                )
            )
        return cls(
            trial=trial,
            seed=result.config.seed,
            final_edges_nonhub=result.final_edges_nonhub,
            rounds_run=result.rounds_run,
            terminated=result.terminated,
            nonhub_complete=result.nonhub_complete,
            connected=result.connected_after_hub_removal,
            round_one_connected=result.round_one_connected,
            rounds=tuple(rounds),
        )

    @classmethod
    def from_dict(cls, values: Dict) -> "TrialOutcome":
        values = dict(values)
        values["rounds"] = tuple(RoundSummary(**entry) for entry in values["rounds"])
        return cls(**values)

    def as_dict(self) -> Dict:
        return asdict(self)

    def round_value(self, round: int, name: str):
        for summary in self.rounds:
            if summary.round == round:
                return getattr(summary, name)
        return None


def run_trial(job: Tuple[int, ProcessConfig]) -> TrialOutcome:
    trial, config = job
    return TrialOutcome.from_result(trial, run_process(config))


def run_trials(
    jobs: Sequence[Tuple[int, ProcessConfig]],
    parallelism: int = 1,
    cache: Optional[TrialCache] = None,
) -> List[TrialOutcome]:
    """Run independent trials, in worker processes when parallelism > 1.

    Outcomes come back ordered by trial index whatever the worker count.
    """
    outcomes: Dict[int, TrialOutcome] = {}
    pending = []
    for trial, config in jobs:
        cached = cache.get(config) if cache is not None else None
        if cached is not None:
            outcomes[trial] = replace(cached, trial=trial)
        else:
            pending.append((trial, config))

    if len(jobs) - len(pending):
        logger.debug(f"{len(jobs) - len(pending)} trials taken from the trial cache")

    if parallelism > 1 and len(pending) > 1:
        chunksize = max(1, len(pending) // (parallelism * 4))
        with cf.ProcessPoolExecutor(max_workers=parallelism) as executor:
            for outcome in executor.map(run_trial, pending, chunksize=chunksize):
                outcomes[outcome.trial] = outcome
    else:
        for job in pending:
            outcome = run_trial(job)
            outcomes[outcome.trial] = outcome

    if cache is not None and pending:
        for trial, config in pending:
            cache.put(config, outcomes[trial])
        cache.flush()

    return [outcomes[trial] for trial, _ in jobs]


@dataclass(frozen=True)
class PointSummary:
    n: int
    r: int
    p: float
    c: float
    trials: int
    mean_final_edges: float
    std_final_edges: float
    min_final_edges: int
    max_final_edges: int
    reference_edges: float
    size_ratio: Optional[float]
    edges_per_n32: float
    completion_fraction: float
    connected_fraction: float
    closure_agreement_fraction: Optional[float]
    mean_rounds: float
    cap_hit_fraction: float


def summarize_point(point: GridPoint, outcomes: Sequence[TrialOutcome]) -> PointSummary:
    edges = np.array([outcome.final_edges_nonhub for outcome in outcomes], dtype=float)
    reference = 0.5 * point.n ** 2 * point.p
    mean = float(edges.mean())
    agreement = [
        outcome.round_one_connected == outcome.connected
        for outcome in outcomes
        if outcome.round_one_connected is not None
    ]
    return PointSummary(
        n=point.n,
        r=point.r,
        p=point.p,
        c=point.scaled_p,
        trials=len(outcomes),
        mean_final_edges=mean,
        std_final_edges=float(edges.std(ddof=1)) if len(edges) > 1 else 0.0,
        min_final_edges=int(edges.min()),
        max_final_edges=int(edges.max()),
        reference_edges=reference,
        size_ratio=mean / reference if reference > 0 else None,
        edges_per_n32=mean / point.n ** 1.5,
        completion_fraction=float(np.mean([o.nonhub_complete for o in outcomes])),
        connected_fraction=float(np.mean([o.connected for o in outcomes])),
        closure_agreement_fraction=float(np.mean(agreement)) if agreement else None,
        mean_rounds=float(np.mean([o.rounds_run for o in outcomes])),
        cap_hit_fraction=float(np.mean([not o.terminated for o in outcomes])),
    )


@dataclass(frozen=True)
class SweepSummary:
    kind: str
    points: Tuple[PointSummary, ...]

    def as_dict(self) -> Dict:
        return asdict(self)

    def rows(self) -> List[Dict]:
        return [asdict(point) for point in self.points]


def _sweep(
    kind: SweepKind, spec: ExperimentSpec, cache: Optional[TrialCache] = None
) -> SweepSummary:
    if not spec.grid:
        raise ConfigError("The experiment grid is empty")
    if spec.trials < 1:
        raise ConfigError(f"trials must be >= 1, got {spec.trials}")

    summaries = []
    for point in spec.grid:
        start_time = Timestamp.now()
        jobs = [(trial, spec.config_for(point, trial)) for trial in range(spec.trials)]
        jobs[0][1].validate()
        outcomes = run_trials(jobs, parallelism=spec.parallelism, cache=cache)
        summary = summarize_point(point, outcomes)
        summaries.append(summary)
        duration = Timestamp.now() - start_time
        logger.info(
            f"{kind.value} n={point.n} r={point.r} p={point.p:.6g}: "
            f"mean edges {summary.mean_final_edges:.1f} over {spec.trials} trials, "
            f"took {duration.s:.2f} s"
        )
    return SweepSummary(kind=kind.value, points=tuple(summaries))


def monte_carlo_final_size(
    spec: ExperimentSpec, cache: Optional[TrialCache] = None
) -> SweepSummary:
    """Mean final size against n^2 p / 2 per grid point."""
    for point in spec.grid:
        if point.p * point.n ** 2 < 50:
            logger.warning(
                f"p n^2 = {point.p * point.n ** 2:.3g} < 50 at n={point.n}, "
                "the final size concentrates poorly"
            )
        if point.p >= point.n ** -0.5:
            logger.warning(
                f"p = {point.p:.3g} is not below n^-1/2 at n={point.n}, "
                "the process may propagate"
            )
    return _sweep(SweepKind.FINAL_SIZE, spec, cache)


def edges_per_n32_by_c(summary: SweepSummary) -> Dict[float, List[Tuple[int, float]]]:
    """final edges / n^(3/2) for every c of a threshold sweep, ordered by n."""
    series: Dict[float, List[Tuple[int, float]]] = {}
    for point in summary.points:
        series.setdefault(round(point.c, 9), []).append((point.n, point.edges_per_n32))
    return {c: sorted(values) for c, values in series.items()}


def threshold_sweep(
    spec: ExperimentSpec, cache: Optional[TrialCache] = None
) -> SweepSummary:
    """Completion fraction and final size / n^(3/2) around p = c n^(-1/2)."""
    wrong = sorted({point.r for point in spec.grid if point.r != 3})
    if wrong:
        raise ConfigError(
            f"The threshold sweep is defined for r = 3 only, got r = {wrong}"
        )
    summary = _sweep(SweepKind.THRESHOLD, spec, cache)
    for c, values in edges_per_n32_by_c(summary).items():
        if c >= 0.5 or len(values) < 2:
            continue
        non_increasing = all(
            later <= earlier for (_, earlier), (_, later) in zip(values, values[1:])
        )
        logger.info(
            f"c = {c:.3g}: final edges / n^3/2 "
            + ", ".join(f"{value:.4g} at n={n}" for n, value in values)
            + (" (non-increasing)" if non_increasing else " (not monotone)")
        )
    return summary


def connectivity_sweep(
    spec: ExperimentSpec, cache: Optional[TrialCache] = None
) -> SweepSummary:
    """Fraction of final graphs that stay connected once the hubs are removed."""
    for point in spec.grid:
        logger.debug(
            f"n={point.n}: p = {point.p * point.n / math.log(point.n):.3g} log n / n"
        )
    return _sweep(SweepKind.CONNECTIVITY, spec, cache)


@dataclass(frozen=True)
class MarginRow:
    n: int
    r: int
    p: float
    regime: int
    quantity: str
    round: Optional[int]
    leading_term: float
    bound: float
    empirical_max: float
    margin: Optional[float]
    within_fraction: float
    trials: int


@dataclass(frozen=True)
class MarginTable:
    rows: Tuple[MarginRow, ...] = field(default_factory=tuple)
    cap_hits: int = 0

    def as_dict(self) -> Dict:
        return asdict(self)

    def rows_as_dicts(self) -> List[Dict]:
        return [asdict(row) for row in self.rows]


def concentration_report(
    config: ProcessConfig,
    trials: int,
    alpha: float = 0.6,
    epsilon: float = 1.0,
    parallelism: int = 1,
    cache: Optional[TrialCache] = None,
) -> MarginTable:
    """Per-round maxima of the tracked quantities against their leading-order bounds.

    Bounds depend on the regime of p. Each row has the largest value over the trials,
    the margin bound / value and the share of trials within the bound.
    """
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    if config.stats_level is StatsLevel.NONE:
        config = replace(config, stats_level=StatsLevel.CHEAP)
    config.validate()
    jobs = [
        (t, replace(config, seed=trial_seed(config.seed, t))) for t in range(trials)
    ]
    outcomes = run_trials(jobs, parallelism=parallelism, cache=cache)

    n, r, p = config.n, config.r, config.p
    log_n = math.log(n)
    regime = classify_regime(n, p)
    rows: List[MarginRow] = []

    def add(quantity, round, leading, bound, values, strict=True):
        values = [value for value in values if value is not None]
        if not values:
            return
        empirical = max(values)
        within = [value < bound if strict else value <= bound for value in values]
        rows.append(
            MarginRow(
                n=n,
                r=r,
                p=p,
                regime=regime,
                quantity=quantity,
                round=round,
                leading_term=leading,
                bound=bound,
                empirical_max=float(empirical),
                margin=bound / empirical if empirical > 0 else None,
                within_fraction=sum(within) / len(within),
                trials=len(values),
            )
        )

    def per_trial(round, name):
        return [outcome.round_value(round, name) for outcome in outcomes]

    def added_in(round):
        # a round that never ran added nothing
        return [outcome.round_value(round, "edges_added") or 0 for outcome in outcomes]

    if regime == 1:
        np_ = n * p
        # every non-hub degree stays in the band except with probability 2/n
        degree_bound = np_ + chernoff_deviation(np_, 2 / n ** 2)
        walk_scale = log_n ** (2 * alpha * (r - 2))
        degrees = per_trial(1, "max_degree")
        add("max_degree", 1, np_, degree_bound, degrees, False)
        add("max_codegree", 1, 3 * log_n, 3 * log_n, per_trial(1, "max_codegree"))
        walks = per_trial(1, "max_open_walks")
        add("max_open_walks", 1, epsilon * n, epsilon * n, walks)
        add(
            "max_y",
            1,
            epsilon * np_ * walk_scale,
            epsilon * np_ * walk_scale,
            per_trial(1, "max_y"),
        )
        add(
            "max_z",
            1,
            epsilon * n * walk_scale,
            epsilon * n * walk_scale,
            per_trial(1, "max_z"),
        )
        last = max(1, math.floor(log_n))
        for round in range(2, last + 1):
            add(
                "max_degree",
                round,
                np_,
                degree_bound,
                per_trial(round, "max_degree"),
                False,
            )
        for round in range(1, last + 1):
            codegrees = per_trial(round, "max_codegree")
            codegree_bound = log_n ** (2 * alpha)
            add("max_codegree", round, codegree_bound, codegree_bound, codegrees)
            if round > 1:
                add("max_codegree", round, 3 * log_n, 3 * log_n, codegrees)
        add(
            "rounds_run",
            None,
            log_n,
            2 * log_n,
            [outcome.rounds_run for outcome in outcomes],
            False,
        )
    elif regime == 2:
        add("max_degree", 1, n * p, 2 * n ** 0.125, per_trial(1, "max_degree"))
        add("max_codegree", 1, 2 * log_n, 2 * log_n, per_trial(1, "max_codegree"))
        open_walk_bound = 2 ** (r - 1) * n ** 0.25 * log_n ** (r - 3)
        y_bound = 2 ** (r - 1) * n ** 0.125 * log_n ** (r - 2)
        z_bound = 2 ** (2 * r - 3) * n ** 0.25 * log_n ** (2 * r - 5)
        walks = per_trial(1, "max_open_walks")
        add("max_open_walks", 1, open_walk_bound, open_walk_bound, walks)
        add("max_y", 1, y_bound, y_bound, per_trial(1, "max_y"))
        add("max_z", 1, z_bound, z_bound, per_trial(1, "max_z"))
        add("edges_added", 2, 2 * n ** 0.5, 2 * n ** 0.5, added_in(2), False)
        add("edges_added", 3, 0.0, 0.0, added_in(3), False)
    else:
        add("edges_added", 1, 0.5 * n ** 2 * p, 2 * n ** 0.625, added_in(1), False)
        add("max_codegree", 1, 4 * log_n, 4 * log_n, per_trial(1, "max_codegree"))
        add("edges_added", 2, 0.0, 0.0, added_in(2), False)

    for row in rows:
        if row.within_fraction < 1.0:
            logger.warning(
                f"{row.quantity} (round {row.round}) exceeds {row.bound:.4g} in "
                f"{(1 - row.within_fraction) * 100:.1f}% of trials at n={n}, p={p:.4g}"
            )
    cap_hits = sum(not outcome.terminated for outcome in outcomes)
    if cap_hits:
        logger.warning(
            f"{cap_hits} of {trials} trials hit the round cap at n={n}, p={p:.4g}"
        )
    return MarginTable(rows=tuple(rows), cap_hits=cap_hits)


def concentration_sweep(
    spec: ExperimentSpec, cache: Optional[TrialCache] = None
) -> MarginTable:
    if not spec.grid:
        raise ConfigError("The experiment grid is empty")
    rows: List[MarginRow] = []
    cap_hits = 0
    for point in spec.grid:
        table = concentration_report(
            spec.config_for(point, 0),
            spec.trials,
            alpha=spec.alpha,
            epsilon=spec.epsilon,
            parallelism=spec.parallelism,
            cache=cache,
        )
        rows.extend(table.rows)
        cap_hits += table.cap_hits
    return MarginTable(rows=tuple(rows), cap_hits=cap_hits)


def run_sweep(
    kind: Union[SweepKind, str], spec: ExperimentSpec
) -> Union[SweepSummary, MarginTable]:
    kind = SweepKind(kind)
    cache = TrialCache(spec.cache_path) if spec.cache_path else None
    if kind is SweepKind.FINAL_SIZE:
        return monte_carlo_final_size(spec, cache)
    if kind is SweepKind.THRESHOLD:
        return threshold_sweep(spec, cache)
    if kind is SweepKind.CONNECTIVITY:
        return connectivity_sweep(spec, cache)
    return concentration_sweep(spec, cache)


@dataclass(frozen=True)
class Comparison:
    exact_expectation: float
    exact_variance: float
    distribution: Dict[int, float]
    empirical_mean: float
    empirical_std: float
    trials: int
    z_score: float

    def as_dict(self) -> Dict:
        return asdict(self)


def compare_with_oracle(
    config: ProcessConfig, trials: int, parallelism: int = 1
) -> Comparison:
    """Exact expectation of the small-instance oracle against a Monte Carlo batch."""
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    exact = exhaustive_small_oracle(config)
    jobs = [
        (
            trial,
            replace(config, seed=trial_seed(config.seed, trial), stats_level="none"),
        )
        for trial in range(trials)
    ]
    outcomes = run_trials(jobs, parallelism=parallelism)
    edges = np.array([outcome.final_edges_nonhub for outcome in outcomes], dtype=float)
    mean = float(edges.mean())
    standard_error = math.sqrt(exact.variance / trials)
    if standard_error > 0:
        z_score = (mean - exact.expectation) / standard_error
    else:
        z_score = 0.0 if math.isclose(mean, exact.expectation) else math.inf
    return Comparison(
        exact_expectation=exact.expectation,
        exact_variance=exact.variance,
        distribution=exact.distribution,
        empirical_mean=mean,
        empirical_std=float(edges.std(ddof=1)) if trials > 1 else 0.0,
        trials=trials,
        z_score=z_score,
    )
