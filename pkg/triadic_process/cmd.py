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
import logging
import sys
from contextlib import contextmanager

import click
import click_log
from metricq import Timestamp
from metricq.logging import get_logger

from . import __version__
from .experiments import (
    MarginTable,
    SweepKind,
    compare_with_oracle,
    run_sweep,
)
from .output import (
    COMPARE_COLUMNS,
    MARGIN_COLUMNS,
    ROUND_COLUMNS,
    RUN_COLUMNS,
    SWEEP_COLUMNS,
    OutputRecord,
    round_rows,
    run_row,
    write_csv,
)
from .process.core import run_process
from .process.state import (
    ConfigError,
    Engine,
    EnumeratorKind,
    HubPairPolicy,
    ProcessConfig,
    StatsLevel,
)
from .process.stats import StatsLimitError
from .small_oracle import OracleBudgetError
from .spec_file import evaluate_probability, load_experiment_spec

logger = get_logger("triadic_process")

click_log.basic_config(logger)
logger.setLevel("INFO")
logger.handlers[0].formatter = logging.Formatter(
    fmt="%(asctime)s [%(levelname)-8s] [%(name)-20s] %(message)s"
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CAP_HIT = 2


def _choices(enum_type):
    return click.Choice([member.value for member in enum_type])


@contextmanager
def _exit_on_error():
    try:
        yield
    except click.ClickException:
        raise
    except (ConfigError, OracleBudgetError, StatsLimitError) as e:
        logger.error(str(e))
        sys.exit(EXIT_ERROR)
    except Exception as exception:
        logger.error(
            "Stopped by unhandled exception",
            exc_info=(exception.__class__, exception, exception.__traceback__),
        )
        sys.exit(EXIT_ERROR)


def _probability(p: str, n: int) -> float:
    try:
        return evaluate_probability(p, n)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--p")


def _emit(record: OutputRecord, out: str, columns, rows):
    if out == "csv":
        write_csv(sys.stdout, columns, rows)
    else:
        click.echo(record.to_json())


class TriadicGroup(click.Group):
    """Usage errors exit with 1 like any other invalid input; 2 is kept for cap hits."""

    def main(
        self,
        args=None,
        prog_name=None,
        complete_var=None,
        standalone_mode=True,
        **extra,
    ):
        try:
            rv = super().main(
                args, prog_name, complete_var, standalone_mode=False, **extra
            )
        except click.ClickException as e:
            if not standalone_mode:
                raise
            e.show()
            sys.exit(EXIT_ERROR)
        except click.Abort:
            if not standalone_mode:
                raise
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_ERROR)
        if standalone_mode:
            sys.exit(rv if isinstance(rv, int) else EXIT_OK)
        return rv


@click.group(cls=TriadicGroup)
@click.version_option(__version__)
def triadic_cmd():
    """Simulate the random triadic process and run experiments on it."""


@triadic_cmd.command("run")
@click.option("--n", "n", type=int, required=True)
@click.option("--r", "r", type=int, default=3, show_default=True)
@click.option("--p", "p", required=True, help="Literal or expression, e.g. 0.5*n^-0.5")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-rounds", type=int, default=None)
@click.option("--hub-pairs", type=_choices(HubPairPolicy), default="exclude")
@click.option("--stats", type=_choices(StatsLevel), default="cheap")
@click.option("--engine", type=_choices(Engine), default="walk")
@click.option("--enumerator", type=_choices(EnumeratorKind), default="incremental")
@click.option("--out", type=click.Choice(["json", "csv"]), default="json")
@click.option("--per-round/--no-per-round", default=False)
@click_log.simple_verbosity_option(logger)
def run_cmd(
    n, r, p, seed, max_rounds, hub_pairs, stats, engine, enumerator, out, per_round
):
    """One process run."""
    with _exit_on_error():
        config = ProcessConfig(
            n=n,
            r=r,
            p=_probability(p, n),
            seed=seed,
            max_rounds=max_rounds,
            hub_pair_policy=hub_pairs,
            stats_level=stats,
            engine=engine,
            enumerator=enumerator,
        ).validate()

        start_time = Timestamp.now()
        result = run_process(config)
        duration = Timestamp.now() - start_time
        logger.info(
            f"{result.final_edges_nonhub} non-hub edges after {result.rounds_run} "
            f"rounds, took {duration.s:.3f} s"
        )

        payload = result.as_dict()
        if not per_round:
            del payload["per_round"]
        record = OutputRecord(
            kind="run",
            config=config.as_dict(),
            result=payload,
            tool_version=__version__,
            wall_time_s=duration.s,
        )
        if per_round:
            _emit(record, out, ROUND_COLUMNS, round_rows(result))
        else:
            _emit(record, out, RUN_COLUMNS, [run_row(result)])

    sys.exit(EXIT_CAP_HIT if result.cap_hit else EXIT_OK)


@triadic_cmd.command("sweep")
@click.argument("spec_file", type=click.Path(dir_okay=False))
@click.option("--kind", type=_choices(SweepKind), required=True)
@click.option(
    "--jobs",
    type=click.IntRange(min=1),
    envvar="TRIADIC_JOBS",
    default=None,
    help="Worker processes, overrides the spec file",
)
@click.option("--out", type=click.Choice(["json", "csv"]), default="json")
@click_log.simple_verbosity_option(logger)
def sweep_cmd(spec_file, kind, jobs, out):
    """Run an experiment sweep over the grid of SPEC_FILE."""
    with _exit_on_error():
        spec = load_experiment_spec(spec_file)
        if jobs is not None:
            spec.parallelism = jobs

        start_time = Timestamp.now()
        summary = run_sweep(kind, spec)
        duration = Timestamp.now() - start_time

        if isinstance(summary, MarginTable):
            columns, rows = MARGIN_COLUMNS, summary.rows_as_dicts()
        else:
            columns, rows = SWEEP_COLUMNS, summary.rows()
        config = spec.base.as_dict()
        config.update(
            trials=spec.trials,
            grid=[[point.n, point.r, point.p] for point in spec.grid],
        )
        record = OutputRecord(
            kind=f"sweep-{SweepKind(kind).value}",
            config=config,
            result=summary.as_dict(),
            tool_version=__version__,
            wall_time_s=duration.s,
        )

        if spec.csv_path:
            with open(spec.csv_path, "w", newline="") as csv_file:
                write_csv(csv_file, columns, rows)
        if spec.json_path:
            with open(spec.json_path, "w") as json_file:
                json_file.write(record.to_json())
        _emit(record, out, columns, rows)
        logger.info(f"Sweep of {len(spec.grid)} grid points took {duration.s:.2f} s")

    if isinstance(summary, MarginTable):
        cap_hits = summary.cap_hits > 0
    else:
        cap_hits = any(point.cap_hit_fraction > 0 for point in summary.points)
    sys.exit(EXIT_CAP_HIT if cap_hits else EXIT_OK)


@triadic_cmd.command("compare")
@click.option("--n", "n", type=int, required=True)
@click.option("--r", "r", type=int, default=3, show_default=True)
@click.option("--p", "p", required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=click.IntRange(min=1), default=10000, show_default=True)
@click.option("--hub-pairs", type=_choices(HubPairPolicy), default="exclude")
@click.option("--jobs", type=click.IntRange(min=1), envvar="TRIADIC_JOBS", default=1)
@click.option("--out", type=click.Choice(["json", "csv"]), default="json")
@click_log.simple_verbosity_option(logger)
def compare_cmd(n, r, p, seed, trials, hub_pairs, jobs, out):
    """Exact small-instance expectation against a Monte Carlo batch."""
    with _exit_on_error():
        config = ProcessConfig(
            n=n,
            r=r,
            p=_probability(p, n),
            seed=seed,
            hub_pair_policy=hub_pairs,
            stats_level="none",
        ).validate()

        start_time = Timestamp.now()
        comparison = compare_with_oracle(config, trials, parallelism=jobs)
        duration = Timestamp.now() - start_time
        logger.info(
            f"Exact {comparison.exact_expectation:.6g}, empirical "
            f"{comparison.empirical_mean:.6g}, z = {comparison.z_score:.3f}"
        )

        payload = comparison.as_dict()
        payload["distribution"] = {
            str(edges): weight for edges, weight in comparison.distribution.items()
        }
        record = OutputRecord(
            kind="compare",
            config=config.as_dict(),
            result=payload,
            tool_version=__version__,
            wall_time_s=duration.s,
        )
        row = dict(payload, n=n, r=r, p=config.p)
        _emit(record, out, COMPARE_COLUMNS, [row])

    sys.exit(EXIT_OK)
