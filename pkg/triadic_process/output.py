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
import csv
import json
from dataclasses import asdict, dataclass
from typing import IO, Any, Dict, Iterable, List, Optional, Sequence

from .process.core import ProcessResult

SCHEMA_VERSION = 1
TOOL = "triadic-process"

# CSV column order is part of the output format, see README.md
RUN_COLUMNS = (
    "n",
    "r",
    "p",
    "seed",
    "hub_pair_policy",
    "max_rounds",
    "rounds_run",
    "terminated",
    "final_edges_nonhub",
    "final_edges_hub",
    "nonhub_complete",
    "connected_after_hub_removal",
    "round_one_connected",
    "oracle_queries",
)
ROUND_COLUMNS = (
    "round",
    "walks_sampled",
    "distinct_rsets_queried",
    "edges_added",
    "nonhub_edge_count",
    "max_degree",
    "min_degree",
    "mean_degree",
    "max_codegree",
    "max_open_walks",
    "max_y",
    "max_z",
)
SWEEP_COLUMNS = (
    "n",
    "r",
    "p",
    "c",
    "trials",
    "mean_final_edges",
    "std_final_edges",
    "min_final_edges",
    "max_final_edges",
    "reference_edges",
    "size_ratio",
    "edges_per_n32",
    "completion_fraction",
    "connected_fraction",
    "closure_agreement_fraction",
    "mean_rounds",
    "cap_hit_fraction",
)
MARGIN_COLUMNS = (
    "n",
    "r",
    "p",
    "regime",
    "quantity",
    "round",
    "leading_term",
    "bound",
    "empirical_max",
    "margin",
    "within_fraction",
    "trials",
)
COMPARE_COLUMNS = (
    "n",
    "r",
    "p",
    "trials",
    "exact_expectation",
    "exact_variance",
    "empirical_mean",
    "empirical_std",
    "z_score",
)


@dataclass(frozen=True)
class OutputRecord:
    """One emitted result. Everything but wall_time_s is a function of the inputs."""

    kind: str
    config: Dict[str, Any]
    result: Dict[str, Any]
    tool_version: str
    wall_time_s: Optional[float] = None
    schema_version: int = SCHEMA_VERSION
    tool: str = TOOL

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=indent)

    def payload_json(self) -> str:
        payload = self.as_dict()
        del payload["wall_time_s"]
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        values = json.loads(text)
        if values.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(
                f"Unsupported output schema version {values.get('schema_version')!r}"
            )
        return cls(**values)


def run_row(result: ProcessResult) -> Dict[str, Any]:
    config = result.config.as_dict()
    row = {name: config[name] for name in RUN_COLUMNS if name in config}
    row.update(
        {
            name: getattr(result, name)
            for name in RUN_COLUMNS
            if name not in config
        }
    )
    return row


def round_rows(result: ProcessResult) -> List[Dict[str, Any]]:
    rows = []
    for report in result.per_round:
        row = {
            "round": report.round,
            "walks_sampled": report.walks_sampled,
            "distinct_rsets_queried": report.distinct_rsets_queried,
            "edges_added": report.edges_added,
        }
        stats = report.stats
        if stats is not None:
            row.update(
                nonhub_edge_count=stats.nonhub_edge_count,
                max_degree=stats.max_degree,
                min_degree=stats.min_degree,
                mean_degree=stats.mean_degree,
                max_codegree=stats.max_codegree,
            )
            walks = stats.open_walk_counts
            if walks is not None:
                row.update(
                    max_open_walks=walks.max_open_walks,
                    max_y=walks.max_y,
                    max_z=walks.max_z,
                )
        rows.append(row)
    return rows


def write_csv(stream: IO[str], columns: Sequence[str], rows: Iterable[Dict[str, Any]]):
    """Rows with missing columns get empty cells."""
    writer = csv.DictWriter(
        stream, fieldnames=list(columns), restval="", extrasaction="ignore"
    )
    writer.writeheader()
    for row in rows:
        writer.writerow(
            {key: "" if value is None else value for key, value in row.items()}
        )
