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
import ast
import math
import operator
from typing import Callable, Dict, List, Optional

from metricq import get_logger

from .experiments import ExperimentSpec, GridPoint
from .process.state import ConfigError, ProcessConfig

logger = get_logger(__name__)

_BINARY_OPERATORS: Dict[type, Callable] = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY_OPERATORS: Dict[type, Callable] = {
    ast.USub: operator.neg,
    ast.UAdd: operator.pos,
}
_FUNCTIONS: Dict[str, Callable] = {"log": math.log, "sqrt": math.sqrt, "exp": math.exp}


class SpecFileError(ConfigError):
    def __init__(
        self, message: str, source: str = "<spec>", lineno: Optional[int] = None
    ):
        self.source = source
        self.lineno = lineno
        self.problem = message
        location = f"{source}:{lineno}" if lineno is not None else source
        super().__init__(f"{location}: {message}")


def evaluate_probability(expression: str, n: int) -> float:
    """Evaluate a p-expression like ``c*n^-0.5`` or ``2*log(n)/n`` for the given n.

    ``^`` is exponentiation. Only numbers, ``n``, arithmetic and log/sqrt/exp are
    accepted; anything else raises ValueError.
    """
    try:
        tree = ast.parse(expression.replace("^", "**"), mode="eval")
    except SyntaxError as e:
        raise ValueError(f"Can't parse p-expression {expression!r}") from e

    def evaluate(node):
        if isinstance(node, ast.Expression):
            return evaluate(node.body)
        # all values are floats
        if isinstance(node, ast.Constant) and type(node.value) in (int, float):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "n":
            return float(n)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINARY_OPERATORS:
            return _BINARY_OPERATORS[type(node.op)](
                evaluate(node.left), evaluate(node.right)
            )
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY_OPERATORS:
            return _UNARY_OPERATORS[type(node.op)](evaluate(node.operand))
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCTIONS
            and len(node.args) == 1
            and not node.keywords
        ):
            return _FUNCTIONS[node.func.id](evaluate(node.args[0]))
        raise ValueError(
            f"Unsupported term {ast.dump(node)} in p-expression {expression!r}"
        )

    try:
        value = evaluate(tree)
    except (ArithmeticError, TypeError, ValueError) as e:
        raise ValueError(f"Can't evaluate p-expression {expression!r}: {e}") from e
    if isinstance(value, complex):
        raise ValueError(f"p-expression {expression!r} is not real for n={n}")
    if math.isnan(value):
        raise ValueError(f"p-expression {expression!r} is not a number for n={n}")
    return value


_SCALAR_KEYS = {
    "seed",
    "trials",
    "jobs",
    "r",
    "p",
    "c",
    "hub_pairs",
    "max_rounds",
    "stats",
    "engine",
    "alpha",
    "epsilon",
    "csv",
    "json",
    "cache",
}


def _parse_point(
    value: str, defaults: Dict[str, str], source: str, lineno: int
) -> GridPoint:
    fields = {}
    for item in value.split():
        name, separator, text = item.partition("=")
        if not separator or name not in ("n", "r", "p", "c"):
            raise SpecFileError(
                f"Grid point entries are n=, r=, p= or c=, got {item!r}", source, lineno
            )
        fields[name] = text

    if "n" not in fields:
        raise SpecFileError("Grid point without n", source, lineno)
    if "p" in fields and "c" in fields:
        raise SpecFileError("Grid point gives both p and c", source, lineno)
    try:
        n = int(fields["n"])
        r = int(fields.get("r", defaults.get("r", "3")))
    except ValueError as e:
        raise SpecFileError(f"n and r must be integers: {e}", source, lineno) from e

    if "p" not in fields and "c" not in fields:
        if "p" in defaults:
            fields["p"] = defaults["p"]
        elif "c" in defaults:
            fields["c"] = defaults["c"]
        else:
            raise SpecFileError("Grid point without p or c", source, lineno)

    try:
        if "c" in fields:
            c = evaluate_probability(fields["c"], n)
            p = c * n ** -0.5
        else:
            c = None
            p = evaluate_probability(fields["p"], n)
    except ValueError as e:
        raise SpecFileError(str(e), source, lineno) from e
    return GridPoint(n=n, r=r, p=p, c=c, lineno=lineno)


def parse_experiment_spec(
    text: str, source: str = "<spec>", default_jobs: int = 1
) -> ExperimentSpec:
    """Read an experiment spec from ``key = value`` lines.

    ``#`` starts a comment. Every key but ``point`` may appear once; ``seed`` is
    mandatory. Errors are anchored at their line.
    """
    scalars: Dict[str, str] = {}
    scalar_lines: Dict[str, int] = {}
    point_lines: List[tuple] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, separator, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not separator or not value:
            raise SpecFileError(f"Expected 'key = value', got {line!r}", source, lineno)
        if key == "point":
            point_lines.append((lineno, value))
        elif key in _SCALAR_KEYS:
            if key in scalars:
                raise SpecFileError(
                    f"{key} given twice, first on line {scalar_lines[key]}",
                    source,
                    lineno,
                )
            scalars[key] = value
            scalar_lines[key] = lineno
        else:
            raise SpecFileError(f"Unknown key {key!r}", source, lineno)

    def line_of(key: str) -> Optional[int]:
        return scalar_lines.get(key)

    def as_int(key: str, default: Optional[int]) -> Optional[int]:
        if key not in scalars:
            return default
        try:
            return int(scalars[key], 0)
        except ValueError:
            raise SpecFileError(
                f"{key} must be an integer, got {scalars[key]!r}", source, line_of(key)
            )

    def as_float(key: str, default: float) -> float:
        if key not in scalars:
            return default
        try:
            return float(scalars[key])
        except ValueError:
            raise SpecFileError(
                f"{key} must be a number, got {scalars[key]!r}", source, line_of(key)
            )

    if "seed" not in scalars:
        raise SpecFileError("seed is mandatory", source)
    seed = as_int("seed", None)
    trials = as_int("trials", 1)
    if trials < 1:
        raise SpecFileError(
            f"trials must be >= 1, got {trials}", source, line_of("trials")
        )
    jobs = as_int("jobs", default_jobs)
    if jobs < 1:
        raise SpecFileError(f"jobs must be >= 1, got {jobs}", source, line_of("jobs"))
    max_rounds = as_int("max_rounds", None)

    grid = [
        _parse_point(value, scalars, source, lineno) for lineno, value in point_lines
    ]
    if not grid:
        raise SpecFileError(
            "The experiment grid is empty, add 'point = ...' lines", source
        )

    base = ProcessConfig(
        n=grid[0].n,
        r=grid[0].r,
        p=grid[0].p,
        seed=seed,
        max_rounds=max_rounds,
        hub_pair_policy=scalars.get("hub_pairs", "exclude"),
        stats_level=scalars.get("stats", "cheap"),
        engine=scalars.get("engine", "walk"),
    )
    spec = ExperimentSpec(
        base=base,
        grid=grid,
        trials=trials,
        parallelism=jobs,
        max_rounds=max_rounds,
        alpha=as_float("alpha", 0.6),
        epsilon=as_float("epsilon", 1.0),
        csv_path=scalars.get("csv"),
        json_path=scalars.get("json"),
        cache_path=scalars.get("cache"),
    )

    for point in grid:
        problems = spec.config_for(point, 0).problems()
        if problems:
            for problem in problems:
                logger.error(f"{source}:{point.lineno}: {problem}")
            raise SpecFileError("; ".join(problems), source, point.lineno)
    logger.info(
        f"Loaded {len(grid)} grid points with {trials} trials each from {source}"
    )
    return spec


def load_experiment_spec(path: str, default_jobs: int = 1) -> ExperimentSpec:
    try:
        with open(path) as spec_file:
            text = spec_file.read()
    except OSError as e:
        raise SpecFileError(f"Can't read experiment spec: {e.strerror}", path) from e
    return parse_experiment_spec(text, source=path, default_jobs=default_jobs)
