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
import json

import click

from triadic_process.trial_cache import cachekey_str_to_tuple


@click.command()
@click.option("--cache-file", type=click.File("r"), required=True)
@click.option("--n", "n", type=int, default=None)
@click.option("--r", "r", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.argument("search-string", default="")
def main(cache_file, n, r, seed, search_string):
    """List cached trials whose key matches the filters and contains SEARCH_STRING."""
    trial_cache = {
        cachekey_str_to_tuple(key): (key, value)
        for key, value in json.load(cache_file).items()
    }

    for cache_key, (key_str, outcome) in sorted(trial_cache.items()):
        key_n, key_r, _, key_seed, *_ = cache_key
        if n is not None and key_n != n:
            continue
        if r is not None and key_r != r:
            continue
        if seed is not None and key_seed != seed:
            continue
        if search_string in key_str:
            click.echo(
                f"{cache_key}: {outcome['final_edges_nonhub']} edges, "
                f"{outcome['rounds_run']} rounds"
            )


if __name__ == "__main__":
    main()
