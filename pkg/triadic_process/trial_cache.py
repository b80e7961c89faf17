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
from threading import RLock
from typing import TYPE_CHECKING, Dict, Optional, Tuple

from metricq import get_logger

from .process.state import ProcessConfig

if TYPE_CHECKING:
    from .experiments import TrialOutcome

logger = get_logger(__name__)

CacheKey = Tuple[int, int, str, int, int, str, str, str]


def cachekey_tuple_to_str(cache_key_tuple: CacheKey) -> str:
    return "-*-".join(str(part) for part in cache_key_tuple)


def cachekey_str_to_tuple(cache_key_str: str) -> CacheKey:
    n, r, p, seed, max_rounds, hub_pairs, stats, engine = cache_key_str.split("-*-", 7)
    return int(n), int(r), p, int(seed), int(max_rounds), hub_pairs, stats, engine


def key_for(config: ProcessConfig) -> CacheKey:
    # repr round-trips the float exactly
    return (
        config.n,
        config.r,
        repr(float(config.p)),
        config.seed,
        config.max_rounds,
        config.hub_pair_policy.value,
        config.stats_level.value,
        config.engine.value,
    )


class TrialCache:
    """Finished trial outcomes on disk, keyed by everything that determines them.

    The file is read once on construction; an unreadable file starts an empty cache.
    """

    def __init__(self, filename: Optional[str] = None):
        self._filename = filename
        self._lock = RLock()
        with self._lock:
            self._entries: Dict[CacheKey, Dict] = {}
            if filename:
                try:
                    with open(filename) as cache_file:
                        self._entries = {
                            cachekey_str_to_tuple(key): value
                            for key, value in json.load(cache_file).items()
                        }
                except FileNotFoundError:
                    logger.debug(f"No trial cache at {filename} yet")
                except (OSError, ValueError):
                    logger.warning(
                        "Can't read trial cache file. Starting with empty cache!",
                        exc_info=True,
                    )
        logger.debug(f"Trial cache holds {len(self._entries)} outcomes")

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, config: ProcessConfig) -> Optional["TrialOutcome"]:
        from .experiments import TrialOutcome

        with self._lock:
            value = self._entries.get(key_for(config))
        return TrialOutcome.from_dict(value) if value is not None else None

    def put(self, config: ProcessConfig, outcome: "TrialOutcome"):
        with self._lock:
            self._entries[key_for(config)] = outcome.as_dict()

    def flush(self):
        if not self._filename:
            return
        with self._lock:
            try:
                with open(self._filename, "w") as cache_file:
                    json.dump(
                        {
                            cachekey_tuple_to_str(key): value
                            for key, value in self._entries.items()
                        },
                        cache_file,
                        sort_keys=True,
                    )
            except OSError:
                logger.warning("Can't write trial cache file!", exc_info=True)
