"""
Runtime configuration
---------------------
Env-driven knobs, read once at import (a `.env` in the working directory is
honoured via python-dotenv). Nothing here is required; defaults are usable.

Env
---
- LOG_LEVEL         : logging level for the library/CLI/API (default "INFO")
- FSG_DEPTH         : default render depth budget (default 12)
- FSG_MOVE_FACTOR   : rewriting budget factor; a run may use at most
                      factor * max(carets, 1) * n moves (default 10)
- FSG_SEED          : seed for randomized suites (default 42)
- FSG_CACHE_SIZE    : lru_cache size for local-action machines (default 4096)
"""

from __future__ import annotations

import logging
import os

from dotenv import load_dotenv

load_dotenv()

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
DEFAULT_DEPTH = int(os.getenv("FSG_DEPTH", "12"))
MOVE_FACTOR = int(os.getenv("FSG_MOVE_FACTOR", "10"))
DEFAULT_SEED = int(os.getenv("FSG_SEED", "42"))
CACHE_SIZE = int(os.getenv("FSG_CACHE_SIZE", "4096"))


def configure_logging(level: str | None = None) -> None:
    """Set up root logging the same way for the CLI and the API."""
    logging.basicConfig(
        level=(level or LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
