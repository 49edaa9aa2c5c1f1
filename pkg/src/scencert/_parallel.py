"""Thread-count resolution shared by the table, refinement and Monte
Carlo drivers.  Work units are pure functions of their inputs, so results
never depend on how many workers execute them."""

from __future__ import annotations

import os

_MAX_DEFAULT_WORKERS = 32


def resolve_threads(threads: int | None) -> int:
    """Map a user-supplied cap (None = all available) to a worker count."""
    if threads is None:
        return min(os.cpu_count() or 1, _MAX_DEFAULT_WORKERS)
    if threads < 1:
        raise ValueError(f"thread count must be >= 1, got {threads}")
    return threads
