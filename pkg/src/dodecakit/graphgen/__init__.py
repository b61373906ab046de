"""Seed-and-extend generation of candidate tame maps, archives and replay."""

from .archive import (
    Archive,
    Comparison,
    DuplicateEntry,
    compare,
    enumerate_archive,
    read_archive,
    write_archive,
)
from .generate import (
    GenParams,
    InvalidParams,
    Partial,
    ReplayResult,
    ResourceBudgetExceeded,
    SearchState,
    bracelet_key,
    enumerate_maps,
    extend,
    initial_state,
    prune_reason,
    replay,
    run,
    seeds,
    squander_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
