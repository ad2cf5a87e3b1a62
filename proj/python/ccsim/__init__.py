"""Cycle-level simulator of a message-driven mesh chip for dynamic graph
processing, with the matching transistor-budget design explorer.

The heavy lifting lives in the compiled extension; this package just
re-exports its public surface.
"""

from ccsim._core import (
    UNREACHED,
    ConfigError,
    GuardExceededError,
    InfeasibleDesignError,
    OracleMismatchError,
    StoreError,
    design_point,
    gen_edge_sampled,
    gen_snowball,
    levels_checksum,
    oracle_bfs,
    run_experiment,
    schedule_stats,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "UNREACHED",
    "ConfigError",
    "GuardExceededError",
    "InfeasibleDesignError",
    "OracleMismatchError",
    "StoreError",
    "design_point",
    "gen_edge_sampled",
    "gen_snowball",
    "levels_checksum",
    "oracle_bfs",
    "run_experiment",
    "schedule_stats",
    "sweep",
]
