"""Exact truck-and-drone delivery toolkit (Python bindings)."""

from ._tspd import (
    Error,
    InvalidInstance,
    InvalidSetting,
    IoError,
    NoSolution,
    ParseError,
    SizeLimitExceeded,
    SolverError,
    Instance,
    ProblemSetting,
    Solution,
    brute_force,
    evaluate,
    export_lp,
    format_duration,
    format_solution,
    generate_instance,
    parse_solution,
    read_instance,
    run_benchmark,
    setting_from_id,
    solve,
    solve_milp,
    truck_only_optimum,
    write_instance,
)

__all__ = [name for name in dir() if not name.startswith("_")]
