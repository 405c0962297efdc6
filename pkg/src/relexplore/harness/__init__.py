"""Experiment orchestration and result export."""
from .aggregate import GridMismatchError, Series, SeriesPoint, aggregate, find_runs, mean_se, write_aggregate
from .config import METHODS, ConfigError, ExperimentConfig
from .run import (
    CurvePoint,
    RunResult,
    TaskOutcome,
    curve_csv,
    evaluate_operators,
    load_operators,
    read_curve,
    run,
    run_experiment,
    write_result,
)

__all__ = [
    "METHODS",
    "ConfigError",
    "CurvePoint",
    "ExperimentConfig",
    "GridMismatchError",
    "RunResult",
    "Series",
    "SeriesPoint",
    "TaskOutcome",
    "aggregate",
    "curve_csv",
    "evaluate_operators",
    "find_runs",
    "load_operators",
    "mean_se",
    "read_curve",
    "run",
    "run_experiment",
    "write_aggregate",
    "write_result",
]
