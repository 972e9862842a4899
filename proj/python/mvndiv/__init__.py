"""Version diversity metrics over temporal dependency graphs."""

from ._core import (
    ConfigError,
    ConvergenceError,
    DataError,
    DomainError,
    Error,
    Graph,
    LookupError,
    ParseError,
    canonical_version,
    compare_versions,
    histogram,
    quantile_type7,
    run,
    spearman,
    tukey_upper_outliers,
)

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DataError",
    "DomainError",
    "Error",
    "Graph",
    "LookupError",
    "ParseError",
    "canonical_version",
    "compare_versions",
    "histogram",
    "quantile_type7",
    "run",
    "spearman",
    "tukey_upper_outliers",
]
