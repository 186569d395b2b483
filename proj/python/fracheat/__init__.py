"""Python front end of the fracheat pseudospectral lab."""

import json

from ._core import (
    BudgetError,
    ConfigError,
    DomainError,
    FracheatError,
    IoError,
    ResolutionError,
    __version__,
    besov_norm,
    critical_regularity,
    duhamel_kernel,
    experiment_names,
    fractional_symbol,
    modulation_growth_bound,
    run_experiment_json,
    semigroup,
    tail_bound,
    theta,
)


def run_experiment(name, **params):
    """Runs a named experiment and returns its record as a dict."""
    return json.loads(run_experiment_json(name, {k: str(v) for k, v in params.items()}))


__all__ = [
    "BudgetError",
    "ConfigError",
    "DomainError",
    "FracheatError",
    "IoError",
    "ResolutionError",
    "__version__",
    "besov_norm",
    "critical_regularity",
    "duhamel_kernel",
    "experiment_names",
    "fractional_symbol",
    "modulation_growth_bound",
    "run_experiment",
    "semigroup",
    "tail_bound",
    "theta",
]
