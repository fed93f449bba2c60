"""Tempered stable CARMA simulation."""

from ._core import (
    CarmaDecomposition,
    ConfigError,
    DomainError,
    Error,
    TemperingModel,
    TruncatedMoments,
    ValidationError,
    decompose,
    emit_density_data,
    error_bound,
    make_pcts,
    make_pgts,
    make_ptss,
    run_cli,
    sample_skeleton,
    simulate_path,
    specfun,
    truncated_moments,
)

__all__ = [
    "CarmaDecomposition",
    "ConfigError",
    "DomainError",
    "Error",
    "TemperingModel",
    "TruncatedMoments",
    "ValidationError",
    "decompose",
    "emit_density_data",
    "error_bound",
    "make_pcts",
    "make_pgts",
    "make_ptss",
    "run_cli",
    "sample_skeleton",
    "simulate_path",
    "specfun",
    "truncated_moments",
]
