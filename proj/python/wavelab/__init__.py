"""Pseudospectral lab for the inhomogeneous nonlinear wave equation.

Thin wrapper over the compiled ``_core`` module; see ``wavelab._core`` for the
full function list.
"""

from ._core import (  # noqa: F401
    ConfigError,
    DomainError,
    EligibilityError,
    Error,
    ShapeError,
    __version__,
    classify_pair,
    config_keys,
    coordinates,
    default_gamma,
    eligible,
    energy,
    exponent_report,
    linear_solve,
    parse_config,
    run,
    sobolev_seminorm,
    solve_picard,
    theta1,
    theta2,
)
