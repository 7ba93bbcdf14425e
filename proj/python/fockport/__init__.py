"""Quasi-EPR resources and number-sum teleportation of coherent states."""

from ._fockport import (
    DomainError,
    SpecError,
    UnreachableOutcome,
    __version__,
    average_fidelity,
    beta_q,
    coherent_coefficients,
    fidelity,
    fidelity_bound,
    figure,
    find_beta_q,
    high_fidelity_region,
    outcomes,
    quality,
    resource,
    rotate,
    wigner_d,
    wigner_d_column,
)

__all__ = [
    "DomainError",
    "SpecError",
    "UnreachableOutcome",
    "__version__",
    "average_fidelity",
    "beta_q",
    "coherent_coefficients",
    "fidelity",
    "fidelity_bound",
    "figure",
    "find_beta_q",
    "high_fidelity_region",
    "outcomes",
    "quality",
    "resource",
    "rotate",
    "wigner_d",
    "wigner_d_column",
]
