"""Relativistic coherent states of a spinless particle in 1+1 dimensions.

Units are hbar = m = c = 1 with r = sigma / lambda_c. Canonical states take
``pbar`` as sigma*p/hbar; the relativistic families measure momenta in mc.
"""

from ._relcoh import (
    DomainError,
    Method,
    MomentReport,
    RelcohError,
    canonical,
    figure,
    lorentzian,
    poincare,
    specfun,
    verify,
)

__all__ = [
    "DomainError",
    "Method",
    "MomentReport",
    "RelcohError",
    "canonical",
    "figure",
    "lorentzian",
    "poincare",
    "specfun",
    "verify",
]
