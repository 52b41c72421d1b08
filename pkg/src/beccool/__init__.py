"""Steady-state cooling of a mechanical oscillator by magnetically trapped
Rb-87 condensate atoms: hyperfine levels, coupling chain, out-coupling rate,
closed-form steady state, and an exact truncated-Fock master-equation oracle.
"""

from ._version import VERSION as __version__
from .constants import CONST, PhysicalConstants
from .errors import BeccoolError, ConfigError, DomainError, OracleError

__all__ = [
    "__version__",
    "CONST",
    "PhysicalConstants",
    "BeccoolError",
    "ConfigError",
    "DomainError",
    "OracleError",
]
