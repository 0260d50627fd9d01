"""Soft-photon dressing factors, IR-finiteness checks and charged-qubit entanglement."""

from softdress.errors import (
    BoundViolationError,
    ConfigError,
    ConfigSyntaxError,
    ContractViolation,
    DomainError,
    SoftDressError,
    UnknownKeyError,
)
from softdress.kinematics import FourVector, Particle, make_on_shell, minkowski_dot, relative_speed

__version__ = "0.1.0"

__all__ = [
    "BoundViolationError",
    "ConfigError",
    "ConfigSyntaxError",
    "ContractViolation",
    "DomainError",
    "FourVector",
    "Particle",
    "SoftDressError",
    "UnknownKeyError",
    "make_on_shell",
    "minkowski_dot",
    "relative_speed",
    "__version__",
]
