"""Spectra and wavefunctions of the generalized MICZ-Kepler system in flat
space, on the three-sphere and on the three-hyperboloid."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .params import (
    DerivedNotation,
    Geometry,
    HalfInt,
    NoBoundStateError,
    PhysParams,
    QuantumNumbers,
    ValidationError,
    derive_notation,
    enumerate_states,
    validate,
)

__all__ = [
    "BACKEND",
    "DerivedNotation",
    "Geometry",
    "HalfInt",
    "NoBoundStateError",
    "PhysParams",
    "QuantumNumbers",
    "ValidationError",
    "derive_notation",
    "enumerate_states",
    "validate",
]
