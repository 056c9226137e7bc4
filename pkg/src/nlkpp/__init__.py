"""Finite-difference solver and verification tools for the nonlocal
Fisher-KPP equation u_t = Lap u + u^alpha (1 - int u) with Neumann
boundary conditions."""
from .core import (
    CharacteristicBlock,
    Constant,
    FromFile,
    GridSpec,
    HeatEigenmode,
    MassSeries,
    PolyProductCase1,
    ScalarField,
    SimParams,
    build_field,
    build_grid,
)
from .runner import simulate

__version__ = "0.1.0"

__all__ = [
    "CharacteristicBlock",
    "Constant",
    "FromFile",
    "GridSpec",
    "HeatEigenmode",
    "MassSeries",
    "PolyProductCase1",
    "ScalarField",
    "SimParams",
    "build_field",
    "build_grid",
    "simulate",
]
