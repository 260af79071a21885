"""Dimensional analysis, Buckingham Pi extraction and invariant statistics."""

from .errors import DimstatError
from .quantity import (
    DIMENSIONLESS,
    Dimension,
    Quantity,
    ScaleKind,
    Unit,
    UnitRegistry,
    default_registry,
)

__version__ = "0.1.0"

__all__ = [
    "DIMENSIONLESS",
    "Dimension",
    "DimstatError",
    "Quantity",
    "ScaleKind",
    "Unit",
    "UnitRegistry",
    "default_registry",
]
