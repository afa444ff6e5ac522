"""Exact tools for resonance of skew matrices of linear forms, Pfaffian ideals,
Plücker ideals and Betti-table arithmetic."""

from .errors import (
    ConsistencyError,
    FieldMismatchError,
    InputFormatError,
    PreconditionError,
    ResonanceKitError,
    RingMismatchError,
    SmallMatrixError,
)
from .exactalg import GF, QQ, DenseMatrix, PrimeField
from .polyring import Poly, Ring, quadric_rank
from .skewpfaff import SkewLinearMatrix, pfaffian, principal_pfaffians

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "DenseMatrix",
    "FieldMismatchError",
    "GF",
    "InputFormatError",
    "Poly",
    "PreconditionError",
    "PrimeField",
    "QQ",
    "ResonanceKitError",
    "Ring",
    "RingMismatchError",
    "SkewLinearMatrix",
    "SmallMatrixError",
    "pfaffian",
    "principal_pfaffians",
    "quadric_rank",
]
