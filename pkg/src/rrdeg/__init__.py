"""Rayleigh-Ritz degrees of projective varieties and numerical eigenpoint checks."""

from .errors import (DegenerateInput, InternalError, InvalidArgument, NotFound, NumericFailure,
                     UnsupportedParameter)
from .formulas import compute

__all__ = [
    "compute",
    "DegenerateInput",
    "InternalError",
    "InvalidArgument",
    "NotFound",
    "NumericFailure",
    "UnsupportedParameter",
]
