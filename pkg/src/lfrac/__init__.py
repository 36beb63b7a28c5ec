"""Numerics for the function L_{alpha,beta}, stable densities and the fractional-calculus operator algebra built on them."""

from . import halfline, holo, lfunc, quadrature, stable
from .errors import (
    ContourError,
    ConvergenceError,
    DomainError,
    IllConditionedError,
    LfracError,
    ParameterError,
    PoleError,
    SeriesDivergenceError,
    UnsupportedRegimeError,
)
from .lfunc import LParams, Method
from .quadrature import DEFAULT_SPEC, OPERATOR_SPEC, QuadSpec

__version__ = "0.1.0"

__all__ = [
    "halfline",
    "holo",
    "lfunc",
    "quadrature",
    "stable",
    "LParams",
    "Method",
    "QuadSpec",
    "DEFAULT_SPEC",
    "OPERATOR_SPEC",
    "LfracError",
    "DomainError",
    "ParameterError",
    "IllConditionedError",
    "PoleError",
    "ContourError",
    "UnsupportedRegimeError",
    "SeriesDivergenceError",
    "ConvergenceError",
]
