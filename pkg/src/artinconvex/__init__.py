"""Convexity of standard parabolic subgroups in Coxeter and Artin groups."""

from .coxeter import CoxeterElement, CoxeterGraph, coxeter_type, normalize, parse_graph
from .errors import (
    ArtinConvexError,
    ElementBoundError,
    GraphParseError,
    InfiniteGroupError,
    OracleUnavailableError,
    PreconditionError,
    WordParseError,
)

__all__ = [
    "ArtinConvexError",
    "CoxeterElement",
    "CoxeterGraph",
    "ElementBoundError",
    "GraphParseError",
    "InfiniteGroupError",
    "OracleUnavailableError",
    "PreconditionError",
    "WordParseError",
    "coxeter_type",
    "normalize",
    "parse_graph",
]
