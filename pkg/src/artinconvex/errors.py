"""Exception hierarchy shared by all modules."""


class ArtinConvexError(Exception):
    """Base class for errors raised by this package."""


class GraphParseError(ArtinConvexError, ValueError):
    """Malformed Coxeter graph description."""


class WordParseError(ArtinConvexError, ValueError):
    """Malformed word, or a word naming an unknown generator."""


class PreconditionError(ArtinConvexError, ValueError):
    """An operation was called outside its domain."""


class InfiniteGroupError(PreconditionError):
    """A finite Coxeter group was required."""


class ElementBoundError(ArtinConvexError):
    """An enumeration exceeded its configured element bound."""


class OracleUnavailableError(ArtinConvexError):
    """No exact equality oracle is known for this Artin group."""
