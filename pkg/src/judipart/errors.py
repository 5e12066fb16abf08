"""Exception taxonomy.

Two broad families matter to callers: bad input (CLI exit code 2) and blown
resource limits (CLI exit code 3). Everything else is a control-flow signal or
an internal-consistency failure.
"""
from __future__ import annotations


class JudipartError(Exception):
    """Base class for all package errors."""


class InputError(JudipartError):
    """Invalid input data or parameters (CLI exit code 2)."""


class LimitError(JudipartError):
    """A configured resource limit was exceeded (CLI exit code 3)."""


# digraph construction / parsing

class LoopArcError(InputError):
    pass


class DuplicateArcError(InputError):
    pass


class VertexOutOfRangeError(InputError):
    pass


class EmptyGraphError(InputError):
    pass


class EdgeListParseError(InputError):
    pass


class PartitionError(InputError):
    """A claimed partition does not cover the vertex set, or overlaps."""


# gap solver

class XTooLargeError(LimitError):
    """e(X) > 0 with |X| above the exhaustive-search limit."""


class StateLimitError(LimitError):
    """Subset-sum table would exceed the configured state budget."""


# oracle

class TooLargeError(LimitError):
    pass


# engine

class HugeSetEvenError(JudipartError):
    """Huge-vertex count is even; structured candidates are undefined."""


# certify

class NotApplicableError(JudipartError):
    """A check was requested outside its regime."""


class IdentityViolationError(JudipartError):
    """A bookkeeping identity that must hold by construction failed."""


# generators

class GenParamError(InputError):
    """Generator parameters are out of range or infeasible."""


class EvenOrderError(GenParamError):
    """An odd clique order was required."""


class TooSmallError(GenParamError):
    """Requested instance size is below the family's minimum."""


class InfeasibleParamsError(GenParamError):
    """Parameter combination cannot produce a valid instance."""


class RegularityFailureError(JudipartError):
    """A generated instance failed its own degree post-condition."""


class MinOutdegreeWarning(UserWarning):
    """Configured d exceeds the instance's actual minimum outdegree."""
