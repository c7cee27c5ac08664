"""Exception hierarchy shared by every module."""


class ArgshiftError(Exception):
    """Base class for all library errors."""


class InputError(ArgshiftError, ValueError):
    """Malformed input: bad indices, dimension mismatches, unparsable files."""


class SingularPointError(ArgshiftError):
    """The point is singular where a regular point is required."""


class RecursionBroken(ArgshiftError):
    """The linear system for the next formal-invariant term is inconsistent."""


class LineInSingError(ArgshiftError):
    """Every point of the line x + lambda*a is singular."""


class CheckFailed(ArgshiftError):
    """A mathematical consistency check did not hold."""
