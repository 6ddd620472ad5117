"""Exception types shared by the package.

Every error raised on purpose derives from :class:`KeyWitnessError` so that
callers (and the command line front end) can map them to exit codes.
"""


class KeyWitnessError(Exception):
    """Base class for all package errors."""

    code = "internal"
    exit_code = 5


class InputError(KeyWitnessError, ValueError):
    """Malformed or invalid input (non-finite entries, bad labels, ...)."""

    code = "input"
    exit_code = 2


class DomainError(InputError):
    """Argument outside the domain where a bound is defined."""

    code = "domain"
    exit_code = 2


class InconsistencyError(InputError):
    """Derived quantities contradict each other beyond tolerance."""

    code = "inconsistent"
    exit_code = 2


class ParseError(KeyWitnessError, ValueError):
    """A state/operator file could not be parsed."""

    code = "parse"
    exit_code = 3


class CapacityError(KeyWitnessError):
    """Requested dimension exceeds a configured cap."""

    code = "capacity"
    exit_code = 4


class InternalError(KeyWitnessError, RuntimeError):
    """Independent computations disagreed, or a solver failed."""

    code = "internal"
    exit_code = 5
