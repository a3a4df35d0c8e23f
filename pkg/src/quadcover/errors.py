"""Exception hierarchy shared by every module.

Each class maps onto one CLI exit code (see ``quadcover.cli``).
"""


class QuadcoverError(Exception):
    exit_code = 1


class DomainError(QuadcoverError, ValueError):
    """Argument outside the mathematical domain of a formula."""

    exit_code = 2


class ShapeError(QuadcoverError, ValueError):
    """Malformed block system (wrong block size, out-of-range element, ...)."""

    exit_code = 2


class UnsupportedParameters(QuadcoverError):
    exit_code = 3


class MissingIngredient(QuadcoverError):
    exit_code = 4


class InvalidIngredient(QuadcoverError):
    exit_code = 1


class PreconditionFailed(QuadcoverError):
    exit_code = 1


class SearchExhausted(QuadcoverError):
    exit_code = 3
