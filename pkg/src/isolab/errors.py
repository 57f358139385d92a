"""Shared exception types.

InputError maps to CLI exit code 2, PrecisionError to exit code 3.
"""


class IsolabError(Exception):
    pass


class InputError(IsolabError):
    """Malformed or mathematically invalid input."""


class PrecisionError(IsolabError):
    """A result cannot be certified at the working precision."""


class PlaceResolutionError(IsolabError):
    """The p-adic places of a field cannot be separated by slope data alone."""
