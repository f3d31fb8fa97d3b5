"""Exception types raised across the package."""

from __future__ import annotations


class TroprezError(Exception):
    """Base class for every error raised by troprez."""


class InputError(TroprezError):
    """Malformed input data (matrix files, graph files, bad shapes)."""


class InvalidMatrix(InputError):
    pass


class InvalidSubgraph(TroprezError):
    pass


class InvalidTranspose(TroprezError):
    pass


class InvalidType(TroprezError):
    pass


class NotConnected(TroprezError):
    pass


class NotBipartite(InputError):
    pass


class TooLarge(TroprezError):
    """An exhaustive search was asked to run beyond its configured cap."""


class NoWitness(TroprezError):
    pass


class GenericityFailure(TroprezError):
    pass


class RequiresGeneric(TroprezError):
    pass


class NotGraphic(TroprezError):
    pass


class UniverseMismatch(TroprezError):
    pass


class NotSquarefree(TroprezError):
    pass


class WeightUndefined(TroprezError):
    pass


class InconsistentResult(TroprezError):
    """Two independent computations of the same invariant disagreed."""
