"""Exception hierarchy. Each class maps to one CLI exit code."""

from __future__ import annotations


class ModFactorError(Exception):
    exit_code = 1


class Infeasible(ModFactorError):
    """A clean negative answer: the requested object does not exist.

    ``certificate`` carries whatever witness the producer had (a violating
    vertex set, a partition, ...), or ``None``.
    """

    exit_code = 1

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class HypothesisError(ModFactorError):
    """A theorem hypothesis was checked and found not to hold."""

    exit_code = 2

    def __init__(self, message: str, clause: str = ""):
        super().__init__(message)
        self.clause = clause or message


class SolverGaveUp(ModFactorError):
    """Search budget exhausted before either a witness or a refutation."""

    exit_code = 3


class InputError(ModFactorError, ValueError):
    exit_code = 4


class LimitExceeded(InputError):
    """Instance is above the size cap of an exact routine."""
