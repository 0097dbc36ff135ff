"""Exception hierarchy.

Each class carries the CLI exit code it maps to, so the command-line front
end never has to guess.
"""


class HellyError(Exception):
    exit_code = 1


class InputError(HellyError, ValueError):
    """Malformed or inconsistent input (bad literal, wrong dimension, ...)."""

    exit_code = 2


class FieldMismatchError(InputError, TypeError):
    pass


class PreconditionError(InputError):
    """An operation was called outside its documented contract."""


class BudgetExceeded(HellyError):
    exit_code = 3


class WitnessNotFound(HellyError):
    """A search that was expected to produce a certificate came back empty."""

    exit_code = 1


class VerificationError(HellyError):
    """A constructed object failed its own self-check."""

    exit_code = 1


class ContradictionError(HellyError):
    """A computation refuted one of the theorems the package certifies.

    Never expected; carries whatever evidence triggered it in ``evidence``.
    """

    exit_code = 4

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence
