"""
Exception hierarchy for chordlab.

Every public operation raises one of these; the CLI turns them into exit codes.
"""

from chordlab.constants import EXIT_CAPACITY, EXIT_TIMEOUT, EXIT_USAGE, EXIT_VERIFICATION


class ChordLabError(Exception):
    """Base class. `exit_code` is what the CLI returns when this escapes a command."""

    exit_code = EXIT_USAGE

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = context

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "message": str(self),
            **self.context,
        }


class UsageError(ChordLabError):
    exit_code = EXIT_USAGE


class DomainError(UsageError, ValueError):
    """Argument outside the domain of an operation."""


class CapacityError(ChordLabError):
    exit_code = EXIT_CAPACITY


class ContractViolation(ChordLabError, RuntimeError):
    """An operation was called in a state its contract excludes."""


class VerificationError(ChordLabError):
    exit_code = EXIT_VERIFICATION


class SimulationTimeoutError(ChordLabError):
    exit_code = EXIT_TIMEOUT
