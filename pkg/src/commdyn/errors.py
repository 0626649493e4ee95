"""Exception hierarchy. CLI maps NumericError -> exit 1, InputError -> exit 2."""


class CommdynError(Exception):
    """Base class for all package errors."""


class InputError(CommdynError):
    """Bad configuration, malformed file, or missing input."""


class ParseError(InputError):
    """Malformed text input; carries a line number where applicable."""


class NumericError(CommdynError):
    """Runtime numerical failure (blow-up, guard violation, ...)."""


class BlowUpError(NumericError):
    """Non-finite state detected during integration."""

    def __init__(self, step: int, message: str = ""):
        self.step = step
        super().__init__(message or f"non-finite state at step {step}")


class DomainViolationError(NumericError):
    """A state left the domain on which the expansion is valid."""


class ImagResidueError(NumericError):
    """Imaginary residue of a complex series exceeded the guard threshold."""


class MemoryGuardError(NumericError):
    """Refused to materialize an object above the configured size cap."""


class SingularityError(NumericError):
    """A coupling kernel is singular on the requested domain."""
