"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: ContractError -> 1, InputError -> 2,
ValidationError -> 3.
"""


class MotifswarmError(Exception):
    """Base class for all errors raised by this package."""


class ContractError(MotifswarmError):
    """A caller violated a documented precondition (bad shapes, bad k, ...)."""


class InputError(MotifswarmError):
    """An input file could not be read or understood."""


class ParseError(InputError):
    """Malformed record text. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(MotifswarmError):
    """Well-formed input whose content breaks a domain invariant."""


class LinkError(ValidationError):
    """A structure annotation references a sequence id that does not exist."""
