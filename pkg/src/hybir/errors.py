"""Exception hierarchy. InputError maps to CLI exit code 2, everything else to 1."""


class HybirError(Exception):
    pass


class InputError(HybirError):
    """Bad user input: files, flags, malformed graph data."""


class ParseError(InputError):
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class FormatError(InputError):
    pass


class DomainError(InputError):
    pass


class ContractViolation(HybirError):
    """An internal precondition was violated; indicates a bug, not bad input."""
