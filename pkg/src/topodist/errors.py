"""Exception hierarchy shared by the library and the CLI."""


class TopodistError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(TopodistError, ValueError):
    """A parameter is outside its documented domain."""


class DiagramValidationError(TopodistError, ValueError):
    """A diagram contains a point with birth > death or a non-finite coordinate."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class ParseError(TopodistError, ValueError):
    """A file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceLimitError(TopodistError, RuntimeError):
    """The requested computation exceeds a configured size guard."""
