"""Exception types shared across the package."""


class SvhError(Exception):
    """Base class for all package-specific errors."""


class ParseError(SvhError):
    """Malformed rule-DSL input; carries the 1-based source position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)


class DuplicateRule(ParseError):
    """A bracket rule was given twice for the same ordered family pair."""


class UnknownFamily(SvhError):
    """A basis element or rule refers to a family the algebra does not declare."""


class InvalidAlgebra(SvhError):
    """Structurally inconsistent algebra, e.g. a diagonal rule that cannot be
    antisymmetric although the closure flag is set."""


class SubspaceNotContained(SvhError):
    """quotient_basis was given a subspace vector outside the ambient span."""


class OutOfWindow(SvhError):
    """A basis element lies outside the truncation window of a form."""


class NotACocycle(SvhError):
    """The form handed to the normalizer violates the cocycle system."""


class InnerBoundExceedsWindow(SvhError):
    """Requested inner reporting bound is larger than the solve window."""


class ConfigError(SvhError):
    """Invalid command-line configuration."""
