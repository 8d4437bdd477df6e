"""Exception hierarchy shared by every layer of the package."""


class BreuilError(Exception):
    """Base class for all library errors."""


class ConfigMismatch(BreuilError):
    """Operands belong to different arithmetic contexts."""


class NotDivisible(BreuilError):
    """Exact division by p was requested on a value not divisible by p."""


class PrecisionExhausted(BreuilError):
    """An operation would leave a value with no p-adic digits."""


class NotAUnit(BreuilError):
    """Inversion was requested for a non-unit."""


class NonTermination(BreuilError):
    """An iteration exceeded its proven bound; indicates an internal bug."""


class InternalPrecisionExceeded(BreuilError):
    """A computation needs more precision than the context provides."""


class NotInFil1(BreuilError):
    """A divided Frobenius was applied outside the first filtration step."""


class CertificateFailure(BreuilError):
    """A torsion presentation certificate identity does not hold."""


class MissingWitness(BreuilError):
    """A torsion element has no filtration witness but one is required."""


class LiftFailure(BreuilError):
    """No filtration-compatible lift is available at the working precision."""


class InvalidExtensionData(BreuilError):
    """Extension data handed to the resolver is inconsistent."""


class ParseError(BreuilError):
    """Malformed document text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class SemanticError(BreuilError):
    """Well-formed document text describing invalid data."""
