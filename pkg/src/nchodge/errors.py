"""Exception hierarchy for nchodge.

Every error carries the CLI exit code it maps to, so the command layer can
translate failures without a lookup table.
"""


class NCHodgeError(Exception):
    """Base class for all nchodge errors."""

    exit_code: int = 1

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


class InversionAtZeroPrecision(NCHodgeError):
    """Raised when inverting a Novikov scalar whose leading term is not determined."""


class UnknownSymbol(NCHodgeError):
    """Raised when an element mentions a variable or symbol its ring does not declare."""


class NonconvergentSum(NCHodgeError):
    """Raised when an infinite insertion sum does not gain filtration."""


class PrecisionExhausted(NCHodgeError):
    """Raised when elimination needs a pivot below the configured precision floor."""

    exit_code = 3


class TraceNotClosed(NCHodgeError):
    """Raised when a trace functional does not vanish on Hochschild boundaries."""


class IncompatibleDf(NCHodgeError):
    """Raised when a ring morphism's Df is not compatible with the two derivations."""


class RankMismatch(NCHodgeError):
    """Raised when a candidate morphism does not fit the modules it connects."""


class NotASection(NCHodgeError):
    """Raised when a splitting is not a section of the mod-u projection."""


class DegreeMismatch(NCHodgeError):
    """Raised when a structure constant or table entry has the wrong degree."""


class ParameterOutOfRange(NCHodgeError):
    """Raised when a model or truncation parameter is outside its documented bounds."""


class NotFree(ParameterOutOfRange):
    """Raised when a matrix over a bulk ring has an image that is not a free module."""


class NotComposable(NCHodgeError):
    """Raised when a declared structure-map entry has non-composable inputs."""


class DocumentError(NCHodgeError):
    """Raised when an input document or scalar expression cannot be parsed."""

    exit_code = 2


class TooLarge(NCHodgeError):
    """Raised when a computation would exceed a configured resource cap."""

    exit_code = 4

    def __init__(self, what: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} has dimension {size}, above the cap of {cap}")
