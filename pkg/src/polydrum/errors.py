"""Exception types shared across the package."""


class PolydrumError(Exception):
    """Base class for package-specific failures."""


class PrecisionUnachievableError(PolydrumError):
    """Raised when guard digits needed for a stable result exceed the cap."""


class BracketError(PolydrumError):
    """Raised when a root bracket does not contain a sign change."""


class SingularSystemError(PolydrumError):
    """Raised when a least-squares system is numerically rank deficient.

    The offending column index is stored in ``column``.
    """

    def __init__(self, column: int, message: str | None = None):
        self.column = column
        super().__init__(message or f"least-squares matrix is singular at column {column}")


class ConvergenceError(PolydrumError):
    """Raised when an iterative procedure fails to reach its tolerance."""


class CertificationError(PolydrumError):
    """Raised when an eigenvalue enclosure cannot be certified (eta >= 1)."""
