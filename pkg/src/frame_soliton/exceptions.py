"""Exception hierarchy for frame_soliton."""

from typing import Optional


class FrameSolitonError(Exception):
    """Base exception for every error raised by the engine."""

    def __init__(self, message: str, details: Optional[str] = None):
        """Initialize FrameSolitonError.

        Args:
            message: Human-readable error message
            details: Optional additional error details, usually the location
                of the offending input (field path or index tuple)
        """
        self.message = message
        self.details = details
        super().__init__(message)

    def __str__(self) -> str:
        """Return string representation of the error."""
        if self.details:
            return f"{self.message}: {self.details}"
        return self.message


class RationalFormatError(FrameSolitonError):
    """Raised when a rational literal cannot be parsed."""

    pass


class ManifoldFormatError(FrameSolitonError):
    """Raised when a manifold document is malformed."""

    pass


class StructureError(FrameSolitonError):
    """Raised when a manifold document violates a structural invariant."""

    pass


class TensorError(FrameSolitonError):
    """Raised when a tensor operation is called with invalid arguments."""

    pass


class ParameterError(FrameSolitonError):
    """Raised when curvature or soliton parameters are not admissible."""

    pass


class VariantError(FrameSolitonError):
    """Raised when an unknown soliton variant is requested."""

    pass


class ExampleNotFoundError(FrameSolitonError):
    """Raised when an unknown builtin example is requested."""

    pass
