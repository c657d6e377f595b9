from typing import Optional, Tuple


class DenoiseError(Exception):
    """Base class for every error raised by the denoising toolkit."""


class ImageFormatError(DenoiseError):
    """Malformed or unsupported PGM/PPM header."""


class UnsupportedDepthError(ImageFormatError):
    """Raised when a raster declares a maxval other than 255."""


class ImageIOError(DenoiseError, OSError):
    """Truncated payloads, unreadable inputs and unwritable outputs."""


class DomainError(DenoiseError, ValueError):
    """A value lies outside the domain an operation accepts."""


class ShapeError(DenoiseError, ValueError):
    """Dimension mismatch between images, planes or kernels."""


class CompletenessError(DenoiseError, ValueError):
    """Measurement operators do not satisfy sum(M^H M) == I."""


class CBSViolationError(DomainError):
    """
    A state that should be a computational basis state is a superposition.
    `location` carries the (row, col) of the offending state inside a plane.
    """

    def __init__(self, message: str, location: Optional[Tuple[int, int]] = None):
        if location is not None:
            message = f"{message} at (row={location[0]}, col={location[1]})"
        super().__init__(message)
        self.location = location
