"""Exception hierarchy shared by every subpackage.

Exit-code mapping used by the command line front end: ValidationError and
its subclasses map to exit code 1, InfeasibleError to 2, FileFormatError
and OSError to 3.
"""


class UclearnError(Exception):
    """Base class for all package errors."""


class ValidationError(UclearnError):
    """Inputs violate a documented precondition or invariant."""


class DimensionMismatchError(ValidationError):
    """Array shapes are inconsistent with the declared problem sizes."""


class ControlBoundError(ValidationError):
    """A control vector lies outside the admissible control set."""


class DynamicsResidualError(ValidationError):
    """A trajectory fails the dynamics-consistency residual check."""

    def __init__(self, step: int, residual: float, tolerance: float):
        self.step = step
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            f"dynamics residual {residual:.3e} at step {step} exceeds "
            f"tolerance {tolerance:.3e}"
        )


class OutOfRangeError(ValidationError):
    """A point fell outside the grid under the strict indexing policy."""


class DegenerateDirectionError(UclearnError):
    """The sampled direction lies in the null space of the quadratic form.

    Callers should resample the direction; the chord through the current
    point is unbounded in the level-set sense.
    """


class InfeasibleError(UclearnError):
    """No occupancy assignment satisfies the recovery constraints."""


class FileFormatError(UclearnError):
    """A structured text file could not be parsed."""

    def __init__(self, path, lineno, message):
        self.path = path
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {message}")
