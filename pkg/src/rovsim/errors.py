"""Exception types shared across the simulation library."""


class RovsimError(Exception):
    """Base class for all library-specific errors."""


class SingularAttitude(RovsimError):
    """Pitch entered the guard band around +/-pi/2 where the Euler-angle
    rate map is not invertible. Treated as a hard simulation fault."""


class InvalidModel(RovsimError):
    """Vehicle model parameters violate a physical invariant."""


class DegenerateLayout(RovsimError):
    """Thruster layout is malformed or cannot span all six wrench axes."""


class FrameMismatch(RovsimError):
    """Wrenches expressed in different frames were combined."""


class UnknownTask(RovsimError):
    """Task identifier is not one of the defined control tasks."""


class NonFiniteState(RovsimError):
    """Simulation state left the space of finite numbers."""


class EmptyWindow(RovsimError):
    """Requested evaluation window contains no samples."""


class MismatchedRuns(RovsimError):
    """Logs passed to a comparison do not describe comparable runs."""


class SchemaMismatch(RovsimError):
    """CSV content does not match the trajectory log schema."""


class ParseError(RovsimError):
    """Configuration text could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(RovsimError):
    """A configuration value failed validation."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
