"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operand dimensions do not line up."""


class InvarianceError(ValueError):
    """A subspace fails an invariance requirement.

    Carries the offending residual norm in ``violation``.
    """

    def __init__(self, message: str, violation: float):
        super().__init__(message)
        self.violation = violation


class CoverError(ValueError):
    """An open cover misses part of a spectrum.

    ``sphere`` is the uncovered eigen-sphere.
    """

    def __init__(self, message: str, sphere):
        super().__init__(message)
        self.sphere = sphere


class PoleError(ValueError):
    """Evaluation was requested on top of a spectral sphere."""


class NumericalError(RuntimeError):
    """A numerical routine failed to converge or refused an ill-conditioned problem."""
