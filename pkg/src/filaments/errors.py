"""Exception types shared across the curve evolution engine."""


class FilamentError(Exception):
    """Base class for all engine errors."""


class DegenerateSegment(FilamentError):
    """Two consecutive curve nodes coincide (zero-length segment, mesh collapse)."""


class SingularEvaluation(FilamentError):
    """An unregularized field kernel was evaluated on (or too close to) its source curve."""

    def __init__(self, message, point_index=None):
        super().__init__(message)
        self.point_index = point_index


class CurvesTooClose(FilamentError):
    """Two curves are too close for the pairwise quadrature to be reliable."""


class NonFiniteDerivative(FilamentError):
    """The ODE right-hand side returned NaN or infinity (blow-up or mesh collapse)."""


class StepSizeUnderflow(FilamentError):
    """The adaptive step controller demanded a step below the allowed minimum."""

    def __init__(self, message, t=None, dt=None):
        super().__init__(message)
        self.t = t
        self.dt = dt
