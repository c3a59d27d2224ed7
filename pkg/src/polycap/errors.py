"""Exception hierarchy shared by all polycap modules."""


class PolycapError(Exception):
    """Base class for every error raised by polycap."""


class InvalidGeometry(PolycapError, ValueError):
    pass


class InvalidParameter(PolycapError, ValueError):
    pass


class DomainError(PolycapError, ValueError):
    """Argument outside the domain of an analytic formula."""


class PointOnBoundary(PolycapError, ValueError):
    pass


class GeometryDegenerate(PolycapError, ValueError):
    """Two distinct quadrature nodes landed on the same point."""


class SolverFailure(PolycapError, RuntimeError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ValidationFailed(PolycapError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
