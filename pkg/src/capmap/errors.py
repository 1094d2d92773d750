"""Exception hierarchy shared by all capmap modules."""


class CapmapError(Exception):
    """Base class for every error raised by capmap."""


class DomainError(CapmapError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class BranchCutError(DomainError):
    """A principal-branch power would be evaluated across its cut."""


class DegenerateTriangleError(DomainError):
    """Side lengths violate the strict triangle inequality."""


class NumericalError(CapmapError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""


class ConvergenceError(NumericalError):
    """Series or iteration did not converge within its limits."""


class QuadratureError(NumericalError):
    """Quadrature refinement limit reached above tolerance."""


class BranchStepError(NumericalError):
    """Argument continuation took a step of pi/2 or more."""
