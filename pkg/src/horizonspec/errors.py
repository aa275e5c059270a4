"""Exception hierarchy shared by every module of the package."""


class HorizonSpecError(Exception):
    """Base class for all package errors."""


class InvalidPhysicalParams(HorizonSpecError, ValueError):
    pass


class NonPositiveMass(InvalidPhysicalParams):
    pass


class HorizonAbsent(InvalidPhysicalParams):
    """m^2 < a^2 + e^2: the horizon polynomial has no real root."""


class DomainError(HorizonSpecError, ValueError):
    """Evaluation point outside [-1, 1]."""


class ConvergenceFailure(HorizonSpecError, ArithmeticError):
    pass


class TailModelRejected(ConvergenceFailure):
    pass


class NonPositiveEigenvalue(HorizonSpecError, ValueError):
    pass


class InvalidTraces(HorizonSpecError, ValueError):
    pass


class ZeroTrace(InvalidTraces):
    pass


class ChargeTooLarge(InvalidTraces):
    """The supplied charge is incompatible with the recovered horizon radius."""
