"""Exception hierarchy shared by all qrelax modules."""


class QRelaxError(ValueError):
    """Base class for every error raised by qrelax."""


# circuit core
class NonPositiveFrequency(QRelaxError):
    pass


class InvalidElement(QRelaxError):
    pass


class InvalidNetlist(QRelaxError):
    pass


class SingularNetwork(QRelaxError):
    """The nodal matrix has no usable factorization at this frequency.

    Raised for floating subnetworks and for exact lossless resonances.
    """


class InfiniteAdmittance(QRelaxError):
    """The port voltage vanished, so the port is effectively shorted."""


class UnknownElementLabel(QRelaxError, KeyError):
    pass


class ParseError(QRelaxError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


# capacitance
class NonPositiveDimension(QRelaxError):
    pass


class DegenerateLogarithm(QRelaxError):
    pass


class NonPositiveCapacitance(QRelaxError):
    pass


# relaxation
class NonPositiveCurrent(QRelaxError):
    pass


class DegenerateCancellation(QRelaxError):
    pass


class NonPositiveInductance(QRelaxError):
    pass


class LosslessEnvironment(QRelaxError):
    pass


class RegimeViolation(QRelaxError):
    pass


class InvalidParameter(QRelaxError):
    pass


# models
class NonPositiveLength(QRelaxError):
    pass
