"""Exception hierarchy shared by every module."""


class ConvGeomError(Exception):
    """Base class for all errors raised by convgeom."""


class NotAPartialOrder(ConvGeomError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"relation is not antisymmetric/acyclic: cycle through {self.cycle}")


class NotALattice(ConvGeomError):
    def __init__(self, a, b, missing):
        self.pair = (a, b)
        self.missing = missing
        super().__init__(f"elements {a} and {b} have no {missing}")


class UnknownElement(ConvGeomError, KeyError):
    def __str__(self):
        return f"unknown element: {self.args[0]!r}"


class EmptyInterval(ConvGeomError, ValueError):
    pass


class ElementOutOfGround(ConvGeomError, ValueError):
    pass


class PreconditionFailed(ConvGeomError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotACover(ConvGeomError, ValueError):
    pass


class BoundTooSmall(ConvGeomError, ValueError):
    pass


class BoundExceeded(ConvGeomError, ValueError):
    pass


class OracleInconsistent(ConvGeomError):
    pass


class PropertyNeedsMeetOracle(ConvGeomError):
    pass


class UnknownInstance(ConvGeomError, KeyError):
    def __str__(self):
        return f"unknown instance: {self.args[0]!r}"


class ParseError(ConvGeomError, ValueError):
    pass
