"""Exception hierarchy shared across the package."""


class PTChainError(Exception):
    """Base class for all errors raised by ptchain."""


class UnsupportedDimensionError(PTChainError, ValueError):
    """Dimension outside 2..11, where no closed-form criteria exist."""


class InconsistencyError(PTChainError, RuntimeError):
    """Two routes that must agree did not (broken builder, failed certificate)."""


class AnsatzDomainError(PTChainError, ValueError):
    """A strong-coupling ansatz parameter left the interval [0, 1]."""


class ReparametrizationError(PTChainError, ValueError):
    """The J=3 reparametrization needs B = P**2 - Q > 0."""


class RootFindingError(PTChainError, ArithmeticError):
    def __init__(self, message, poly=None):
        super().__init__(message)
        self.poly = poly


class NoBoundaryFound(PTChainError):
    def __init__(self, message, direction=None, r_max=None):
        super().__init__(message)
        self.direction = direction
        self.r_max = r_max


class DepSolveError(PTChainError, ArithmeticError):
    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket
