"""Exception types raised by opmono."""


class OpmonoError(Exception):
    """Base class for all library errors."""


class NotHermitian(OpmonoError, ValueError):
    pass


class DimensionMismatch(OpmonoError, ValueError):
    pass


class EigenNotConverged(OpmonoError, ArithmeticError):
    def __init__(self, off_norm, sweeps):
        self.off_norm = off_norm
        self.sweeps = sweeps
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )


class AdmissibilityViolation(OpmonoError, ValueError):
    """The function does not satisfy the positivity / increase / log-concavity conditions."""


class DomainError(OpmonoError, ValueError):
    pass


class SpectrumOutOfDomain(DomainError):
    def __init__(self, eigenvalue, gamma):
        self.eigenvalue = eigenvalue
        self.gamma = gamma
        super().__init__(f"eigenvalue {eigenvalue!r} is not greater than gamma={gamma!r}")


class DegeneratePair(OpmonoError, ValueError):
    pass


class NoNegativeDirection(OpmonoError, ArithmeticError):
    pass


class WitnessSearchFailed(OpmonoError, ArithmeticError):
    pass


class NumericallyScalar(OpmonoError, ValueError):
    pass


class NotCommuting(OpmonoError, ValueError):
    pass


class NotOrdered(OpmonoError, ValueError):
    pass


class CertificateFailed(OpmonoError, ArithmeticError):
    """A freshly built certificate did not survive re-evaluation."""
