"""Exception hierarchy. Each class also derives from the matching builtin."""


class GroverError(Exception):
    pass


class InvalidDimensionError(GroverError, ValueError):
    pass


class UnsupportedDimensionError(GroverError, ValueError):
    """Operation needs N = 2**k (explicit Walsh-Hadamard circuit)."""


class BasisIndexError(GroverError, IndexError):
    pass


class NormError(GroverError, ValueError):
    pass


class PhaseDomainError(GroverError, ValueError):
    pass


class SingularPhaseError(PhaseDomainError):
    """sin(phi/2) == 0, so no finite iteration count exists."""


class InfeasibleTargetError(GroverError, ValueError):
    def __init__(self, message, ceiling=None):
        super().__init__(message)
        self.ceiling = ceiling


class BelowInitialError(InfeasibleTargetError):
    """Target probability does not exceed the J=0 value 1/N."""


class FixtureError(GroverError, ValueError):
    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
