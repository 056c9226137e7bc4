"""Exception hierarchy shared across the package."""


class NlkppError(Exception):
    """Base class for all package errors."""


class NonIntegralRatio(NlkppError, ValueError):
    pass


class CorruptField(NlkppError, ValueError):
    """Field contains NaN/Inf or has the wrong shape."""


class FileError(NlkppError, OSError):
    pass


class InvalidOrder(NlkppError, ValueError):
    pass


class NegativePower(NlkppError, ValueError):
    """Non-integer power requested of a clearly negative nodal value."""


class ZeroPivot(NlkppError, ArithmeticError):
    pass


class BlowupDetected(NlkppError):
    def __init__(self, t, max_u, message=None):
        self.t = t
        self.max_u = max_u
        super().__init__(message or f"blow-up detected at t={t:.6g} (max u = {max_u:.6g})")


class CflViolation(NlkppError, ValueError):
    pass


class MassMismatch(NlkppError, ValueError):
    pass


class InsufficientData(NlkppError, ValueError):
    pass


class EmptySeries(NlkppError, ValueError):
    pass


class MisalignedRuns(NlkppError, ValueError):
    pass


class ParseError(NlkppError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class ValidationError(NlkppError, ValueError):
    pass


class UnknownPreset(NlkppError, KeyError):
    pass
