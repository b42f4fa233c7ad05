"""Exception types shared across the package."""


class MFPeriodError(Exception):
    """Base class for all errors raised by mfperiod."""


class InvalidArgument(MFPeriodError, ValueError):
    pass


class InsufficientPrecision(MFPeriodError, ArithmeticError):
    """A result would need coefficients outside a determined window."""

    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window


class NotInvertible(MFPeriodError, ZeroDivisionError):
    pass


class MixedWeight(MFPeriodError, ValueError):
    pass


class MissingWitness(MFPeriodError, KeyError):
    def __str__(self):
        return self.args[0] if self.args else "missing witness"
