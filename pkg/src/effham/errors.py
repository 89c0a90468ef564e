"""Exception types raised by the toolkit."""


class EffHamError(Exception):
    """Base class for all toolkit errors."""


class NonHermitianInput(EffHamError, ValueError):
    pass


class SingularBlock(EffHamError, ArithmeticError):
    pass


class SpectrumMismatch(EffHamError, ValueError):
    pass


class ResonantDenominator(EffHamError, ArithmeticError):
    """A perturbative denominator fell below the configured tolerance.

    ``where`` identifies the offending term: a (i, I, gap) triple for the
    resolvent, or a route name for the closed-form oracles.
    """

    def __init__(self, message, where=None, gap=None):
        super().__init__(message)
        self.where = where
        self.gap = gap


class NoConvergence(EffHamError, RuntimeError):
    pass


class NoPeak(EffHamError, ValueError):
    pass


class DimensionCap(EffHamError, ValueError):
    pass


class ConfigError(EffHamError, ValueError):
    pass


class NonPositiveJosephson(EffHamError, ValueError):
    pass


class ZeroDetuning(EffHamError, ZeroDivisionError):
    pass
