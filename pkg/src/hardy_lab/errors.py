"""Exception and warning types raised across the package."""


class HardyLabError(Exception):
    """Base class for all package errors."""


# circle_fft
class NonRealDensity(HardyLabError, ValueError):
    pass


class NonIntegrableLog(HardyLabError, ValueError):
    pass


class GridMismatch(HardyLabError, ValueError):
    pass


# toeplitz
class OrderTooLarge(HardyLabError, ValueError):
    pass


class DimMismatch(HardyLabError, ValueError):
    pass


class NoSpectralGap(UserWarning):
    """The singular values around a kernel cut are not well separated."""


# functions
class ZeroOnBoundary(HardyLabError, ValueError):
    pass


class RepeatedZeros(HardyLabError, ValueError):
    pass


class DivisionBlowup(HardyLabError, ZeroDivisionError):
    pass


class NotOuter(HardyLabError, ValueError):
    pass


# pairs_dbr
class NotUnitNorm(HardyLabError, ValueError):
    pass


class OuterDiagnosticFailed(HardyLabError, ValueError):
    pass


class DenominatorVanishing(HardyLabError, ZeroDivisionError):
    pass


class NoAngularDerivative(HardyLabError, ValueError):
    pass


class NotSpecialPair(HardyLabError, ValueError):
    pass


class RepresenterSolveFailed(HardyLabError, RuntimeError):
    pass


class NotInRange(HardyLabError, ValueError):
    pass


class ComplementUnstable(HardyLabError, RuntimeError):
    pass


class OriginZero(HardyLabError, ZeroDivisionError):
    pass


# kernel_lab
class EndpointAlpha(HardyLabError, ValueError):
    pass


class SymbolSingular(HardyLabError, ZeroDivisionError):
    pass


# cli
class ConfigInvalid(HardyLabError, ValueError):
    pass


class ScenarioFailure(HardyLabError, RuntimeError):
    pass
