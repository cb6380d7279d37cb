"""Exception hierarchy shared by every module."""


class HypGammaError(Exception):
    """Base class; the CLI maps these to exit status 3."""


class ZeroDenominator(HypGammaError, ZeroDivisionError):
    pass


class DegreeTooHigh(HypGammaError):
    pass


class SingularLadder(HypGammaError):
    pass


class EliminationFailed(HypGammaError):
    pass


class SingularSystem(HypGammaError):
    pass


class UnequalDegrees(HypGammaError):
    pass


class IllConditioned(HypGammaError):
    pass


class PoleOfGamma(HypGammaError, ZeroDivisionError):
    pass


class CNonPositiveInteger(HypGammaError):
    pass


class DivergentAtOne(HypGammaError):
    pass


class PrecisionExhausted(HypGammaError):
    pass


class ParameterOutOfRange(HypGammaError):
    pass


class PoleEncountered(HypGammaError, ZeroDivisionError):
    pass


class BranchUnspecified(HypGammaError):
    pass


class DegenerateArgument(HypGammaError):
    pass
