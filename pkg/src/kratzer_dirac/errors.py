"""Exception hierarchy.

Everything raised on purpose by this package derives from
:class:`KratzerDiracError`.  Input problems are :class:`ValidationError`
(the CLI maps them to exit code 1); numerical failures are
:class:`SolverError` (exit code 2).
"""


class KratzerDiracError(Exception):
    pass


class ValidationError(KratzerDiracError, ValueError):
    pass


class SolverError(KratzerDiracError, ArithmeticError):
    pass


# -- validation -------------------------------------------------------------

class NonPositiveParameter(ValidationError):
    pass


class RegimeParamMismatch(ValidationError):
    pass


class RestrictedParameterB(ValidationError):
    pass


class UnsupportedCombination(ValidationError):
    pass


class OutOfBoundRange(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class TooFewSamples(ValidationError):
    pass


class RegimeMismatch(ValidationError):
    pass


class GridTouchesOrigin(ValidationError):
    pass


# -- numerics ---------------------------------------------------------------

class PochhammerPole(SolverError):
    pass


class NonConvergence(SolverError):
    pass


class NegativeRadicand(SolverError):
    pass


class NoRootFound(SolverError):
    pass


class MultipleRoots(SolverError):
    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class NoBoundState(SolverError):
    pass


class SingularDenominator(SolverError):
    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(int(i) for i in indices)


class EplusMZero(SolverError):
    pass


class TailTooLarge(SolverError):
    pass


class ZeroNorm(SolverError):
    pass


class BisectionStall(SolverError):
    pass


class IndefiniteCount(SolverError):
    pass
