"""Exception hierarchy shared by every module of the package."""


class MvspError(Exception):
    """Base class for all library errors."""


class InternalConsistencyError(MvspError):
    """A result contradicting the underlying mathematics; should never be raised."""


# gf
class NotPrime(MvspError, ValueError):
    pass


class NotIrreducible(MvspError, ValueError):
    pass


class FieldOverflow(MvspError, OverflowError):
    pass


class DivisionByZero(MvspError, ZeroDivisionError):
    pass


class NotDivisor(MvspError, ValueError):
    pass


class ZeroElement(MvspError, ValueError):
    pass


class ParseError(MvspError, ValueError):
    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)


# polyring
class CtxMismatch(MvspError, ValueError):
    pass


class BothZero(MvspError, ValueError):
    pass


class ZeroPolynomial(MvspError, ValueError):
    pass


class PreconditionViolated(MvspError, ValueError):
    pass


class SumMismatch(PreconditionViolated):
    pass


class CommonFactor(PreconditionViolated):
    pass


class AllDerivativesZero(PreconditionViolated):
    pass


# linearized
class DependentBasis(MvspError, ValueError):
    pass


class BaseMismatch(MvspError, ValueError):
    pass


class NotLinearized(MvspError, ValueError):
    pass


class Inseparable(MvspError, ValueError):
    pass


class NotBinomial(MvspError, ValueError):
    pass


class BadIndex(MvspError, ValueError):
    pass


class NotDividing(MvspError, ValueError):
    pass


class NotMonic(MvspError, ValueError):
    pass


# valueset
class DegreeOutOfRange(MvspError, ValueError):
    pass


class TooSmall(MvspError, ValueError):
    pass


class BadOrder(MvspError, ValueError):
    pass


class IsPerfectPower(MvspError, ValueError):
    pass


# mvsp
class TooFewValues(MvspError, ValueError):
    pass


class NotCertified(MvspError, ValueError):
    pass


class NoConsistentTriple(InternalConsistencyError):
    pass


class BadSubspace(MvspError, ValueError):
    pass


class InnerNotMvsp(MvspError, ValueError):
    pass


class BadSelector(MvspError, ValueError):
    pass


class ConstraintViolated(MvspError, ValueError):
    pass


class NotInW(MvspError, ValueError):
    pass


class NoSolution(InternalConsistencyError):
    pass


class BadHypotheses(MvspError, ValueError):
    pass


class UnsupportedInnerSource(MvspError, ValueError):
    pass


class BadParams(MvspError, ValueError):
    pass


# search
class BudgetExceeded(MvspError, RuntimeError):
    pass


# curves
class DTooLarge(MvspError, ValueError):
    pass


class Reducible(MvspError, ValueError):
    pass
