"""Exception hierarchy shared by every module."""


class WittkitError(Exception):
    """Base class for all library errors."""


class ParseError(WittkitError):
    pass


class MathError(WittkitError):
    """A mathematically meaningful failure (the CLI maps these to exit code 3)."""


class NotDivisible(MathError):
    def __init__(self, coefficient, monomial, divisor):
        self.coefficient = coefficient
        self.monomial = monomial
        self.divisor = divisor
        super().__init__(f"coefficient {coefficient} of {monomial} is not divisible by {divisor}")


class NotInGhostImage(MathError):
    pass


class CongruenceFailed(MathError):
    pass


class IsoFailed(MathError):
    pass


class VerificationFailed(MathError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class CocycleFailed(VerificationFailed):
    pass


class PresentationOnly(WittkitError):
    """Raised when equality is requested in a ring without a confluent rewrite system."""


class SearchTooLarge(WittkitError):
    pass


class CtxMismatch(WittkitError):
    pass


class LengthError(WittkitError):
    pass


class LevelExceeded(WittkitError):
    pass


class BadBase(WittkitError):
    pass


class NotFlat(MathError):
    """p is (or cannot be certified not to be) a zero divisor in the coefficient ring."""


class IntegralityError(RuntimeError):
    """A universal Witt polynomial failed to be integral: always a bug, never a data error."""
