"""Exception hierarchy shared by every module of the package."""


class ProdIneqError(Exception):
    """Base class for all package errors."""


class InputError(ProdIneqError, ValueError):
    """Malformed user input (bad exponents, bad parameters, bad documents)."""


class EmptyTuple(InputError):
    pass


class NonPositiveExponent(InputError):
    pass


class LengthMismatch(InputError):
    pass


class UnequalSums(InputError):
    pass


class ExponentZero(InputError):
    pass


class ConstraintViolation(InputError):
    """Parameters fall outside the admissible region of the fractional-power inequality."""


class ZeroPolynomial(ProdIneqError, ValueError):
    pass


class EndpointIsRoot(ProdIneqError, ValueError):
    pass


class NoNegativeValue(ProdIneqError):
    """Raised when a negativity search exhausts the interval; indicates a caller bug."""


class NotDominant(InputError):
    """The tuples do not satisfy the suffix-sum conditions a proof tree needs."""


class ProofError(ProdIneqError):
    pass


class PivotUnavailable(ProofError):
    pass


class DominanceLost(ProofError):
    """A reduction step produced residual tuples that fail the suffix-sum conditions."""


class BaseCaseRefuted(ProofError):
    pass


class PrecisionExhausted(ProdIneqError):
    """The floating error band swallows the gap; the numeric result is inconclusive."""
