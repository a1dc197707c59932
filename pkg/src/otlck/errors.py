"""Exception hierarchy shared by all otlck modules."""


class OtlckError(Exception):
    """Base class for all domain errors raised by this package."""


# -- exactnum --------------------------------------------------------------

class ZeroPolynomial(OtlckError):
    pass


class ConstantPolynomial(OtlckError):
    pass


class PrecisionExhausted(OtlckError):
    """A certified decision could not be reached at the configured bit cap."""


# -- numfield --------------------------------------------------------------

class NotIrreducible(OtlckError):
    pass


class NotMonic(OtlckError):
    pass


class IndexOutOfRange(OtlckError):
    pass


# -- unitlat ---------------------------------------------------------------

class WrongRank(OtlckError):
    pass


class NotAdmissibleError(OtlckError):
    pass


# -- liealg ----------------------------------------------------------------

class JacobiViolation(OtlckError):
    pass


class NoLeeCandidate(OtlckError):
    pass


# -- otlike ----------------------------------------------------------------

class ColumnSumViolation(OtlckError):
    pass


class NotLckOtLike(OtlckError):
    pass


class NonIntegerAction(OtlckError):
    pass


class AssumptionFailure(OtlckError):
    pass


class NotLck(OtlckError):
    pass


class NotUnimodular(OtlckError):
    pass


class ExactPathUnavailable(OtlckError):
    """The exact rational pipeline hit an irrational quantity."""


# -- converse --------------------------------------------------------------

class NonCommuting(OtlckError):
    def __init__(self, i: int, j: int):
        super().__init__(f"generators {i} and {j} do not commute")
        self.i, self.j = i, j


class NonUnimodularDet(OtlckError):
    def __init__(self, i: int, det: int):
        super().__init__(f"generator {i} has determinant {det}, expected +1")
        self.i, self.det = i, det


# -- metrics ---------------------------------------------------------------

class SignatureViolation(OtlckError):
    pass


# -- cli -------------------------------------------------------------------

class SchemaError(OtlckError):
    pass
