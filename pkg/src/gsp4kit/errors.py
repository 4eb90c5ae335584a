"""Exception hierarchy for gsp4kit.

Every error carries enough context to be reported on the CLI as a
machine-readable code (the class name) plus a human message.
"""


class Gsp4kitError(Exception):
    """Base class for all toolkit errors."""


# -- finite fields ----------------------------------------------------------

class NotPrime(Gsp4kitError):
    pass


class ReducibleModulus(Gsp4kitError):
    pass


class ZeroElement(Gsp4kitError):
    pass


class NoSuchRoot(Gsp4kitError):
    pass


class IncompatibleFields(Gsp4kitError):
    pass


class FieldTooLarge(Gsp4kitError):
    """The field exceeds the lookup-table cap used by the matrix kernels."""


# -- matrix groups ----------------------------------------------------------

class NotSimilitude(Gsp4kitError):
    pass


class TruncatedClosure(Gsp4kitError):
    pass


class TooManySubspaces(Gsp4kitError):
    pass


class WrongCharacteristic(Gsp4kitError):
    pass


# -- induced representations ------------------------------------------------

class BadCongruence(Gsp4kitError):
    pass


class PrimeClash(Gsp4kitError):
    pass


class TooSmall(Gsp4kitError):
    pass


class NoSymplecticForm(Gsp4kitError):
    """Internal consistency failure: no invariant alternating form found."""


# -- prime searches ----------------------------------------------------------

class SearchExhausted(Gsp4kitError):
    def __init__(self, message, progress=None):
        super().__init__(message)
        self.progress = progress or {}


# -- screener -----------------------------------------------------------------

class ShapeViolation(Gsp4kitError):
    def __init__(self, message, prime=None):
        super().__init__(message)
        self.prime = prime


class WeightViolation(Gsp4kitError):
    pass


class NoData(Gsp4kitError):
    pass


class NoInertSamples(Gsp4kitError):
    pass


class HypothesisViolated(Gsp4kitError):
    pass
