"""Exception hierarchy shared by every module."""


class ChromaticCobarError(Exception):
    """Base class for all computation errors raised by the package."""


class NonIntegral(ChromaticCobarError):
    pass


class ConstantTerm(ChromaticCobarError):
    pass


class BadLeadingTerm(ChromaticCobarError):
    pass


class TruncationExceeded(ChromaticCobarError):
    """A coefficient beyond the recorded truncation order was requested."""


class IntegralityFailure(ChromaticCobarError):
    """An exported series or polynomial has a coefficient with negative 2-adic valuation."""


class WindowExceeded(ChromaticCobarError):
    pass


class WindowUnderflow(ChromaticCobarError):
    pass


class NotDivisible(ChromaticCobarError):
    pass


class DegreeTooLarge(ChromaticCobarError):
    pass


class Unidentified(ChromaticCobarError):
    """A differential target is a nonzero class outside the named-class dictionary."""


class VanishingProduct(ChromaticCobarError):
    """A v1-propagated target is null in Ext."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


class OutOfTable(ChromaticCobarError):
    pass


class Mismatch(ChromaticCobarError):
    pass


class ParseError(ChromaticCobarError):
    pass
