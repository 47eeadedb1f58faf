"""Exception hierarchy.

GenericityFailure groups the failures that a fresh random draw can cure;
the forge pipeline retries on exactly those.
"""


class CremonaError(Exception):
    pass


# -- arithmetic / algebra ------------------------------------------------

class ZeroInverse(CremonaError):
    pass


class ArityMismatch(CremonaError):
    pass


class DegreeMismatch(CremonaError):
    pass


class SingularChange(CremonaError):
    pass


class ZeroPolynomial(CremonaError):
    pass


class BothConstant(CremonaError):
    pass


class BadLeadingCoefficient(CremonaError):
    pass


class ZeroForm(CremonaError):
    pass


class BothZero(CremonaError):
    pass


class CommonComponent(CremonaError):
    """The two curves share a factor; no coordinate change can fix this."""


# -- retryable construction failures --------------------------------------

class GenericityFailure(CremonaError):
    """A random draw landed on a degenerate locus; retrying may succeed."""


class GenericityExhausted(GenericityFailure):
    pass


class EmptyLinearSystem(GenericityFailure):
    pass


class IrreducibilityFailure(GenericityFailure):
    pass


class MultiplicityFailure(GenericityFailure):
    pass


class FixedComponent(GenericityFailure):
    pass


class HomaloidalFailure(GenericityFailure):
    pass


class BidegreeMismatch(GenericityFailure):
    pass


class UnusableChange(GenericityFailure):
    """The sampled coordinate change violates a genericity requirement
    (zero leading coefficient, a base point at the projection center,
    or colliding projections); a fresh change may work."""


# -- pipeline / interface -------------------------------------------------

class CriterionViolation(CremonaError):
    """A structural hypothesis of the birationality criterion fails."""


class OutOfRange(CremonaError):
    pass


class ForgeExhausted(CremonaError):
    """Every forge attempt failed; carries the last attempt's failure."""

    def __init__(self, message, transcript=None):
        super().__init__(message)
        self.transcript = transcript or []


class MalformedCertificate(CremonaError):
    pass
