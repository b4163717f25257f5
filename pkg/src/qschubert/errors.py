"""Exception hierarchy shared across the library.

Every error that signals a violated theory-level guarantee derives from
TheoryViolation so test harnesses can distinguish "bad input" from
"the mathematics failed", which would be a build bug.
"""


class QSchubertError(Exception):
    """Base class for all library errors."""


class DivisionByZero(QSchubertError):
    pass


class InvalidArgument(QSchubertError):
    pass


class NotALaurentPolynomial(QSchubertError):
    """A rational value expected to be integral has a nontrivial denominator."""


class NotReduced(QSchubertError):
    """A word failed the positive-partial-root reducedness criterion."""

    def __init__(self, position: int):
        self.position = position
        super().__init__(f"word not reduced at position {position}")


class DegreeTooLarge(QSchubertError):
    """A word-enumeration step would exceed the configured guard bound."""


class ZeroElement(QSchubertError):
    pass


class NotInKernel(QSchubertError):
    """Argument is not killed by the required skew derivation."""


class DomainViolation(QSchubertError):
    """A braid operator was applied outside its natural domain."""


class TheoryViolation(QSchubertError):
    """An identity guaranteed by the theory failed to hold (build bug)."""


class IntegralityViolation(TheoryViolation):
    """A coefficient asserted to be integral is not."""


class Inconsistency(TheoryViolation):
    """The bar-defect equation has no solution with negative q-powers."""


class NotInCell(QSchubertError):
    """An element does not lie in the targeted quantum Schubert cell."""

    def __init__(self, residual=None):
        self.residual = residual
        super().__init__("element is not a member of the cell")


class NotSigned(QSchubertError):
    """A string cascade terminated at a scalar other than +1 or -1."""


class NotCanonical(QSchubertError):
    """Element is not a canonical basis element (string data undefined)."""


class FrameMismatch(QSchubertError):
    """Two frames do not present the same Weyl group element."""


class LengthNotAdditive(QSchubertError):
    pass


class Unsupported(QSchubertError):
    """Closed-form description unavailable for this frame shape."""
