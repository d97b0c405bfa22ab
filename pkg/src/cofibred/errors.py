"""Exception types raised across the package."""


class CofibredError(Exception):
    """Base class for all library errors."""


class InvalidSpec(CofibredError):
    pass


class ReducibleModulus(CofibredError):
    def __init__(self, modulus, factors=None):
        self.modulus = modulus
        self.factors = factors
        super().__init__(f"modulus {modulus} is reducible over Q")


class FieldTooSmall(CofibredError):
    """The requested object is not defined over the working field.

    ``minpoly`` is the polynomial (over the working field) whose roots would
    have to be adjoined.
    """

    def __init__(self, minpoly, what=""):
        self.minpoly = minpoly
        msg = f"field too small: need a root of {minpoly}"
        if what:
            msg += f" ({what})"
        super().__init__(msg)


class ZeroDenominator(CofibredError):
    pass


class NotAUnit(CofibredError):
    pass


class TruncationMismatch(CofibredError):
    pass


class NotSuperattracting(CofibredError):
    pass


class ExceedsBound(CofibredError):
    """Group closure did not terminate within the bound.

    ``reason`` is ``"infinite_element"`` when an element of infinite order was
    found (a certified infinite group) and ``"bound"`` otherwise.
    """

    def __init__(self, reason, witness=None, bound=None):
        self.reason = reason
        self.witness = witness
        self.bound = bound
        detail = f" (witness {witness})" if witness is not None else ""
        super().__init__(f"closure exceeds bound {bound}: {reason}{detail}")


class InfiniteGroup(CofibredError):
    def __init__(self, witness=None):
        self.witness = witness
        super().__init__(f"group is infinite (element of infinite order: {witness})")


class UnclassifiableGroup(CofibredError):
    pass


class UnsupportedGroup(CofibredError):
    pass


class IdentityFails(CofibredError):
    pass


class CompositumNotFull(CofibredError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__(f"C(X,Y) has index {degree} in C(z)")


class NoSuitableBasePoints(CofibredError):
    pass


class Inconclusive(CofibredError):
    pass


class PreconditionZeroOrder(CofibredError):
    pass


class DecompositionMismatch(CofibredError):
    pass


class NotGoodSolution(CofibredError):
    pass


class ParseError(CofibredError):
    """Syntax error in an expression; ``position`` is a 0-based offset."""

    def __init__(self, message, position, expected=None):
        self.position = position
        self.expected = expected
        text = f"{message} at position {position}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


class UnknownSymbol(ParseError):
    pass


class SchemaError(CofibredError):
    pass
