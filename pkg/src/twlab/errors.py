"""Exception hierarchy for twlab."""


class TwlabError(Exception):
    """Base class for every error raised by twlab."""


# finite rings
class RingSpecError(TwlabError, ValueError):
    pass


class NonPrimeModulus(RingSpecError):
    pass


class ReducibleModulus(RingSpecError):
    pass


class ZeroSize(RingSpecError):
    pass


class RingSpecParseError(RingSpecError):
    """Malformed ring-spec text. ``offset`` is the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class ForeignElement(TwlabError, ValueError):
    pass


# polynomials
class MixedCoefficientRings(TwlabError, TypeError):
    pass


class UnboundVariable(TwlabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class InvalidModulusDegree(TwlabError, ValueError):
    pass


class PolynomialParseError(TwlabError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class ForeignVariable(TwlabError, ValueError):
    pass


# equational theories
class ArityMismatch(TwlabError, ValueError):
    pass


class UnknownOperation(TwlabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class TheoryParseError(TwlabError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class CapExceeded(TwlabError, ValueError):
    pass


class CarrierTooLarge(CapExceeded):
    pass


class DepthTooLarge(CapExceeded):
    pass


class BaseTooLarge(CapExceeded):
    pass


class FieldTooLarge(CapExceeded):
    pass


# toy cohomology / TW monoids
class RingMismatch(TwlabError, ValueError):
    pass


class NotAField(TwlabError, ValueError):
    pass


class IndexMismatch(TwlabError, ValueError):
    pass


class InvalidDecomposition(TwlabError, ValueError):
    pass


class InstanceMismatch(TwlabError, ValueError):
    pass


class NotAMonoid(TwlabError, ValueError):
    pass
