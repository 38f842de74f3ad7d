"""Exception types shared across the package."""


class DiagsemiError(Exception):
    """Base class for all errors raised by this package."""


class CapExceeded(DiagsemiError):
    """A size guard (points, elements, automorphisms) was exceeded."""


class UnsupportedOrder(DiagsemiError):
    """No identification is available for a group of this order."""


class NotPrime(DiagsemiError):
    pass


class DivisionByZero(DiagsemiError, ZeroDivisionError):
    pass


class NotFixedPointFree(DiagsemiError):
    """An automorphism expected to be fixed-point-free has a nontrivial fixed point."""


NotFpf = NotFixedPointFree


class InternalWitnessFailure(DiagsemiError):
    """A constructed witness failed its own verification (this is a bug)."""


class BadEmbedding(DiagsemiError):
    pass


class NotAGrid(DiagsemiError):
    pass


class NotLatin(DiagsemiError):
    pass


class InvalidGroup(DiagsemiError):
    pass


class ParseError(DiagsemiError):
    pass
