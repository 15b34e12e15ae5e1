"""Exception types shared across the package."""


class ToricError(Exception):
    """Base class for every error raised by toricmu."""


class DegenerateError(ToricError, ValueError):
    """Linearly dependent vectors where independence is required."""


class GenericityError(ToricError, ValueError):
    """A vector or plane lies on a wall it was supposed to avoid."""


class TruncationError(ToricError, ValueError):
    """A series coefficient outside the computed window was requested."""


class NotRationalError(ToricError, ArithmeticError):
    """A cyclotomic quantity expected to be rational was not."""


class FanError(ToricError, ValueError):
    """Malformed or unsuitable fan / polytope input."""


class IdentityError(ToricError, AssertionError):
    """An identity that must hold exactly failed (internal error or bad input)."""
