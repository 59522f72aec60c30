"""Exception types raised across the package."""


class PaleyError(Exception):
    pass


# field construction / arithmetic
class NotPrime(PaleyError, ValueError):
    pass


class ReduciblePolynomial(PaleyError, ValueError):
    pass


class DegreeMismatch(PaleyError, ValueError):
    pass


class OrderTooLarge(PaleyError, ValueError):
    pass


class IndexOutOfRange(PaleyError, IndexError):
    pass


class CharacterMismatch(PaleyError, RuntimeError):
    """Square enumeration and Euler's criterion disagree (arithmetic bug)."""


# graph / search
class NotOneModFour(PaleyError, ValueError):
    pass


class NotAClique(PaleyError, ValueError):
    pass


class TooLarge(PaleyError, ValueError):
    pass


# character-sum profile
class EmptyClique(PaleyError, ValueError):
    pass


class TIsInB(PaleyError, ValueError):
    pass


class ZeroR(PaleyError, ValueError):
    pass


# bounds
class EvenExtensionDegree(PaleyError, ValueError):
    pass


class ExtensionField(PaleyError, ValueError):
    pass


# cli / cache
class EmptyCache(PaleyError, ValueError):
    pass
