"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SkewFlandersError(Exception):
    """Base class for all library errors."""


class RingMismatch(SkewFlandersError, ValueError):
    pass


class ShapeMismatch(SkewFlandersError, ValueError):
    pass


class CompositeCharacteristic(SkewFlandersError, ValueError):
    pass


class ReducibleModulus(SkewFlandersError, ValueError):
    pass


class InvalidRingSpec(SkewFlandersError, ValueError):
    """The structure constants do not define a division ring with unit."""


class ZeroInverse(SkewFlandersError, ZeroDivisionError):
    pass


class SingularElement(SkewFlandersError, ArithmeticError):
    """A nonzero element has a singular left-multiplication operator."""


class InfiniteRing(SkewFlandersError, ValueError):
    """The operation needs a finite ring (exhaustive enumeration)."""


InfiniteField = InfiniteRing


class NotLinear(SkewFlandersError, ValueError):
    pass


class SingularWitness(SkewFlandersError, ValueError):
    pass


class NotBoundedRank(SkewFlandersError):
    """A member of the space exceeds the rank bound.

    ``witness`` holds the offending matrix.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainTooFlat(SkewFlandersError, ValueError):
    pass


class Incompatible(SkewFlandersError):
    """A map on matrices is not range-compatible (or not a homomorphism).

    ``witness`` is a matrix M with F(M) outside im M, or the zero matrix
    when F(0) != 0.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ContradictionWitness(SkewFlandersError, AssertionError):
    """Internal consistency check of the classification failed."""


class CapExceeded(SkewFlandersError):
    def __init__(self, message: str, estimate: int):
        super().__init__(message)
        self.estimate = estimate
