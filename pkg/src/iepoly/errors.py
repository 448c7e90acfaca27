"""Exception taxonomy shared by all modules.

Validation errors carry the offending index or pair so callers (and tests)
can assert on the exact rule that fired.  Capacity errors are raised instead
of letting exponential enumeration or dense allocation thrash.
"""

from __future__ import annotations


class IEPolyError(Exception):
    """Base class for all library errors."""


class TupleValidationError(IEPolyError, ValueError):
    """A raw input list does not describe a valid coprime tuple."""


class EmptyTuple(TupleValidationError):
    def __init__(self) -> None:
        super().__init__("tuple must contain at least one entry")


class EntryBelowTwo(TupleValidationError):
    def __init__(self, index: int, value: int) -> None:
        self.index = index
        self.value = value
        super().__init__(f"EntryBelowTwo: q[{index}] = {value} < 2")


class NotIncreasing(TupleValidationError):
    def __init__(self, index: int, value: int, next_value: int) -> None:
        self.index = index
        super().__init__(
            f"NotIncreasing: q[{index}] = {value} not below q[{index + 1}] = {next_value}"
        )


class NotCoprime(TupleValidationError):
    def __init__(self, i: int, j: int, qi: int, qj: int, g: int) -> None:
        self.i = i
        self.j = j
        self.gcd = g
        super().__init__(f"NotCoprime({qi},{qj}): gcd = {g} at indices ({i},{j})")


class InvalidParameter(IEPolyError, ValueError):
    """A scalar parameter is outside its documented domain."""


class CapacityError(IEPolyError):
    """A configured resource cap would be exceeded."""


class TupleTooLarge(CapacityError):
    def __init__(self, k: int, cap: int) -> None:
        self.k = k
        self.cap = cap
        super().__init__(f"TupleTooLarge: k = {k} exceeds subset cap {cap}")


class DegreeCapExceeded(CapacityError):
    def __init__(self, degree: int, cap: int) -> None:
        self.degree = degree
        self.cap = cap
        super().__init__(f"DegreeCapExceeded: degree {degree} needs more than {cap} coefficients")


class OracleCapExceeded(CapacityError):
    def __init__(self, m: int, cap: int) -> None:
        self.m = m
        self.cap = cap
        super().__init__(f"OracleCapExceeded: m = {m} exceeds oracle cap {cap}")


class CapExceeded(CapacityError):
    """Generic cap violation for search and bound computations."""


class OverflowInFastPath(IEPolyError, OverflowError):
    """Fixed-width coefficients overflowed and promotion was disabled."""


class NonzeroRemainder(IEPolyError, ArithmeticError):
    """Polynomial long division left a nonzero remainder where exactness was required."""


class CongruenceNotSatisfied(IEPolyError):
    """The residue hypothesis q_j = 2r +- 1 (mod 4r) fails for some element."""


class IdentityMismatch(IEPolyError, ArithmeticError):
    """Two evaluation routes of an exact identity disagree beyond tolerance."""
