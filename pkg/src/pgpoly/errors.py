"""Exception types raised across the package."""


class PGPError(Exception):
    """Base class for every error raised by pgpoly."""


# field arithmetic
class NotPrime(PGPError, ValueError):
    pass


class DegreeZero(PGPError, ValueError):
    pass


class FieldTooLarge(PGPError, ValueError):
    pass


class FieldMismatch(PGPError, ValueError):
    pass


class ZeroInverse(PGPError, ZeroDivisionError):
    pass


# permutations and groups
class DegreeMismatch(PGPError, ValueError):
    pass


class OverlappingCycles(PGPError, ValueError):
    pass


class IndexOutOfRange(PGPError, ValueError):
    pass


class InvalidParams(PGPError, ValueError):
    pass


class NonCommutingGenerators(PGPError, ValueError):
    pass


class DegenerateGroup(PGPError, ValueError):
    pass


class NotAbelian(PGPError, ValueError):
    pass


# squares, tuples, companions
class NotAPermTuple(PGPError, ValueError):
    pass


class NotLatin(PGPError, ValueError):
    pass


class SizeMismatch(PGPError, ValueError):
    pass


class UnsupportedCase(PGPError, ValueError):
    pass


class NotSimpleIntersection(PGPError, ValueError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"h does not intersect beta_{index} simply")


class BudgetExceeded(PGPError, RuntimeError):
    def __init__(self, steps):
        self.steps = steps
        super().__init__(f"search budget of {steps} steps exhausted before a verdict")


# counting
class DivisibilityFails(PGPError, ValueError):
    def __init__(self, k, message=None):
        self.k = k
        super().__init__(message or f"p^(delta-1) does not divide v_{k},0")


class PreconditionJ(PGPError, ValueError):
    pass


class BadRange(PGPError, ValueError):
    pass


class OutOfRangeE(PGPError, ValueError):
    pass


class InternalInconsistency(PGPError, ArithmeticError):
    pass


class GuardExceeded(PGPError, RuntimeError):
    pass
