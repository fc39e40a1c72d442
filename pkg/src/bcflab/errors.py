"""Exception types raised across the package."""

from .exactalg import DivisionFailed, DegreeOverflow, NonInvertibleConstantTerm, NotSquare


class MissingWeight(LookupError):
    """A weight system was asked for an index it cannot supply."""

    def __init__(self, kind: str, index):
        self.kind = kind
        self.index = index
        super().__init__(f"missing weight {kind}{index}")


class BadGoodSet(ValueError):
    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        super().__init__(f"selector violates condition ({condition}): {detail}".rstrip(": "))


class InsufficientMatrixSize(ValueError):
    pass


class TruncationUnsafe(ValueError):
    pass


class NotAZShape(ValueError):
    pass


class ArityMismatch(ValueError):
    pass


class UnknownId(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown id"


class IndexOutOfRange(IndexError):
    pass


class PoleWithinTruncation(ZeroDivisionError):
    def __init__(self, parameter: str, n: int):
        self.parameter = parameter
        self.n = n
        super().__init__(f"parameter {parameter} gives a vanishing denominator at n={n}")


class DenominatorVanished(ZeroDivisionError):
    def __init__(self, k: int, detail: str = ""):
        self.k = k
        super().__init__(f"weight denominator vanishes at k={k} {detail}".rstrip())


class ConstantTermNotOne(ValueError):
    pass


__all__ = [
    "MissingWeight", "BadGoodSet", "InsufficientMatrixSize", "TruncationUnsafe",
    "NotAZShape", "ArityMismatch", "UnknownId", "IndexOutOfRange",
    "PoleWithinTruncation", "DenominatorVanished", "ConstantTermNotOne",
    "DivisionFailed", "DegreeOverflow", "NonInvertibleConstantTerm", "NotSquare",
]
