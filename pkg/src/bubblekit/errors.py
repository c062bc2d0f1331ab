"""Exception hierarchy shared by every bubblekit module."""

from __future__ import annotations


class BubblekitError(Exception):
    """Base class; ``code`` is the CLI exit status the error maps to."""

    code = 2

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class ParseError(BubblekitError, ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["position"] = self.position
        return d


class UnknownVariableError(ParseError):
    pass


class RingMismatchError(BubblekitError, ValueError):
    pass


class ZeroPolynomialError(BubblekitError, ValueError):
    pass


class PreconditionError(BubblekitError, ValueError):
    pass


class BasisTooLargeError(BubblekitError, RuntimeError):
    def __init__(self, message: str, partial_size: int, pairs_left: int):
        super().__init__(message)
        self.partial_size = partial_size
        self.pairs_left = pairs_left

    def to_dict(self) -> dict:
        d = super().to_dict()
        d.update(partial_size=self.partial_size, pairs_left=self.pairs_left)
        return d


class NonConvergenceError(BubblekitError, RuntimeError):
    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class InexactDivisionError(BubblekitError, ArithmeticError):
    pass


class SectionLeftFiberError(BubblekitError):
    """A rescaled generator acquired a constant term."""


class XiConstantFamily(BubblekitError):
    """No parameter monomial lowers the weighted degree: nothing bubbles."""


class NotCompleteIntersection(BubblekitError):
    pass


class PropertyAnomaly(BubblekitError):
    """A checked structural property failed; distinct from ordinary bugs."""

    code = 3


class MonotonicityViolation(PropertyAnomaly):
    pass


class ProfileAnomaly(PropertyAnomaly):
    def __init__(self, message: str, samples=()):
        super().__init__(message)
        self.samples = list(samples)

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["samples"] = [str(s) for s in self.samples]
        return d
