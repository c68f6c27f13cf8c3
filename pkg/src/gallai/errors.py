"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class GallaiError(Exception):
    pass


class ParseError(GallaiError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateEdge(ParseError):
    pass


class Loop(ParseError):
    pass


class ColoringDomainMismatch(GallaiError):
    pass


class NotOnClass(GallaiError):
    pass


class BadSection(GallaiError):
    pass


class NotAnEndpoint(GallaiError):
    pass


class CreatesBranch(GallaiError):
    pass


class ShapeError(GallaiError):
    pass


class Timeout(GallaiError):
    """Raised when a search exhausts its node budget.

    ``best`` holds the best witness found so far (or None).
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class PreconditionViolated(GallaiError):
    pass


class NoCompanionPath(GallaiError):
    def __init__(self, color: int, detail: str = ""):
        super().__init__(f"no companion path for cycle color {color}" + (f": {detail}" if detail else ""))
        self.color = color


class NotFound(GallaiError):
    pass


class SearchBudgetExceeded(GallaiError):
    pass


class InducedK4Violation(GallaiError):
    pass


class GuardFailure(GallaiError):
    pass


class Unsatisfiable(GallaiError):
    def __init__(self, message: str, transcript=None):
        super().__init__(message)
        self.transcript = transcript or []


class UnmatchedCase(GallaiError):
    def __init__(self, message: str, transcript=None):
        super().__init__(message)
        self.transcript = transcript or []


class PlanarityLost(GallaiError):
    pass


class RecoloringInvalid(GallaiError):
    def __init__(self, step, witness):
        super().__init__(f"recoloring step {step!r} produced an invalid class: {witness}")
        self.step = step
        self.witness = witness
