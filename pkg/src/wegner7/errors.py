"""Exception hierarchy.

``InputError`` subclasses describe bad user input (CLI exit code 2),
``BudgetError`` subclasses a search limit (exit 3), and
``CertificationError`` an internal inconsistency that should never happen on
valid input (exit 4).
"""

from __future__ import annotations


class Wegner7Error(Exception):
    pass


class InputError(Wegner7Error, ValueError):
    pass


class AsymmetricRotation(InputError):
    pass


class EulerViolation(InputError):
    pass


class DegreeViolation(InputError):
    pass


class RotParseError(InputError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Graph6Error(InputError):
    pass


class NotCubic(InputError):
    pass


class BadN(InputError):
    pass


class InputViolation(InputError):
    pass


class NotFacial(InputError):
    pass


class DegreeTooLow(InputError):
    pass


class SpecMismatch(InputError):
    pass


class PreconditionError(InputError):
    """Raised when a boundary instance fails one of the conditions c1..c9."""

    def __init__(self, report):
        failed = ", ".join(r.condition for r in report.results if not r.passed)
        super().__init__(f"boundary conditions failed: {failed}")
        self.report = report


class StartNotInColors(InputError):
    pass


class BrooksPreconditionFailed(InputError):
    pass


class NotPlanar(InputError):
    pass


class BudgetError(Wegner7Error):
    pass


class OverBudget(BudgetError):
    pass


class TooLarge(BudgetError):
    pass


class CertificationError(Wegner7Error):
    pass


class NoLightPair(CertificationError):
    pass


class NoDecomposition(CertificationError):
    pass


class Unsat3(CertificationError):
    pass


class Unsat4(CertificationError):
    pass
