"""
Error hierarchy for polymax

Every failure raised by the library derives from PolymaxError and
carries the exit code the command-line front end reports for it.
"""

from typing import Any, Optional


class PolymaxError(Exception):
    """Base class for all polymax errors"""

    exit_code: int = 1

    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.details = details


class ValidationError(PolymaxError):
    """Invalid input, degenerate configuration or exhausted budget"""

    exit_code = 1


class FalsificationError(PolymaxError):
    """A check that would contradict the maximum-intersection theorem failed"""

    exit_code = 2


class InvalidParams(ValidationError):
    pass


class DegenerateSegment(ValidationError):
    pass


class InvalidPolygon(ValidationError):
    pass


class NotInGeneralPosition(ValidationError):
    """Raised with the GeneralPositionReport that lists the violations"""

    def __init__(self, report):
        kinds = sorted({v.kind.value for v in report.violations})
        super().__init__(f"polygons are not in general position: {', '.join(kinds)}", report)
        self.report = report


class EdgeDoesNotCross(ValidationError):
    pass


class SlotCollision(ValidationError):
    pass


class PreconditionFailed(ValidationError):
    pass


class PerturbationFailed(ValidationError):
    pass


class SamplingBudgetExhausted(ValidationError):
    pass


class BudgetExceeded(ValidationError):
    pass


class DocumentError(ValidationError):
    pass


class ConstructionFailed(FalsificationError):
    pass


class LemmaViolation(FalsificationError):
    pass


class OracleMismatch(FalsificationError):
    """Two independent counts of the same pair disagree"""
