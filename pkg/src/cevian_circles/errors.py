"""Exception hierarchy shared by every module."""


class GeometryError(Exception):
    """Base class for construction and verification failures."""


class NotRepresentable(GeometryError):
    """An irrational operation was requested in the exact profile."""


class DegenerateTriangle(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


class CenterNotInterior(GeometryError):
    pass


class InvalidSides(GeometryError):
    """Side lengths violate the strict triangle inequality."""


class ConstructionFailed(GeometryError):
    pass


class ConstraintViolated(GeometryError):
    """A triangle does not meet the constraint an identity requires."""

    def __init__(self, constraint: str, detail: str = ""):
        self.constraint = constraint
        super().__init__(f"constraint {constraint!r} violated" + (f": {detail}" if detail else ""))


class InvalidSpec(GeometryError):
    pass


class SpecInfeasible(GeometryError):
    pass


class IncompatibleSpec(GeometryError):
    pass


class NoPermutationFound(GeometryError):
    pass


class ReportIOError(OSError):
    """Writing a report or figure failed."""
