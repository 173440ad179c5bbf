"""Exception hierarchy for the stringy engine.

Every error carries a stable ``code`` used in JSON error documents.
"""

import re


def _snake(name: str) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


class StringyError(Exception):
    """Base class for all domain errors raised by the engine."""

    code = "stringy_error"

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls.code = _snake(cls.__name__)

    def to_dict(self) -> dict[str, str]:
        """Return the error as a JSON-ready mapping."""
        return {"code": self.code, "message": str(self)}


class DimensionMismatch(StringyError):
    """Vectors or matrices of incompatible dimensions were combined."""


class ZeroVectorError(StringyError):
    """A nonzero vector was required."""


class DependentGenerators(StringyError):
    """Cone generators were expected to be linearly independent."""


class OriginNotInterior(StringyError):
    """The origin is not strictly inside the polytope."""


class NotFullDimensional(StringyError):
    """A full-dimensional polytope was required."""


class NonLatticeVertices(StringyError):
    """A polytope with integer vertices was required."""


class LinealityError(StringyError):
    """The cone contains a line."""


class EmptyFineInterior(StringyError):
    """The Fine interior is empty."""


class NotNormalized(StringyError):
    """The Fine interior is not the origin and cannot be moved there."""


class NotAlmostPseudoreflexive(NotNormalized):
    """The Fine interior is not a single lattice point."""


class NotPseudoreflexive(StringyError):
    """The polytope differs from its pseudoreflexive closure."""


class NotReflexive(StringyError):
    """The polar polytope has non-integral vertices."""


class SingularFace(StringyError):
    """The face has no dual face in the Mavlyutov dual."""


class ZeroDimensionalFace(StringyError):
    """The operation needs a face of positive dimension."""


class NonPositiveGrading(StringyError):
    """The grading vector is not strictly positive on the cone."""


class PoleError(StringyError):
    """A rational function was evaluated at a pole."""


class InvalidParams(StringyError):
    """Parameters are outside their documented ranges."""


class DimensionGuard(StringyError):
    """The requested dimension exceeds the materialization guard."""


class ParseError(StringyError):
    """Input text could not be parsed as a polytope file."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")

    def to_dict(self) -> dict[str, str]:
        result = super().to_dict()
        if self.line is not None:
            result["line"] = str(self.line)
        if self.column is not None:
            result["column"] = str(self.column)
        return result


class AmbiguousOrientation(ParseError):
    """Both orientations of a matrix describe a full-dimensional polytope."""
