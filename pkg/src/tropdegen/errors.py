"""Exception hierarchy.

Every error carries a short machine-readable ``kind`` and a ``details`` dict so
the command line front end can print ``{"error": ...}`` objects.
"""

from fractions import Fraction


def _plain(v):
    # rationals go out as "p/q" strings, containers recursively
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return v


class TropDegenError(Exception):
    """Base class for all library errors."""

    kind = "error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        out = {"kind": self.kind, "message": self.message}
        out.update({k: _plain(v) for k, v in self.details.items()})
        return out


class ZeroVector(TropDegenError):
    kind = "ZeroVector"


class DegenerateSimplex(TropDegenError):
    kind = "DegenerateSimplex"


class EmptyPolyhedron(TropDegenError):
    kind = "EmptyPolyhedron"


class NotClosedUnderFaces(TropDegenError):
    kind = "NotClosedUnderFaces"


class BadIntersection(TropDegenError):
    kind = "BadIntersection"


class FanNotSliceable(TropDegenError):
    kind = "FanNotSliceable"


class NotSimplicial(TropDegenError):
    kind = "NotSimplicial"


class UnsupportedLineality(TropDegenError):
    kind = "UnsupportedLineality"


class RefinementDiverged(TropDegenError):
    kind = "RefinementDiverged"


class SingleTerm(TropDegenError):
    kind = "SingleTerm"


class NotPure(TropDegenError):
    kind = "NotPure"


class IncompatibleAssignment(TropDegenError):
    kind = "IncompatibleAssignment"


class WeightMismatch(TropDegenError):
    kind = "WeightMismatch"


class InvalidCover(TropDegenError):
    kind = "InvalidCover"


class NotARefinement(TropDegenError):
    kind = "NotARefinement"


class CellImageNotContained(TropDegenError):
    kind = "CellImageNotContained"


class NotTriangulated(TropDegenError):
    kind = "NotTriangulated"


class MissingBettiData(TropDegenError):
    kind = "MissingBettiData"


class NotACycle(TropDegenError):
    kind = "NotACycle"


class NotGenusOneMultiplicative(TropDegenError):
    kind = "NotGenusOneMultiplicative"


class NoCycles(TropDegenError):
    kind = "NoCycles"


class InvalidGraph(TropDegenError):
    kind = "InvalidGraph"


class SchemaError(TropDegenError):
    """Malformed JSON payload; ``path`` is a JSON pointer."""

    kind = "SchemaError"

    def __init__(self, message, path=""):
        super().__init__(message, path=path)
        self.path = path

    def __str__(self):
        return f"{self.path or '/'}: {self.message}"


class UnsupportedRequest(TropDegenError):
    kind = "UnsupportedRequest"
