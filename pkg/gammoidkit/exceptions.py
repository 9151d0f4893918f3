from typing import Optional


class GammoidkitError(Exception):
    """
    base of every error raised by gammoidkit
    """


class NonSquareError(GammoidkitError):
    """
    raise when a square matrix is required
    """


class SingularMatrixError(GammoidkitError):
    """
    raise when inverting a matrix with zero determinant
    """


class DimensionMismatchError(GammoidkitError):
    """
    raise when operand shapes do not agree
    """


class FieldMismatchError(GammoidkitError):
    """
    raise when scalars of different fields are mixed
    """


class StructuralError(GammoidkitError):
    """
    raise when a base list is empty, non-equicardinal or out of range
    """


class OutOfRangeError(GammoidkitError):
    """
    raise when an element lies outside the ground set
    """


class NormalizationImpossibleError(GammoidkitError):
    """
    raise when a normalized representation needs a complete matching that does not exist
    """


class SingularSystemError(GammoidkitError):
    """
    raise when I - W stays singular after every reseed
    """


class CyclicGraphError(GammoidkitError):
    """
    raise when an acyclic digraph is required
    """


class NoCompleteMatchingError(GammoidkitError):
    """
    raise when a bipartite graph has no matching covering its right side
    """


class ParseError(GammoidkitError):
    def __init__(
        self, message: str, source: str = "<input>", line: int = 0, column: int = 0
    ) -> None:
        self.message = message
        self.source = source
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        return f"{self.source}:{self.line}:{self.column}: {self.message}"

    @classmethod
    def at(
        cls, message: str, source: str, line: int, column: Optional[int] = None
    ) -> "ParseError":
        return cls(message, source=source, line=line, column=column or 1)
