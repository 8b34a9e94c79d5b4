"""Exception types shared across the package."""


class DiagramError(ValueError):
    """Base class for all diagramcat errors."""


class MissingVertex(DiagramError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} is not covered by any block")


class DuplicateVertex(DiagramError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} appears in more than one block")


class OutOfRange(DiagramError):
    def __init__(self, vertex, m, n):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} is outside [1,{m}] u -[1,{n}]")


class ShapeMismatch(DiagramError):
    """Product of partitions whose inner sizes disagree."""


class NotPlanar(DiagramError):
    """Operation requires a planar diagram."""


class ArgOutOfRange(DiagramError):
    """Counting query outside the domain of the sequence."""


class ParityViolation(DiagramError):
    """Rank arguments break the parity or ordering constraints."""


class RankNotAdmissible(DiagramError):
    """Requested rank is not realised by the structure at hand."""


class BoundExceeded(DiagramError):
    """A configured size bound would be exceeded."""


class NotClosed(DiagramError):
    def __init__(self, x, y, product):
        self.witness = (x, y, product)
        super().__init__(f"not closed: product of {x!r} and {y!r} is {product!r}")


class NotRegular(DiagramError):
    """Semigroup operation requires a (von Neumann) regular semigroup."""


class NotIdempotentGenerated(DiagramError):
    """Semigroup is not generated by its idempotents."""


class NotRegularElement(DiagramError):
    """Element lies outside the regular part of the sandwich semigroup."""


class NotBrauer(DiagramError):
    """Operation is specific to Brauer diagrams."""


class UsageError(DiagramError):
    """Malformed command-line or file input; carries a location when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
