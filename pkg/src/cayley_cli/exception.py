from __future__ import annotations


class CayleyError(Exception):
    """Base exception class for cayley-cli."""

    pass


class ConfigError(CayleyError):
    """Configuration error."""

    pass


class MalformedInput(CayleyError):
    """Raised when an input file does not follow its line format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class EntryOutOfRange(CayleyError):
    """Raised when a table entry is not an element index."""

    def __init__(self, row: int, column: int, value: int, order: int):
        self.row = row
        self.column = column
        self.value = value
        self.order = order
        super().__init__(
            f"Table entry ({row}, {column}) = {value} is outside 0..{order - 1}"
        )


class ElementOutOfRange(CayleyError):
    """Raised when a supplied element is not an element index."""

    def __init__(self, value: int, order: int):
        self.value = value
        self.order = order
        super().__init__(f"Element {value} is outside 0..{order - 1}")


class NotAssociative(CayleyError):
    """Raised when a table violates associativity."""

    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        a, b, c = triple
        super().__init__(f"Table is not associative: (a, b, c) = ({a}, {b}, {c})")


class ArityMismatch(CayleyError):
    """Raised when the number of supplied values does not match the expected arity."""

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Expected {expected} values, got {actual}")


class InvalidExponent(CayleyError):
    def __init__(self, exponent: int):
        self.exponent = exponent
        super().__init__(f"Exponent must be positive: {exponent}")


class EmptySequence(CayleyError):
    def __init__(self, what: str = "circuits"):
        super().__init__(f"Expected a nonempty sequence of {what}")


class InvalidReference(CayleyError):
    """Raised when an item refers to itself or to a later item."""

    def __init__(self, index: int, position: int):
        self.index = index
        self.position = position
        super().__init__(f"Item {position + 1} refers to item {index + 1}, which is not earlier")


class NotAGroup(CayleyError):
    def __init__(self) -> None:
        super().__init__("Semigroup is not a group")


class NotCommutative(CayleyError):
    def __init__(self) -> None:
        super().__init__("Semigroup is not commutative")


class NotNilpotent(CayleyError):
    def __init__(self) -> None:
        super().__init__("Semigroup is not nilpotent")


class TargetNotGenerated(CayleyError):
    """Raised when an algorithm that needs a witness is asked for a non-member."""

    def __init__(self, target: object):
        self.target = target
        super().__init__(f"Target {target} is not in the generated subsemigroup")


class BudgetExceeded(CayleyError):
    def __init__(self, what: str, required: int, budget: int):
        self.what = what
        self.required = required
        self.budget = budget
        super().__init__(f"Too many {what}: {required} exceeds the budget of {budget}")


class VertexOutOfRange(CayleyError):
    def __init__(self, vertex: int, vertex_count: int):
        self.vertex = vertex
        self.vertex_count = vertex_count
        super().__init__(f"Vertex {vertex} is outside 0..{vertex_count - 1}")


class GraphTooSmall(CayleyError):
    def __init__(self, vertex_count: int):
        self.vertex_count = vertex_count
        super().__init__(f"Graph needs at least 2 vertices, got {vertex_count}")


class WitnessTooLarge(CayleyError):
    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"Witness {what} has size {size}, above the cap of {cap}")


class NothingToFactor(CayleyError):
    def __init__(self) -> None:
        super().__init__("Semigroup has no nonzero element")
