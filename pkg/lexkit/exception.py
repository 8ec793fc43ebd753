from typing import Any


class LexkitError(Exception):
    """Base class for errors raised by the lexkit library."""


class ParseError(LexkitError):
    """Raised when DSL text does not conform to the grammar."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"parse error at {line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class IllFormed(LexkitError):
    """Raised when a parsed or constructed value violates its invariants."""

    def __init__(self, message: str):
        super().__init__(f"ill-formed: {message}")
        self.message = message


class Unsupported(LexkitError):
    """Raised when a carrier does not provide a requested construction."""

    def __init__(self, carrier: str, operation: str):
        super().__init__(f"carrier '{carrier}' does not support {operation}")
        self.carrier = carrier
        self.operation = operation


class ShapeMismatch(LexkitError):
    """Raised when a diagram's shape is not the one a weight expects."""

    def __init__(self, expected: str, actual: str):
        super().__init__(f"expected a diagram of shape {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class MonoViolation(LexkitError):
    """Raised when a generator marked mono is sent to a non-monic morphism."""

    def __init__(self, generator: str):
        super().__init__(
            f"generator '{generator}' is marked mono but its image is not monic"
        )
        self.generator = generator


class IllFormedZigZag(LexkitError):
    def __init__(self, message: str):
        super().__init__(f"ill-formed zig-zag: {message}")
        self.message = message


class NotFiltered(LexkitError):
    """Raised when filtered-colimit commutation is requested on a non-filtered shape."""

    def __init__(self, shape: str, reason: str):
        super().__init__(f"shape {shape} is not filtered: {reason}")
        self.shape = shape
        self.reason = reason


class PosetQuotientCollapse(LexkitError):
    """Raised by strict poset carriers when a quotient order is not antisymmetric."""

    def __init__(self, collapsed: list[Any]):
        super().__init__(
            f"quotient order is not antisymmetric; would collapse {collapsed}"
        )
        self.collapsed = collapsed


class UniversalPropertyViolation(LexkitError):
    """Raised when a computed (co)limit fails exhaustive verification."""

    def __init__(self, construction: str, detail: str):
        super().__init__(f"{construction} failed verification: {detail}")
        self.construction = construction
        self.detail = detail


class ReplayError(LexkitError):
    def __init__(self, message: str):
        super().__init__(f"cannot replay counterexample: {message}")
        self.message = message
