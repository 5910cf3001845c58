"""Exception hierarchy for the workbench.

Law violations are reported as values (:class:`qhyper.reports.LawReport`);
exceptions are reserved for inputs the operations cannot work with.
"""

from typing import Any, Mapping, Optional


class WorkbenchError(Exception):
    """Root of every error raised by qhyper."""


class StructuralError(WorkbenchError):
    """A table or structure does not have the shape its carrier demands."""

    def __init__(self, table: str, message: str) -> None:
        super().__init__(f"malformed {table}: {message}")
        self.table = table


class CapacityError(WorkbenchError):
    """An enumeration would exceed its configured bound."""

    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(f"{what}: size {size} exceeds bound {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class AlgebraIncompleteError(WorkbenchError):
    """A required meet or join does not exist in the algebra."""


class UnsupportedKindError(WorkbenchError):
    """The operation is not defined for this kind of base object."""


class DomainMismatchError(WorkbenchError):
    """Arrows or predicates do not line up on their objects."""


class LiftingError(WorkbenchError):
    """A pointwise construction leaves the fibre it should land in."""

    def __init__(self, quantifier: str, witness: Mapping[str, Any]) -> None:
        where = ", ".join(f"{k}={v}" for k, v in witness.items())
        super().__init__(f"{quantifier} does not lift into the fibre ({where})")
        self.quantifier = quantifier
        self.witness = dict(witness)


class FormulaSyntaxError(WorkbenchError):
    """Parse failure; ``column`` is the 0-based offset of the offending token."""

    def __init__(self, message: str, column: int) -> None:
        super().__init__(f"syntax error at column {column}: {message}")
        self.column = column


class TypeCheckError(WorkbenchError):
    """A term or formula is ill-sorted."""

    def __init__(
        self, message: str, expected: Optional[str] = None, actual: Optional[str] = None
    ) -> None:
        detail = message
        if expected is not None or actual is not None:
            detail = f"{message} (expected {expected}, got {actual})"
        super().__init__(detail)
        self.expected = expected
        self.actual = actual


class ModelError(WorkbenchError):
    """The model lacks structure the requested operation needs."""


class InputError(WorkbenchError):
    """A JSON document or command-line value could not be understood."""
