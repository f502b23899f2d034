"""Exception hierarchy shared by all linesing modules."""


class LinesingError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatchError(LinesingError):
    """Two values from different coefficient fields were combined."""


class DimensionError(LinesingError):
    """Matrix or subspace dimensions are inconsistent for the operation."""


class InvariantViolationError(LinesingError):
    """A map fails to preserve a subspace; carries a witness vector."""

    def __init__(self, message, witness=None, image=None):
        super().__init__(message)
        self.witness = witness
        self.image = image


class TriangleAxiomError(LinesingError):
    """An MV triangle violates one of its defining identities."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class MorphismError(LinesingError):
    """The commuting-square conditions of a triangle morphism fail."""


class SesValidationError(LinesingError):
    """A short exact sequence of triangles violates exactness or a
    Morse-specific structural constraint."""


class MonodromyError(LinesingError):
    """Monodromy data is not an automorphism of the sequence (singular
    block or broken commutation)."""


class TraceConstraintError(LinesingError):
    """Supplied monodromy violates the Lefschetz trace constraint
    tr = (-1)^n, so the obstruction argument does not apply."""


class ParseError(LinesingError):
    """Polynomial text rejected; ``offset`` is the byte position."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class NotStabilizedError(LinesingError):
    """Local quotient dimension did not stabilize below the truncation
    cap; the intersection may be non-isolated."""

    def __init__(self, message, counts=None):
        super().__init__(message)
        self.counts = counts or []


class GenericityError(LinesingError):
    """A genericity cross-check failed (method disagreement, unstable
    slice samples, or a non-critical axis)."""


class DegradationError(LinesingError):
    """The desk-scale algorithm cannot finish; the caller should supply
    a parametrization instead."""


class InputError(LinesingError):
    """Malformed serialized data or command-line input."""
