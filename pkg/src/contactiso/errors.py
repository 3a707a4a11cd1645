"""Exception types raised across the package."""


class ContactIsoError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateFormError(ContactIsoError):
    """A bilinear form that must be nondegenerate is singular."""


class OddDimensionError(ContactIsoError):
    """A Pfaffian was requested for an odd-dimensional matrix."""


class UnsupportedPencilError(ContactIsoError):
    """The form pair has a non-semisimple purely imaginary eigenvalue.

    Such pencils fall outside the block shapes this package classifies;
    exact nullspace computations (stabilizer dimension) still work.
    """


class NumericAmbiguityError(ContactIsoError):
    """Floating eigenvalue clusters are too close to separate reliably."""


class DimensionMismatchError(ContactIsoError):
    """Operands live over different coordinate systems or dimensions."""


class NotContactError(ContactIsoError):
    """The distribution fails the contact condition at a sample point."""


class FrameDegenerateError(ContactIsoError):
    """Frame fields are linearly dependent at a sample point."""


class SingularMapError(ContactIsoError):
    """The linear part of an affine map is not invertible."""


class NotSymplecticError(ContactIsoError):
    """A matrix expected to preserve the model symplectic form does not."""


class BadSpecError(ContactIsoError):
    """A model specification violates its constraints."""


class NotClosedError(ContactIsoError):
    """A commutator fell outside the span of a computed Lie algebra basis."""


class StructureParseError(ContactIsoError):
    """Malformed structure-spec text (polynomial grammar or JSON layout)."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ValidationError(ContactIsoError):
    """Structurally well-formed input with inconsistent content."""
