"""Exception hierarchy shared by all nilpow modules."""


class NilpowError(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeModulus(NilpowError):
    """The requested prime-field modulus is not prime."""


class CharacteristicTwo(NilpowError):
    """Coefficient fields of characteristic 2 are not admissible."""


class DivisionByZero(NilpowError):
    """Inverse of the zero field element requested."""


class DegreeOutOfRange(NilpowError):
    """Degree outside the range 1..max_degree."""


class NotNormal(NilpowError):
    """Word contains a forbidden power run and is zero in the algebra."""


class TruncationOverflow(NilpowError):
    """Product degree exceeds the truncation bound."""


class SpecMismatch(NilpowError):
    """Operands belong to different algebra presentations or fields."""


class ArityMismatch(NilpowError):
    """Wrong number of arguments for a multilinear evaluation."""


class BoundExceedsTruncation(NilpowError):
    """The generation bound 2n-2 is larger than max_degree."""


class NotALieIdeal(NilpowError):
    """Subspace passed where a Lie ideal is required."""


class InternalSoundnessFailure(NilpowError):
    """A closure escaped the space it must stay inside; implementation bug."""
