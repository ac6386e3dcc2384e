"""Error taxonomy.

Every failure mode raised by the library derives from FlabError, so callers
(and the CLI exit-code contract) can catch one type.  Validation errors carry
a human-readable location ("block 0", "entry (2, 2)") in their message.
"""


class FlabError(Exception):
    """Base class for all library errors."""


class InvalidInput(FlabError):
    """Malformed or out-of-contract argument."""


class RingMismatch(FlabError):
    """Operands built over incompatible coefficient rings."""


class SingularPhi(FlabError):
    """A Frobenius matrix is not invertible (surjectivity axiom fails)."""


class WeightOutOfBounds(FlabError):
    """A filtration weight lies outside the declared bounds."""


class BlockRankMismatch(FlabError):
    """Block data of unequal rank or malformed matrix shapes."""


class RangeViolation(FlabError):
    """Weight interval too long for the requested operation."""


class NotPerfect(FlabError):
    """Gram matrix not invertible, or weights not self-dual."""


class SymmetryViolation(FlabError):
    """Gram matrix fails epsilon-symmetry."""


class FiltrationViolation(FlabError):
    """Pairing fails the filtration compatibility (forced zero pattern)."""


class PhiIncompatible(FlabError):
    """Pairing fails Frobenius compatibility."""


class OddRankSymplectic(FlabError):
    """Symplectic pairing requested on a module of odd rank."""


class MultiplicityNotFree(FlabError):
    """Operation requires pairwise distinct weights per block."""


class InternalRankFailure(FlabError):
    """A solvability guarantee was violated; indicates corrupted data."""


class NonMinimalPeriod(FlabError):
    """Weight word has a proper period."""


class IndexOutOfRange(FlabError):
    """Summand or block index outside the valid range."""


class SizeGuardExceeded(FlabError):
    """Requested finite-field tower larger than the size guard."""


class EnumerationTooLarge(FlabError):
    """Brute-force enumeration would exceed the size guard."""


class InvalidGroup(FlabError):
    """Unknown group family or invalid matrix size."""
