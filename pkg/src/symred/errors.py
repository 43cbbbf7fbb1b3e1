"""Exception hierarchy shared by all symred modules."""


class SymredError(Exception):
    """Base class for all errors raised by symred."""


class DegreeMismatch(SymredError):
    """Permutations (or a permutation and a matrix) act on different point counts."""


class OrderCapExceeded(SymredError):
    """Group enumeration exceeded the configured order cap."""


class IndexOutOfRange(SymredError, IndexError):
    """An element, class or block index is out of range."""


class FamilyMismatch(SymredError):
    """Declared group family is inconsistent with the actual group."""


class DegenerateRandomCombination(SymredError):
    """Random class-matrix combination had repeated eigenvalues on every retry."""


class VerificationFailed(SymredError):
    """A computed table or basis failed its internal consistency check."""


class NotARepresentation(SymredError):
    """Candidate generator images violate the group's multiplication."""


class NotIrreducible(SymredError):
    """Candidate irrep has character norm != 1."""


class IncompleteSet(SymredError):
    """Declared-complete irrep set does not satisfy sum of squared degrees = |G|."""


class DimensionMismatch(SymredError):
    """Matrix dimensions incompatible with the operation."""


class SingularImage(SymredError):
    """A generator image is not invertible."""


class GroupMismatch(SymredError):
    """Two representations do not share the same group."""


class NonIntegerMultiplicity(SymredError):
    """Character inner product did not round to an integer."""


class BackendMismatch(SymredError):
    """Exact and float scalar backends were mixed within one reduction."""


class RankMismatch(SymredError):
    """Projector rank disagrees with the multiplicity from characters."""


class SingularBasis(SymredError):
    """Assembled change-of-basis matrix is singular or too ill-conditioned."""


class NotEquivariant(SymredError):
    """Operator does not commute with the representation."""


class SingularMatrix(SymredError):
    """Linear solve hit a zero (or numerically negligible) pivot."""


class ConvergenceFailure(SymredError):
    """Dense eigensolver failed to converge."""


class EigensolverFailure(SymredError):
    """Per-block eigensolve failed; carries the block index."""

    def __init__(self, block_index, message):
        super().__init__(f"block {block_index}: {message}")
        self.block_index = block_index


class JobError(SymredError):
    """Job file is malformed or internally inconsistent."""
