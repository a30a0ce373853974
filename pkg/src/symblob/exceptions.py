"""Exception types raised by the package."""


class SymblobError(Exception):
    """Base class for all package-specific errors."""


class MatrixFileError(SymblobError):
    """A matrix/state file could not be parsed against its schema."""


class NonSymmetricError(SymblobError):
    """Input violates the symmetry invariant."""


class NotPositiveDefiniteError(SymblobError):
    """Input violates the positive-definiteness invariant."""


class NotSymplecticError(SymblobError):
    """Input violates the symplectic membership condition."""


class OddDimensionError(SymblobError):
    """Phase-space matrices must have even dimension."""


class DimensionMismatchError(SymblobError):
    """Operands have incompatible dimensions."""


class DimensionCapError(SymblobError):
    """Requested dimension exceeds the dense-kernel cap."""


class NoConvergenceError(SymblobError):
    """The iterative eigensolver exceeded its sweep cap."""


class DegenerateSpectrumError(SymblobError):
    """Pairing of a degenerate eigenspace could not be completed."""


class DegeneratePlaneError(SymblobError):
    """A plane section produced a non-positive quadratic form."""


class DegenerateDrawError(SymblobError):
    """Random plane draws stayed below the non-degeneracy floor."""


class IndexOutOfRangeError(SymblobError):
    """A mode index lies outside 1..n."""


class EmptyIndexSetError(SymblobError):
    """A subspace operation received no mode indices."""


class CapacityMismatchError(SymblobError):
    """The ellipsoid's capacity differs from the required value."""


class InternalInconsistencyError(SymblobError):
    """Mathematically equivalent routes disagreed beyond tolerance."""


class QuadratureError(SymblobError):
    """Adaptive quadrature failed to converge."""


class PreconditionError(SymblobError):
    """A command-level domain precondition does not hold."""
