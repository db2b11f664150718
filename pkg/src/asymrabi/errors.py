"""Exception types raised by the library."""


class AsymRabiError(Exception):
    """Base class for all library errors."""


class TruncationInsufficient(AsymRabiError, ValueError):
    """The Fock cutoff is too small for the requested coherent amplitude."""


class DegenerateGround(AsymRabiError, ArithmeticError):
    """The two lowest eigenvalues are closer than the degeneracy threshold.

    The lowest eigenvalue, the spectral gap and the degenerate eigenvectors are
    attached so callers can still use the energy or project onto the subspace.
    """

    def __init__(self, message, energy=None, gap=None, subspace=None):
        super().__init__(message)
        self.energy = energy
        self.gap = gap
        self.subspace = subspace


class NoConvergence(AsymRabiError, RuntimeError):
    """Fock truncation reached its cap before the ground energy settled."""


class RootNotFound(AsymRabiError, RuntimeError):
    """No sign change could be bracketed for a displacement condition."""


class RootAmbiguous(AsymRabiError, RuntimeError):
    """Continuation lost the root branch (fold in the displacement condition)."""


class DegenerateB(AsymRabiError, ZeroDivisionError):
    """The three-level coupling B vanishes; eigenvector formulas divide by it."""


class DimensionMismatch(AsymRabiError, ValueError):
    pass


class BasisMismatch(AsymRabiError, ValueError):
    pass


class NotDensityMatrix(AsymRabiError, ValueError):
    pass


class ConfigInvalid(AsymRabiError, ValueError):
    pass


class UnknownPreset(AsymRabiError, KeyError):
    pass
