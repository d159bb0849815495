"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: parameter problems -> 2, absence of
bound states or of a classically allowed region -> 3, numerical method
failures -> 4.
"""


class SpectralError(Exception):
    """Base class for everything raised by this package on purpose."""


class ParameterError(SpectralError, ValueError):
    """Invalid physical parameters or quantum numbers."""


class NoClassicalRegionError(SpectralError):
    """No classically allowed interval at the requested energy."""


class NoBoundStateError(SpectralError):
    """The requested level does not exist below the dissociation threshold."""


class StructureMismatchError(SpectralError):
    """The turning structure never shows the requested number of cuts.

    Carries the maximum count actually found, so callers can report it.
    """

    def __init__(self, message, found=None):
        super().__init__(message)
        self.found = found


class QuadratureConvergenceError(SpectralError):
    """Adaptive quadrature failed to reach tolerance at the maximum order."""


class RootConvergenceError(SpectralError):
    """Energy root finding failed to bracket or polish a root."""


class TurningPointProximityError(SpectralError):
    """Wavefunction evaluation requested too close to a turning point."""


class UndersampledError(SpectralError):
    """Sample grid too coarse to resolve the oscillation being counted."""


class DegenerateSampleError(SpectralError):
    """Sample has zero norm; normalization impossible."""


class DomainTooSmallError(SpectralError):
    """Oracle grid cannot contain the requested eigenfunctions."""
