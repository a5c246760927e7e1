"""Exception types shared across the solver."""


class MomentError(Exception):
    """Base class for solver-specific failures."""


class PositivityError(MomentError):
    """A state with non-positive density or temperature was produced."""


class EquilibriumDomainError(MomentError):
    """The relaxation target is outside its admissible parameter domain
    (e.g. a non-SPD anisotropy tensor)."""


class BoundaryError(MomentError):
    """The wall treatment received an unphysical inner state."""


class ConvergenceError(MomentError):
    """The iteration could not proceed (e.g. positivity back-off exhausted)."""
