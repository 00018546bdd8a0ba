"""Exception types raised by the toolkit.

Every failure mode that callers are expected to handle has its own class so
that pipeline code can distinguish fatal conditions (NotRegular, NonSimpleC)
from per-eigenvalue events that are merely recorded.
"""


class VecsturmError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(VecsturmError):
    """Run configuration could not be parsed or validated."""


class MissingArtifact(VecsturmError):
    """A pipeline stage was invoked without its input artifacts."""


# --- boundary conditions ----------------------------------------------------

class DegenerateCondition(VecsturmError):
    """A boundary condition row has alpha_i = beta_i = 0."""


class NotRegular(VecsturmError):
    """Boundary conditions failed the (strong) regularity test."""


class CoincidentRoots(VecsturmError):
    """The characteristic quadratic has a (numerically) double root."""


class RankDeficiency(VecsturmError):
    """Adjoint boundary construction hit a rank-deficient condition matrix."""


# --- potentials -------------------------------------------------------------

class OutOfDomain(VecsturmError):
    """Evaluation point outside [0, 1]."""


# --- root finding / extraction ----------------------------------------------

class NewtonDivergence(VecsturmError):
    """Newton iteration left its trust region or failed to converge."""


class NormalizationBreakdown(VecsturmError):
    """|(phi, phi*)| too small to normalize; near-multiple eigenvalue."""


class ContourThroughZero(VecsturmError):
    """A contour sample fell on (numerically) a zero of the determinant."""


class NoZeroInDisk(VecsturmError):
    """Argument principle found no zero inside the search disk."""


class MultipleZeros(VecsturmError):
    """Argument principle found more than one zero inside the search disk."""

    def __init__(self, message, count=None, roots=None):
        super().__init__(message)
        self.count = count
        self.roots = roots if roots is not None else []


class NullSpaceAmbiguity(VecsturmError):
    """Two smallest singular values nearly equal; eigenspace not 1-D."""


class BiorthogonalBreakdown(VecsturmError):
    """|(Psi, Psi*)| too small before scaling; near-Jordan pair."""


# --- integrator -------------------------------------------------------------

class StepUnderflow(VecsturmError):
    """Adaptive step controller drove the step below its floor."""


# --- mean-matrix spectrum ---------------------------------------------------

class NonSimpleC(VecsturmError):
    """The mean matrix C has a (numerically) multiple eigenvalue."""


# --- oracle -----------------------------------------------------------------

class EliminationSingular(VecsturmError):
    """Boundary elimination system of the discretization is singular."""


# --- diagnostics ------------------------------------------------------------

class InsufficientRange(VecsturmError):
    """Too few eigenvalue indices to run an asymptotics fit."""


class GridMismatch(VecsturmError):
    """Traces passed to a diagnostic do not share the same grid."""
