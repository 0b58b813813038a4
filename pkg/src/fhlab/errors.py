"""Structured errors and warnings shared across the package.

Poles and out-of-domain arguments raise typed exceptions instead of letting
NaNs propagate, so parameter-validation failures stay diagnosable.
"""


class DomainError(ValueError):
    """Argument lies outside the documented domain of an operation."""


class PoleError(DomainError):
    """Evaluation exactly at a pole (e.g. Gamma at a non-positive integer)."""


class SingularityError(DomainError):
    """Evaluation exactly on a non-removable singularity of a kernel."""


class QuadratureError(RuntimeError):
    """A quadrature failed to reach its requested tolerance."""


class IndefiniteSystemError(RuntimeError):
    """The shifted stiffness matrix lost positive definiteness.

    Signals that the spectral parameter is at or above the discrete
    Rayleigh minimum for the current mesh.
    """


class IterationError(RuntimeError):
    """An inner fixed-point iteration exceeded its cap without converging."""


class PositivityError(RuntimeError):
    """A quantity required to be (essentially) nonnegative went negative."""


class FitWindowError(ValueError):
    """A log-log fit window does not contain enough usable nodes."""


class ConfigError(ValueError):
    """Invalid run configuration (CLI or config file)."""


class NearPoleWarning(UserWarning):
    """A closed-form value was computed too close to a Gamma pole to trust."""


class IntegrabilityWarning(UserWarning):
    """Power-extrapolated behavior of a field suggests a divergent integral."""
