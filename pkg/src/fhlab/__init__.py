"""Numerical laboratory for the fractional Laplacian with a Hardy potential.

Closed-form constants and summability curves, singular-integral kernels for
the radial reduction, a graded-mesh Galerkin solver on the unit ball, and a
CLI exposing the experiments.
"""

__version__ = "0.1.0"

from .hardy import FracParams, HardyCoupling, SummabilityPoint  # noqa: F401
