"""Schmidt decomposition of the spectral biphoton state of pulsed type-I SPDC.

Analytic double-Gaussian models for short, long and intermediate pump pulses,
checked against a numerical SVD of the exact phase-matching amplitude.
"""

__version__ = "0.1.0"

from .crystal import CrystalOptics, crystal_preset
from .errors import ConfigError, DomainError, NumericalError, PhysicsError, RegimeWarning, SpdcError
from .kernel import GaussianPair, SchmidtParams, eigenvalue_ladder, schmidt_mode, wf_to_schmidt
from .model import PumpPulse, generalized_ladder, generalized_modes, interpolated_model
from .numerics import build_grid, discretize, schmidt_svd

__all__ = [
    "ConfigError",
    "CrystalOptics",
    "DomainError",
    "GaussianPair",
    "NumericalError",
    "PhysicsError",
    "PumpPulse",
    "RegimeWarning",
    "SchmidtParams",
    "SpdcError",
    "build_grid",
    "crystal_preset",
    "discretize",
    "eigenvalue_ladder",
    "generalized_ladder",
    "generalized_modes",
    "interpolated_model",
    "schmidt_mode",
    "schmidt_svd",
    "wf_to_schmidt",
]
