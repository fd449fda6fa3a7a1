"""Hardy constants of non-convex quadrilaterals.

The constant of a quadrilateral with reflex angle ``beta`` equals the
constant of the infinite sector of the same angle: 1/4 up to a critical
angle, and the root of a Gamma-function equation beyond it.
"""

from .constant import HardyParams, beta_critical, solve_c
from .errors import (
    ClassificationAmbiguous,
    DegenerateInput,
    DegenerateNormal,
    HardyDomainError,
    MeshTooCoarse,
    MultipleReflex,
    NonConvergence,
)
from .estimator import EstimateReport, quad_rayleigh, sector_oracle
from .geometry import Quadrilateral, build_gamma, classify, normalize
from .profile import ProfileSolution, build_profile
from .verifier import CheckReport, boundary_flux, lemma_suite

__version__ = "0.1.0"

__all__ = [
    "HardyParams",
    "beta_critical",
    "solve_c",
    "ProfileSolution",
    "build_profile",
    "Quadrilateral",
    "normalize",
    "build_gamma",
    "classify",
    "CheckReport",
    "lemma_suite",
    "boundary_flux",
    "EstimateReport",
    "sector_oracle",
    "quad_rayleigh",
    "HardyDomainError",
    "NonConvergence",
    "DegenerateInput",
    "MultipleReflex",
    "ClassificationAmbiguous",
    "DegenerateNormal",
    "MeshTooCoarse",
]
