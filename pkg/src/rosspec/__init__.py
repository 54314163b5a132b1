"""Spectral geometry of geodesic balls and annuli in negatively curved
rank-1 symmetric spaces: Robin/Neumann/Steklov eigenvalues, structural
property checks, and ball-versus-annulus comparison sweeps.
"""
from .errors import (ConsistencyError, ConvergenceError, CounterexampleError,
                     DomainError, InvalidSpaceError, NumericalError,
                     RosspecError, ValidationError)
from .geometry import (GeodesicPolarData, Kind, SpaceParams, ball_volume,
                       density, lam1_alt_form, log_density, make_space,
                       polar_data, radius_for_volume)
from .sturm import (EigenResult, RadialDomain, RadialProfile, RobinProblem,
                    eigen_radial, oracle_eigen, rayleigh_quotient, shoot,
                    steklov_first, steklov_first_via_robin)
from .ball import (CheckEntry, ExtendedProfile, MonotonicityRecord,
                   PropositionReport, check_propositions, extend_profile,
                   lambda2_ball, monotonicity_F, second_radial)
from .compare import (TheoremReport, TheoremRow, fraenkel_asymmetry_annulus,
                      lambda2_annulus, matched_ball_radius, rayleigh_bound,
                      verify_theorem)
from .tolerances import DEFAULT, FAST, PROFILES, STRICT, Tolerances, profile

__version__ = "0.1.0"

__all__ = [
    "CheckEntry", "ConsistencyError", "ConvergenceError", "CounterexampleError",
    "DEFAULT", "DomainError", "EigenResult", "ExtendedProfile", "FAST",
    "GeodesicPolarData", "InvalidSpaceError", "Kind", "MonotonicityRecord",
    "NumericalError", "PROFILES", "PropositionReport", "RadialDomain",
    "RadialProfile", "RobinProblem", "RosspecError", "STRICT", "SpaceParams",
    "TheoremReport", "TheoremRow", "Tolerances", "ValidationError",
    "ball_volume", "check_propositions", "density", "eigen_radial",
    "extend_profile", "fraenkel_asymmetry_annulus", "lam1_alt_form",
    "lambda2_annulus", "lambda2_ball", "log_density", "make_space",
    "matched_ball_radius", "monotonicity_F", "oracle_eigen", "polar_data",
    "profile", "radius_for_volume", "rayleigh_bound", "rayleigh_quotient",
    "second_radial", "shoot", "steklov_first", "steklov_first_via_robin",
    "verify_theorem",
]
