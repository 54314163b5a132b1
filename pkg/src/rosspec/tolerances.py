"""Numerical tolerance profiles.

A single frozen dataclass collects every knob the solvers consult.  Three
named profiles are provided; the active default is chosen by the
``ROSSPEC_TOL_PROFILE`` environment variable (``default`` when unset).
Individual callers (and CLI flags) can override fields via ``replace``.
"""
from __future__ import annotations

import dataclasses
import os

from .errors import ValidationError


@dataclasses.dataclass(frozen=True)
class Tolerances:
    """Solver tolerance bundle.

    Attributes
    ----------
    ode_rtol, ode_atol:
        Relative/absolute error targets of the adaptive shooting integrator.
    eig_abs, eig_rel:
        Eigenvalue termination: converged when the bracket width drops below
        ``max(eig_abs, eig_rel * |lambda|)``.
    quad_rel:
        Relative tolerance of adaptive quadratures (volumes, Rayleigh forms).
    series_eps:
        Offset of the left endpoint used to start ball integrations from the
        regular series data.
    bc_tol:
        Acceptable normalized boundary-condition residual of a converged mode.
    root_tol:
        Tolerance of scalar root searches (matched radii, Steklov cross-check).
    profile_points:
        Baseline sample count of stored radial profiles.
    max_iter:
        Iteration budget of eigenvalue and root searches.
    """

    name: str = "default"
    ode_rtol: float = 1e-10
    ode_atol: float = 1e-10
    eig_abs: float = 1e-9
    eig_rel: float = 1e-9
    quad_rel: float = 1e-10
    series_eps: float = 1e-6
    bc_tol: float = 1e-8
    root_tol: float = 1e-10
    profile_points: int = 800
    max_iter: int = 200

    def replace(self, **kw) -> "Tolerances":
        return dataclasses.replace(self, **kw)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


DEFAULT = Tolerances()
STRICT = Tolerances(
    name="strict",
    ode_rtol=1e-12,
    ode_atol=1e-12,
    eig_abs=1e-11,
    eig_rel=1e-11,
    quad_rel=1e-12,
    series_eps=5e-7,
    profile_points=1600,
)
FAST = Tolerances(
    name="fast",
    ode_rtol=1e-8,
    ode_atol=1e-8,
    eig_abs=1e-7,
    eig_rel=1e-7,
    quad_rel=1e-8,
    bc_tol=1e-6,
    profile_points=400,
)

PROFILES = {"default": DEFAULT, "strict": STRICT, "fast": FAST}

ENV_VAR = "ROSSPEC_TOL_PROFILE"


def profile(name: str) -> Tolerances:
    """Look up a named profile; unknown names are a validation error."""
    try:
        return PROFILES[name]
    except KeyError:
        raise ValidationError(
            f"unknown tolerance profile {name!r}; expected one of {sorted(PROFILES)}",
            payload={"profile": name},
        ) from None


def active() -> Tolerances:
    """Profile selected by the environment, read at call time."""
    return profile(os.environ.get(ENV_VAR, "default"))


def resolve(tols: Tolerances | None) -> Tolerances:
    return tols if tols is not None else active()
