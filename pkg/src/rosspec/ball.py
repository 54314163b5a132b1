"""Second Robin eigenvalue of geodesic balls and its certificate apparatus.

For ``alpha <= 0`` the second eigenvalue of a ball is the first eigenvalue
of the ``ell = 1`` radial problem; the second radial eigenvalue sits
strictly above it and is solved alongside as a guard.  The eigenfunction
profile, extended past the boundary by a calibrated exponential tail,
drives a monotone comparison function

    F = g'^2 - H' g^2 + 2 alpha g g' + alpha H g^2

whose non-increase and decay rate past the boundary are what the domain
comparison in :mod:`rosspec.compare` integrates against.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .errors import ConsistencyError, ValidationError
from .geometry import SpaceParams, polar_data
from .sturm import EigenResult, RadialDomain, RobinProblem, eigen_radial, steklov_first
from .tolerances import Tolerances, resolve


@functools.lru_cache(maxsize=512)
def _mode_cached(
    space: SpaceParams, R: float, alpha: float, ell: int, index: int, t: Tolerances
) -> EigenResult:
    problem = RobinProblem(space, RadialDomain.ball(R), alpha, ell)
    return eigen_radial(problem, index, t)


def second_radial(
    space: SpaceParams, R: float, alpha: float, tols: Tolerances | None = None
) -> EigenResult:
    """Second eigenvalue of the radial (ell = 0) mode on the ball."""
    return _mode_cached(space, float(R), float(alpha), 0, 2, resolve(tols))


def lambda2_ball(
    space: SpaceParams, R: float, alpha: float, tols: Tolerances | None = None
) -> EigenResult:
    """Second Robin eigenvalue of the ball of radius ``R``, ``alpha <= 0``.

    Returns the first ``ell = 1`` mode (profile normalized to unit
    derivative at the center) after checking it sits below the second
    radial eigenvalue.  Results are cached; treat them as read-only.
    """
    t = resolve(tols)
    alpha = float(alpha)
    if not alpha <= 0.0:
        raise ValidationError(f"lambda2_ball expects alpha <= 0, got {alpha}")
    mu = _mode_cached(space, float(R), alpha, 1, 1, t)
    tau2 = second_radial(space, R, alpha, t)
    guard = max(t.eig_abs, t.eig_rel * abs(tau2.lam))
    if not mu.lam < tau2.lam - guard:
        raise ConsistencyError(
            "first nonradial eigenvalue failed to sit below the second radial one",
            payload={"mu1": mu.lam, "tau2": tau2.lam, "R": R, "alpha": alpha},
        )
    return mu


@dataclass(eq=False)
class ExtendedProfile:
    """Ball eigenfunction extended past the boundary by its Robin tail.

    Inside ``[eps, R]`` evaluation interpolates the stored profile with a
    cubic Hermite scheme (exact at the nodes in both value and slope);
    below ``eps`` the leading linear behavior is used; past ``R`` the
    extension ``g(R) exp(-alpha (r - R))``, which matches value and slope.
    """

    space: SpaceParams
    R: float
    alpha: float
    eps: float
    boundary_value: float
    boundary_deriv: float
    _spline: CubicHermiteSpline
    _dspline: CubicHermiteSpline

    def value(self, r: float) -> float:
        if r > self.R:
            return self.boundary_value * math.exp(-self.alpha * (r - self.R))
        if r < self.eps:
            return self._left_slope * r
        return float(self._spline(r))

    def deriv(self, r: float) -> float:
        if r > self.R:
            return -self.alpha * self.value(r)
        if r < self.eps:
            return self._left_slope
        return float(self._dspline(r))

    @property
    def _left_slope(self) -> float:
        return float(self._spline(self.eps, 1))


def extend_profile(result: EigenResult, alpha: float) -> ExtendedProfile:
    """Build the extended profile of a ball ``ell = 1`` eigenfunction.

    ``alpha`` must match the Robin parameter the mode was solved with; the
    C^1 fit of the tail is certified through the boundary residual.
    """
    problem = result.problem
    if not problem.domain.is_ball or result.ell != 1:
        raise ValidationError("extension requires an ell = 1 ball eigenfunction")
    if float(alpha) != problem.alpha:
        raise ValidationError(
            f"alpha {alpha} does not match the solved problem's {problem.alpha}"
        )
    prof = result.profile
    gR = float(prof.values[-1])
    gpR = float(prof.derivs[-1])
    scale = max(1.0, abs(gR), abs(gpR))
    if abs(gpR + problem.alpha * gR) > 1e-6 * scale:
        raise ConsistencyError(
            "profile does not satisfy the Robin condition; tail would not be C^1",
            payload={"gR": gR, "gpR": gpR, "alpha": problem.alpha},
        )
    spline = CubicHermiteSpline(prof.grid, prof.values, prof.derivs)
    return ExtendedProfile(
        space=problem.space,
        R=problem.domain.r_outer,
        alpha=problem.alpha,
        eps=float(prof.grid[0]),
        boundary_value=gR,
        boundary_deriv=gpR,
        _spline=spline,
        _dspline=spline.derivative(),
    )


@dataclass(frozen=True)
class MonotonicityRecord:
    """F and its derivative data at one radius.

    ``bound`` is the certified decay rate of F past the boundary (None
    inside); ``Fp_tail`` is the closed-form derivative available on the
    tail, and ``tail_consistent`` flags agreement of the two derivative
    routes there.
    """

    r: float
    F: float
    Fp: float
    bound: float | None
    Fp_tail: float | None
    tail_consistent: bool


def _F_value(space: SpaceParams, ext: ExtendedProfile, r: float) -> float:
    u = ext.value(r)
    v = ext.deriv(r)
    data = polar_data(space, r)
    return v * v - data.Hp * u * u + ext.alpha * (2.0 * u * v + data.H * u * u)


def monotonicity_F(
    space: SpaceParams, ext: ExtendedProfile, r: float
) -> MonotonicityRecord:
    """Evaluate the comparison function at ``r`` with derivative certificates.

    The derivative is a centered difference at step 1e-5 (shrunk near the
    boundary junction so the stencil stays on one side).  Past the
    boundary the closed form of F' on the tail and the decay bound

        -(7/8) ((m - k) / sinh^3 r + (k - 1) / (sinh^3 r cosh^3 r)) g(R)^2

    are attached.
    """
    r = float(r)
    if r <= 0.0:
        raise ValidationError(f"radius must be positive, got {r}")
    h = 1e-5
    if r > ext.R:
        h = min(h, 0.5 * (r - ext.R))
    elif r < ext.R:
        h = min(h, 0.5 * (ext.R - r))
    h = max(h, 1e-9)
    h = min(h, 0.5 * r)
    F = _F_value(space, ext, r)
    Fp = (_F_value(space, ext, r + h) - _F_value(space, ext, r - h)) / (2.0 * h)

    bound = None
    Fp_tail = None
    tail_consistent = True
    if r > ext.R:
        m, k = space.m, space.k
        data = polar_data(space, r)
        # sinh and cosh powers via logs to stay overflow-safe far out.
        log_s, log_c = _log_sinh(r), _log_cosh(r)
        inv_s3 = math.exp(-3.0 * log_s)
        inv_c3 = math.exp(-3.0 * log_c)
        gR = ext.boundary_value
        bound = -0.875 * ((m - k) * inv_s3 + (k - 1) * inv_s3 * inv_c3) * gR * gR
        u = ext.value(r)
        a = ext.alpha
        Fp_tail = (
            2.0 * a ** 3 - data.Hpp + 3.0 * a * data.Hp - 2.0 * a * a * data.H
        ) * u * u
        tail_consistent = abs(Fp - Fp_tail) <= 1e-4 * max(1.0, abs(Fp_tail))
    return MonotonicityRecord(
        r=r, F=F, Fp=Fp, bound=bound, Fp_tail=Fp_tail, tail_consistent=tail_consistent
    )


def _log_sinh(r: float) -> float:
    return r + math.log(-math.expm1(-2.0 * r)) - math.log(2.0)


def _log_cosh(r: float) -> float:
    return r + math.log(2.0 + math.expm1(-2.0 * r)) - math.log(2.0)


@dataclass(frozen=True)
class CheckEntry:
    """One structural check: raw margin, its numeric floor, and the verdict.

    ``margin`` is the exact computed distance to failure; checks whose
    mathematical statement degenerates at a grid endpoint (e.g. the
    derivative vanishing at the boundary when alpha = 0) carry a small
    positive floor, and ``passed`` is ``margin + floor > 0``.
    """

    name: str
    margin: float
    floor: float
    passed: bool


@dataclass(frozen=True)
class PropositionReport:
    space: SpaceParams
    R: float
    alpha: float
    lam2: float
    tau2: float
    sigma1: float
    entries: tuple[CheckEntry, ...]
    all_passed: bool


def check_propositions(
    space: SpaceParams, R: float, alpha: float, tols: Tolerances | None = None
) -> PropositionReport:
    """Run the structural property suite of the ball mode at one ``alpha``.

    Checks, each reported with its raw worst margin:

    * the eigenfunction derivative is positive across the profile grid;
    * its logarithmic derivative stays above ``-alpha``;
    * the second eigenvalue is nonnegative on ``[-sigma_1, 0]``;
    * the nonradial mode sits strictly below the second radial one;
    * the first Steklov eigenvalue respects the ``1/R`` bound.
    """
    t = resolve(tols)
    R = float(R)
    alpha = float(alpha)
    sigma1 = steklov_first(space, R, t)
    if not -sigma1 - 1e-9 <= alpha <= 0.0:
        raise ValidationError(
            f"alpha must lie in [-sigma1, 0] = [{-sigma1}, 0], got {alpha}"
        )
    mu = lambda2_ball(space, R, alpha, t)
    tau2 = second_radial(space, R, alpha, t)
    prof = mu.profile
    values = prof.values
    derivs = prof.derivs
    if not np.all(values > 0.0):
        raise ConsistencyError(
            "first nonradial eigenfunction should be positive on (0, R]",
            payload={"R": R, "alpha": alpha},
        )
    deriv_margin = float(np.min(derivs))
    deriv_floor = 1e-8 * float(np.max(np.abs(derivs)))
    logderiv_margin = float(np.min(derivs / values + alpha))
    logderiv_floor = 1e-8 * (1.0 + abs(alpha))
    lam2_margin = mu.lam
    lam2_floor = 1e-7
    order_margin = tau2.lam - mu.lam
    escobar_margin = 1.0 / R - sigma1
    entries = (
        CheckEntry("derivative_positive", deriv_margin, deriv_floor,
                   deriv_margin + deriv_floor > 0.0),
        CheckEntry("log_derivative_above_minus_alpha", logderiv_margin, logderiv_floor,
                   logderiv_margin + logderiv_floor > 0.0),
        CheckEntry("second_eigenvalue_nonnegative", lam2_margin, lam2_floor,
                   lam2_margin + lam2_floor > 0.0),
        CheckEntry("nonradial_below_second_radial", order_margin, 0.0,
                   order_margin > 0.0),
        CheckEntry("steklov_below_inverse_radius", escobar_margin, 0.0,
                   escobar_margin > 0.0),
    )
    return PropositionReport(
        space=space,
        R=R,
        alpha=alpha,
        lam2=mu.lam,
        tau2=tau2.lam,
        sigma1=sigma1,
        entries=entries,
        all_passed=all(e.passed for e in entries),
    )
