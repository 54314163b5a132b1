"""Domain comparison: annulus spectra against the volume-matched ball.

The headline computation fixes a volume and a Robin parameter, solves the
second eigenvalue of the matched ball once, then sweeps concentric annuli
of that volume.  Each annulus is scored three ways: its own second
eigenvalue (exact, via the radial solver), the Rayleigh quotient of the
transplanted ball eigenfunction (an upper test value sandwiched between
the two), and its asymmetry relative to the matched ball.  The sweep
certifies the gap stays nonnegative and fits the sharpest quadratic
stability constant the data supports.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy.integrate import IntegrationWarning, quad

from .ball import ExtendedProfile, _F_value, extend_profile, lambda2_ball
from .errors import CounterexampleError, ValidationError
from .geometry import SpaceParams, ball_volume, density, radius_for_volume
from .sturm import EigenResult, RadialDomain, RobinProblem, eigen_radial, steklov_first
from .tolerances import Tolerances, resolve

# Gaps this far below zero abort the sweep as a genuine counterexample;
# anything closer to zero is attributed to solver resolution.
GAP_ABORT = -1e-8

# Rows whose squared asymmetry clears this floor carry a gap large enough
# to measure; below it the gap drowns in eigenvalue tolerance.
RESOLVABLE_ASYMMETRY_SQ = 1e-8


def lambda2_annulus(
    space: SpaceParams, r_inner: float, r_outer: float, alpha: float,
    tols: Tolerances | None = None,
) -> EigenResult:
    """Second Robin eigenvalue of the annulus, as the winning mode.

    Solves the first two radial values and the first degree-one value and
    returns the second smallest of the three.  Modes of degree two and up
    are not solved, which can only overestimate, so downstream comparison
    tests remain conservative.
    """
    t = resolve(tols)
    dom = RadialDomain.annulus(r_inner, r_outer)
    tau1 = eigen_radial(RobinProblem(space, dom, alpha, 0), 1, t)
    tau2 = eigen_radial(RobinProblem(space, dom, alpha, 0), 2, t)
    mu1 = eigen_radial(RobinProblem(space, dom, alpha, 1), 1, t)
    return sorted((tau1, tau2, mu1), key=lambda res: res.lam)[1]


def matched_ball_radius(
    space: SpaceParams, r_inner: float, r_outer: float,
    tols: Tolerances | None = None,
) -> float:
    """Radius of the ball whose volume equals the annulus volume."""
    v = ball_volume(space, r_outer, tols) - ball_volume(space, r_inner, tols)
    return radius_for_volume(space, v, tols)


def fraenkel_asymmetry_annulus(
    space: SpaceParams, r_inner: float, r_outer: float,
    tols: Tolerances | None = None,
) -> float:
    """Volume fraction of the annulus outside its concentric matched ball.

    The matched ball of a proper annulus nests strictly between the two
    radii, making the symmetric difference twice the inner hole.
    """
    t = resolve(tols)
    dom = RadialDomain.annulus(r_inner, r_outer)
    v_in = ball_volume(space, dom.r_inner, t)
    v = ball_volume(space, dom.r_outer, t) - v_in
    R = radius_for_volume(space, v, t)
    if not dom.r_inner < R < dom.r_outer:
        raise ValidationError(
            f"matched radius {R} fell outside the annulus ({r_inner}, {r_outer})"
        )
    return 2.0 * v_in / v


def rayleigh_bound(
    space: SpaceParams, domain: RadialDomain, alpha: float,
    tols: Tolerances | None = None,
) -> float:
    """Rayleigh quotient of the transplanted ball mode over ``domain``.

    The trial function is the second eigenfunction of the volume-matched
    ball, extended past its boundary by the calibrated exponential tail.
    On the ball itself this reproduces the eigenvalue; on an annulus of
    the same volume it lands between the two second eigenvalues.
    """
    t = resolve(tols)
    alpha = float(alpha)
    v = ball_volume(space, domain.r_outer, t)
    if not domain.is_ball:
        v -= ball_volume(space, domain.r_inner, t)
    RB = radius_for_volume(space, v, t)
    sigma1 = steklov_first(space, RB, t)
    if not -sigma1 - 1e-9 <= alpha <= 0.0:
        raise ValidationError(
            f"alpha must lie in [-sigma1, 0] = [{-sigma1}, 0], got {alpha}"
        )
    mode = lambda2_ball(space, RB, alpha, t)
    ext = extend_profile(mode, alpha)

    def num(r: float) -> float:
        return _F_value(space, ext, r) * density(space, r)

    def den(r: float) -> float:
        g = ext.value(r)
        return g * g * density(space, r)

    lo = 0.0 if domain.is_ball else domain.r_inner
    pts = [RB] if lo < RB < domain.r_outer else None
    kw = dict(epsabs=1e-13, epsrel=t.quad_rel, limit=300, points=pts)
    # The kink of F at the ball radius makes quad report roundoff even
    # though the split at RB keeps the result well past the certified
    # accuracy (the ball case reproduces the eigenvalue to ~1e-10).
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        num_val = quad(num, lo, domain.r_outer, **kw)[0]
        den_val = quad(den, lo, domain.r_outer, **kw)[0]
    return num_val / den_val


@dataclass(frozen=True)
class TheoremRow:
    """One annulus of the sweep, scored against the matched ball."""

    r_inner: float
    r_outer: float
    lam2_domain: float
    lam2_ball: float
    mode_ell: int
    mode_index: int
    gap: float
    asymmetry: float
    rayleigh_bound: float
    resolvable: bool


@dataclass(frozen=True)
class TheoremReport:
    space: SpaceParams
    volume: float
    alpha: float
    ball_radius: float
    sigma1: float
    lam2_ball: float
    rows: tuple[TheoremRow, ...]
    fitted_constant: float | None
    all_gaps_positive: bool
    gap_vanishes_with_asymmetry: bool
    gap_monotone: bool


def verify_theorem(
    space: SpaceParams, volume: float, alpha: float, inner_radii: Sequence[float] | Iterable[float],
    tols: Tolerances | None = None,
) -> TheoremReport:
    """Sweep concentric annuli of fixed volume against the matched ball.

    For each inner radius the outer one is solved so the volume matches,
    the annulus second eigenvalue and the transplanted Rayleigh quotient
    are computed, and the gap to the ball eigenvalue is recorded.  A gap
    below ``GAP_ABORT`` aborts with the offending row attached.  The
    fitted constant is the smallest gap-to-squared-asymmetry ratio over
    the rows; ``resolvable`` flags the rows whose asymmetry is large
    enough for that ratio to mean anything.
    """
    t = resolve(tols)
    alpha = float(alpha)
    volume = float(volume)
    if not (math.isfinite(volume) and volume > 0.0):
        raise ValidationError(f"volume must be a finite positive number, got {volume}")
    RB = radius_for_volume(space, volume, t)
    sigma1 = steklov_first(space, RB, t)
    if not -sigma1 - 1e-9 <= alpha <= 0.0:
        raise ValidationError(
            f"alpha must lie in [-sigma1, 0] = [{-sigma1}, 0], got {alpha}"
        )
    lamB = lambda2_ball(space, RB, alpha, t).lam

    rows: list[TheoremRow] = []
    for R1 in inner_radii:
        R1 = float(R1)
        if not (math.isfinite(R1) and R1 > 0.0):
            raise ValidationError(f"inner radius must be positive, got {R1}")
        R2 = radius_for_volume(space, volume + ball_volume(space, R1, t), t)
        win = lambda2_annulus(space, R1, R2, alpha, t)
        asym = fraenkel_asymmetry_annulus(space, R1, R2, t)
        bound = rayleigh_bound(space, RadialDomain.annulus(R1, R2), alpha, t)
        gap = lamB - win.lam
        row = TheoremRow(
            r_inner=R1,
            r_outer=R2,
            lam2_domain=win.lam,
            lam2_ball=lamB,
            mode_ell=win.ell,
            mode_index=win.index,
            gap=gap,
            asymmetry=asym,
            rayleigh_bound=bound,
            resolvable=asym * asym >= RESOLVABLE_ASYMMETRY_SQ,
        )
        if gap <= GAP_ABORT:
            raise CounterexampleError(
                "annulus second eigenvalue exceeded the matched ball's",
                payload={
                    "space": space.label(),
                    "alpha": alpha,
                    "volume": volume,
                    "r_inner": R1,
                    "r_outer": R2,
                    "lam2_annulus": win.lam,
                    "lam2_ball": lamB,
                    "gap": gap,
                },
            )
        rows.append(row)

    ratios = [r.gap / (r.asymmetry * r.asymmetry) for r in rows if r.gap > 0.0]
    fitted = min(ratios) if ratios else None
    all_pos = all(r.gap > 0.0 for r in rows)
    by_inner = sorted(rows, key=lambda r: r.r_inner)
    gaps_sorted = [r.gap for r in by_inner]
    vanishes = not rows or min(gaps_sorted) == gaps_sorted[0]
    monotone = all(a <= b + 1e-12 for a, b in zip(gaps_sorted, gaps_sorted[1:]))
    return TheoremReport(
        space=space,
        volume=volume,
        alpha=alpha,
        ball_radius=RB,
        sigma1=sigma1,
        lam2_ball=lamB,
        rows=tuple(rows),
        fitted_constant=fitted,
        all_gaps_positive=all_pos,
        gap_vanishes_with_asymmetry=vanishes,
        gap_monotone=monotone,
    )
