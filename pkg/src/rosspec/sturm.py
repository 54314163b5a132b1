"""Radial Robin eigenvalue engine.

Separation of variables reduces the Robin problem on a ball or annulus to
one-dimensional boundary problems in the radius.  The mode with angular
number ``ell`` solves

    -g'' - H(r) g' + q_ell(r) g = lam g

with ``q_0 = 0`` and ``q_1`` the first sphere eigenvalue, the Robin
condition ``g'(R) + alpha g(R) = 0`` at the outer boundary, series data at
the center for balls, and ``-g'(R1) + alpha g(R1) = 0`` at the inner
boundary of annuli.

Two independent routes are provided.  :func:`eigen_radial` shoots with an
adaptive embedded pair and locates eigenvalues through a scaled Pruefer
angle at the outer endpoint, which combines the interior node count and
the boundary mismatch into one quantity that is strictly increasing in the
spectral parameter.  :func:`oracle_eigen` discretizes the weighted
variational form with second-order differences and extracts eigenvalues by
Sturm-sequence bisection; callers Richardson-extrapolate two grids.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import simpson

from .errors import ConsistencyError, ConvergenceError, DomainError, ValidationError
from .geometry import SpaceParams, density, polar_data, space_coefficients
from .integrate import integrate_radial
from .tolerances import Tolerances, resolve


@dataclass(frozen=True)
class RadialDomain:
    """Radial domain: a geodesic ball (r_inner == 0) or annulus."""

    r_inner: float
    r_outer: float

    def __post_init__(self):
        ri, ro = float(self.r_inner), float(self.r_outer)
        if not (math.isfinite(ri) and math.isfinite(ro)):
            raise DomainError(f"radii must be finite, got [{self.r_inner}, {self.r_outer}]")
        if ri < 0.0 or ro <= ri:
            raise DomainError(
                f"need 0 <= r_inner < r_outer, got [{ri}, {ro}]",
                payload={"r_inner": ri, "r_outer": ro},
            )
        object.__setattr__(self, "r_inner", ri)
        object.__setattr__(self, "r_outer", ro)

    @property
    def is_ball(self) -> bool:
        return self.r_inner == 0.0

    @classmethod
    def ball(cls, R: float) -> "RadialDomain":
        return cls(0.0, R)

    @classmethod
    def annulus(cls, R1: float, R2: float) -> "RadialDomain":
        if not R1 > 0.0:
            raise DomainError(f"annulus needs r_inner > 0, got {R1}")
        return cls(R1, R2)


@dataclass(frozen=True)
class RobinProblem:
    """One separated eigenvalue problem: space, domain, Robin alpha, mode ell."""

    space: SpaceParams
    domain: RadialDomain
    alpha: float
    ell: int

    def __post_init__(self):
        if not math.isfinite(float(self.alpha)):
            raise ValidationError(f"alpha must be finite, got {self.alpha!r}")
        if self.ell not in (0, 1):
            raise ValidationError(f"only modes ell in {{0, 1}} are supported, got {self.ell}")
        object.__setattr__(self, "alpha", float(self.alpha))


@dataclass(eq=False)
class RadialProfile:
    """Sampled eigenfunction: radii, values, first derivatives, normalization tag."""

    grid: np.ndarray
    values: np.ndarray
    derivs: np.ndarray
    normalization: str


@dataclass(eq=False)
class EigenResult:
    problem: RobinProblem
    lam: float
    ell: int
    index: int
    nodes: int
    bc_residual: float
    profile: RadialProfile


class ShootResult(NamedTuple):
    mismatch: float
    nodes: int
    profile: RadialProfile | None


def _left_data(problem: RobinProblem, lam: float, t: Tolerances) -> tuple[float, float, float]:
    """Left endpoint and initial (g, g') for the shot.

    Balls start at a small offset from the regular series: the ell = 0
    solution behaves like 1 - lam r^2 / (2m), the ell = 1 solution like r.
    Annuli start on the inner Robin condition g' = alpha g.
    """
    d = problem.domain
    if d.is_ball:
        eps = t.series_eps
        if problem.ell == 0:
            return eps, 1.0, -lam * eps / problem.space.m
        return eps, eps, 1.0
    return d.r_inner, 1.0, problem.alpha


def _shoot_endpoint(
    problem: RobinProblem, lam: float, t: Tolerances
) -> tuple[float, float, int]:
    Hfun, qfun = space_coefficients(problem.space)
    q = qfun if problem.ell == 1 else None
    r0, u0, v0 = _left_data(problem, lam, t)
    sol = integrate_radial(
        Hfun, q, lam, r0, problem.domain.r_outer, u0, v0,
        rtol=t.ode_rtol, atol=t.ode_atol,
    )
    return sol.u, sol.v, sol.nodes


def _normalized_mismatch(u: float, v: float, alpha: float) -> float:
    return (v + alpha * u) / math.hypot(u, v)


def _endpoint_angle(u: float, v: float, nodes: int) -> float:
    """Pruefer angle at the outer endpoint, lifted by the node count.

    Between nodes the angle representative of (g, g') lives in (0, pi);
    each interior zero of g adds pi.  The lifted angle is strictly
    increasing in the spectral parameter, so the eigenvalue of any index
    is the unique root of one monotone scalar equation.
    """
    rep = math.atan2(u, v)
    if rep <= 0.0:
        rep += math.pi
    return nodes * math.pi + rep


def _profile_grid_size(span: float, lam: float, t: Tolerances) -> int:
    # Spacing tight enough that high-order differencing of the samples
    # resolves the ODE residual: stencil truncation grows with h sqrt(lam).
    n = 24.0 * span * max(1.0, abs(lam)) ** 0.75
    return int(max(t.profile_points, min(8000.0, n)))


def shoot(
    problem: RobinProblem,
    lam: float,
    tols: Tolerances | None = None,
    include_profile: bool = True,
) -> ShootResult:
    """Integrate one trial value across the domain.

    Returns the normalized Robin mismatch ``(g'(R) + alpha g(R)) / |(g, g')|``
    at the outer boundary, the interior sign-change count, and (optionally)
    the sampled solution normalized by its left endpoint data.
    """
    t = resolve(tols)
    if not include_profile:
        u, v, nodes = _shoot_endpoint(problem, lam, t)
        return ShootResult(_normalized_mismatch(u, v, problem.alpha), nodes, None)

    Hfun, qfun = space_coefficients(problem.space)
    q = qfun if problem.ell == 1 else None
    r0, u0, v0 = _left_data(problem, lam, t)
    R = problem.domain.r_outer
    n = _profile_grid_size(R - r0, lam, t)
    grid = np.linspace(r0, R, n)
    # The recorded pass runs two orders tighter than the eigenvalue search:
    # near a coordinate pole the residual identity multiplies sample errors
    # by the angular barrier (m-1)/r^2, so drift the search tolerance would
    # permit is visible there even though the eigenvalue itself is not
    # affected.
    sol = integrate_radial(
        Hfun, q, lam, r0, R, u0, v0,
        rtol=0.01 * t.ode_rtol, atol=0.01 * t.ode_atol, checkpoints=grid[1:],
    )
    values = np.empty(n)
    derivs = np.empty(n)
    values[0], derivs[0] = u0, v0
    # Recorded samples share the final frame; the initial data point is
    # rescaled into it before normalizing the whole profile.
    f0 = math.exp(-sol.log_scale)
    values[0] *= f0
    derivs[0] *= f0
    values[1:] = sol.grid_u
    derivs[1:] = sol.grid_v
    if problem.domain.is_ball and problem.ell == 1:
        scale, tag = derivs[0], "deriv_one_at_left"
    else:
        scale, tag = values[0], "value_one_at_left"
    values /= scale
    derivs /= scale
    profile = RadialProfile(grid=grid, values=values, derivs=derivs, normalization=tag)
    mismatch = _normalized_mismatch(sol.u, sol.v, problem.alpha)
    return ShootResult(mismatch, sol.nodes, profile)


def _bracket_scale(problem: RobinProblem, index: int, t: Tolerances) -> float:
    d = problem.domain
    r0 = t.series_eps if d.is_ball else d.r_inner
    span = d.r_outer - r0
    mid = 0.5 * (r0 + d.r_outer)
    data = polar_data(problem.space, mid)
    q_mid = data.lam1 if problem.ell == 1 else 0.0
    base = (math.pi * (index + 1) / span) ** 2 + max(0.0, q_mid)
    base += 0.25 * data.H ** 2 + abs(problem.alpha) * (data.H + 1.0) + 10.0
    return base


def eigen_radial(
    problem: RobinProblem, index: int, tols: Tolerances | None = None
) -> EigenResult:
    """The ``index``-th eigenvalue (1-based) of the separated problem.

    Bracketing steps the trial value geometrically until the lifted
    endpoint angle straddles the target; bisection alternating with secant
    refinement resolves the eigenvalue to
    ``max(eig_abs, eig_rel * |lam|)``.
    """
    t = resolve(tols)
    if not isinstance(index, int) or isinstance(index, bool) or index < 1:
        raise ValidationError(f"index must be a positive integer, got {index!r}")

    target = math.atan2(1.0, -problem.alpha) + (index - 1) * math.pi
    evals = 0

    def score(lam: float) -> tuple[float, float, int]:
        nonlocal evals
        evals += 1
        if evals > t.max_iter:
            raise ConvergenceError(
                f"eigenvalue search exceeded {t.max_iter} evaluations",
                payload={"index": index, "evals": evals},
            )
        u, v, nodes = _shoot_endpoint(problem, lam, t)
        return (
            _endpoint_angle(u, v, nodes) - target,
            _normalized_mismatch(u, v, problem.alpha),
            nodes,
        )

    base = _bracket_scale(problem, index, t)
    lo, hi = -base, base
    flo, _, _ = score(lo)
    fhi, _, _ = score(hi)
    grow = 0
    while fhi < 0.0:
        lo, flo = hi, fhi
        hi = 2.0 * hi + 1.0
        fhi, _, _ = score(hi)
        grow += 1
        if grow > 60:
            raise ConvergenceError(
                "failed to bracket eigenvalue from above",
                payload={"index": index, "hi": hi},
            )
    while flo > 0.0:
        hi, fhi = lo, flo
        lo = 2.0 * lo - 1.0
        flo, _, _ = score(lo)
        grow += 1
        if grow > 120:
            raise ConvergenceError(
                "failed to bracket eigenvalue from below",
                payload={"index": index, "lo": lo},
            )

    # f(lo) < 0 <= f(hi): alternate secant and bisection inside the bracket.
    lam = 0.5 * (lo + hi)
    mismatch = math.nan
    nodes = index - 1
    prefer_secant = False
    while True:
        width = hi - lo
        mid = 0.5 * (lo + hi)
        if width <= max(t.eig_abs, t.eig_rel * abs(mid)):
            lam = mid
            fc, mismatch, nodes = score(lam)
            # The result contract promises the normalized residual meets
            # bc_tol, which for steep branches needs a tighter bracket
            # than the eigenvalue tolerance alone.
            if abs(mismatch) <= t.bc_tol:
                break
            if fc < 0.0:
                lo, flo = lam, fc
            else:
                hi, fhi = lam, fc
            continue
        cand = mid
        if prefer_secant and fhi > flo:
            sec = hi - fhi * width / (fhi - flo)
            if lo + 0.02 * width < sec < hi - 0.02 * width:
                cand = sec
        prefer_secant = not prefer_secant
        fc, dc, nc = score(cand)
        # An exact mismatch zero is accepted only inside the right node window:
        # lower eigenvalues share the zero mismatch but not the node count.
        if fc == 0.0 or (dc == 0.0 and nc == index - 1):
            lam, mismatch = cand, dc
            break
        if fc < 0.0:
            lo, flo = cand, fc
        else:
            hi, fhi = cand, fc

    final = shoot(problem, lam, t, include_profile=True)
    # The recorded pass integrates two orders tighter than the search, so
    # its endpoint can expose integration error the bracket could not see.
    # A short secant polish against the tight pass restores the residual
    # contract; the move is a few eigenvalue tolerances at most.
    if abs(final.mismatch) > t.bc_tol:
        step0 = max(t.eig_abs, t.eig_rel * abs(lam))
        prev_lam = lam + step0
        prev = shoot(problem, prev_lam, t, include_profile=True)
        for _ in range(8):
            denom = final.mismatch - prev.mismatch
            if denom == 0.0:
                break
            cand = lam - final.mismatch * (lam - prev_lam) / denom
            if not math.isfinite(cand) or abs(cand - lam) > 1e3 * step0:
                break
            prev_lam, prev = lam, final
            lam, final = cand, shoot(problem, cand, t, include_profile=True)
            if abs(final.mismatch) <= t.bc_tol:
                break
        if abs(final.mismatch) > t.bc_tol:
            raise ConvergenceError(
                "endpoint residual stayed above bc_tol after polishing",
                payload={"lam": lam, "mismatch": final.mismatch},
            )
    return EigenResult(
        problem=problem,
        lam=lam,
        ell=problem.ell,
        index=index,
        nodes=final.nodes,
        bc_residual=abs(final.mismatch),
        profile=final.profile,
    )


def _sturm_count(a: list[float], b: list[float], c: list[float], lam: float) -> int:
    """Number of eigenvalues of (A, B) below lam via the LDL^T sign count."""
    count = 0
    d = a[0] - lam * b[0]
    if d == 0.0:
        d = 1e-300
    if d < 0.0:
        count += 1
    for i in range(1, len(a)):
        d = a[i] - lam * b[i] - c[i - 1] * c[i - 1] / d
        if d == 0.0:
            d = 1e-300
        if d < 0.0:
            count += 1
    return count


def _oracle_system(
    problem: RobinProblem, N: int
) -> tuple[list[float], list[float], list[float]]:
    """Assemble the second-order discretization of the weighted form.

    Vertex-centered grid; midpoint fluxes for the stiffness, trapezoid
    weights for potential and mass, Robin boundary terms added to the
    diagonal.  For balls the center node is eliminated: the ell = 1 mode
    vanishes there (its first cell acts as a penalty), the ell = 0 mode
    has zero flux (its first cell drops).
    """
    space = problem.space
    d = problem.domain
    left = 0.0 if d.is_ball else d.r_inner
    h = (d.r_outer - left) / N
    radii = [left + i * h for i in range(N + 1)]
    Jmid = [density(space, left + (i + 0.5) * h) for i in range(N)]
    if d.is_ball:
        lo_node = 1
        J = [0.0] + [density(space, r) for r in radii[1:]]
    else:
        lo_node = 0
        J = [density(space, r) for r in radii]
    idx = list(range(lo_node, N + 1))
    n = len(idx)
    a = [0.0] * n
    b = [0.0] * n
    c = [0.0] * (n - 1)

    first_cell = 0 if not d.is_ball else (0 if problem.ell == 1 else 1)
    for cell in range(first_cell, N):
        s = Jmid[cell] / h
        i = cell - lo_node      # local index of the cell's left node
        j = i + 1
        if i >= 0:
            a[i] += s
        a[j] += s
        if i >= 0:
            c[i] -= s
        # cell 0 of the ell = 1 ball couples to the eliminated zero value:
        # only the diagonal term at node 1 survives, handled by i < 0.

    for p, node in enumerate(idx):
        w = h if lo_node < node < N else 0.5 * h
        mass = J[node] * w
        b[p] = mass
        if problem.ell == 1:
            r = radii[node]
            a[p] += polar_data(space, r).lam1 * mass
    if not d.is_ball:
        a[0] += problem.alpha * J[0]
    a[-1] += problem.alpha * J[N]
    return a, b, c


def oracle_eigen(problem: RobinProblem, index: int, grid_size: int) -> float:
    """Independent dense route to the ``index``-th eigenvalue.

    Second-order accurate; callers extrapolate with two grids
    (``(4 * lam_2N - lam_N) / 3``) when they need better than O(N^-2).
    """
    if not isinstance(index, int) or isinstance(index, bool) or index < 1:
        raise ValidationError(f"index must be a positive integer, got {index!r}")
    if not isinstance(grid_size, int) or grid_size < 100:
        raise ValidationError(f"grid_size must be an integer >= 100, got {grid_size!r}")

    a, b, c = _oracle_system(problem, grid_size)
    n = len(a)
    if index > n:
        raise ValidationError(f"index {index} exceeds discrete system size {n}")

    # Gershgorin bounds of the B^(-1/2) A B^(-1/2) pencil.
    lo = math.inf
    hi = -math.inf
    for i in range(n):
        radius = 0.0
        if i > 0:
            radius += abs(c[i - 1]) / math.sqrt(b[i - 1] * b[i])
        if i < n - 1:
            radius += abs(c[i]) / math.sqrt(b[i] * b[i + 1])
        center = a[i] / b[i]
        lo = min(lo, center - radius)
        hi = max(hi, center + radius)

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= max(1e-12 * abs(mid), 1e-10):
            break
        if _sturm_count(a, b, c, mid) >= index:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def rayleigh_quotient(problem: RobinProblem, profile: RadialProfile) -> float:
    """Quadratic-form quotient of a sampled profile.

    Evaluates ``(int (g'^2 + q g^2) J dr + boundary terms) / int g^2 J dr``
    on the profile grid with Simpson weights; agreement with the reported
    eigenvalue is a consistency probe of the profile.
    """
    space = problem.space
    grid = profile.grid
    J = np.array([density(space, r) for r in grid])
    g = profile.values
    gp = profile.derivs
    integrand = gp * gp
    if problem.ell == 1:
        q = np.array([polar_data(space, r).lam1 for r in grid])
        integrand = integrand + q * g * g
    num = float(simpson(integrand * J, x=grid))
    num += problem.alpha * g[-1] ** 2 * J[-1]
    if not problem.domain.is_ball:
        num += problem.alpha * g[0] ** 2 * J[0]
    den = float(simpson(g * g * J, x=grid))
    return num / den


def steklov_first(space: SpaceParams, R: float, tols: Tolerances | None = None) -> float:
    """First nonzero Steklov eigenvalue of the ball of radius R.

    Direct route: integrate the ell = 1 equation at zero spectral value
    and read off ``g'(R) / g(R)``.
    """
    t = resolve(tols)
    if not (math.isfinite(R) and R > 0.0):
        raise DomainError(f"radius must be positive, got {R!r}")
    problem = RobinProblem(space, RadialDomain.ball(R), 0.0, 1)
    u, v, nodes = _shoot_endpoint(problem, 0.0, t)
    if nodes != 0 or u <= 0.0:
        raise ConsistencyError(
            "zero-energy solution unexpectedly changed sign",
            payload={"R": R, "nodes": nodes},
        )
    return v / u


def steklov_first_via_robin(
    space: SpaceParams, R: float, tols: Tolerances | None = None
) -> float:
    """Cross-check route: sigma_1 as the root s > 0 of mu_1(alpha = -s) = 0."""
    t = resolve(tols)
    if not (math.isfinite(R) and R > 0.0):
        raise DomainError(f"radius must be positive, got {R!r}")
    ball = RadialDomain.ball(R)

    def mu(s: float) -> float:
        p = RobinProblem(space, ball, -s, 1)
        return eigen_radial(p, 1, t).lam

    lo, flo = 0.0, -mu(0.0)
    if flo >= 0.0:
        raise ConsistencyError("Neumann mu_1 must be positive", payload={"R": R})
    hi = 1.0 / R
    fhi = -mu(hi)
    grow = 0
    while fhi < 0.0:
        lo, flo = hi, fhi
        hi *= 1.5
        fhi = -mu(hi)
        grow += 1
        if grow > 30:
            raise ConvergenceError("failed to bracket the Steklov root", payload={"R": R})

    tol = max(t.root_tol, t.root_tol / R)
    prefer_secant = True
    for _ in range(t.max_iter):
        width = hi - lo
        mid = 0.5 * (lo + hi)
        if width <= tol:
            return mid
        cand = mid
        if prefer_secant and fhi > flo:
            sec = hi - fhi * width / (fhi - flo)
            if lo + 0.02 * width < sec < hi - 0.02 * width:
                cand = sec
        prefer_secant = not prefer_secant
        fc = -mu(cand)
        if fc == 0.0:
            return cand
        if fc < 0.0:
            lo, flo = cand, fc
        else:
            hi, fhi = cand, fc
    raise ConvergenceError("Steklov root search exhausted its budget", payload={"R": R})
