"""Geodesic polar geometry of the noncompact rank-one symmetric spaces.

A space is the hyperbolic space over one of the four real division
algebras.  With ``k`` the real dimension of the algebra and ``m = k * n``
the real dimension of the space, every radial quantity is built from the
area density of the geodesic sphere of radius ``r``::

    J(r) = sinh(r)**(m - 1) * cosh(r)**(k - 1)

All hyperbolic evaluations go through ``expm1``-based forms that stay
accurate for r ~ 1e-8 and never overflow for large r; only the density
itself can exceed float range, in which case its logarithm remains exact.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import DomainError, InvalidSpaceError
from .tolerances import Tolerances, resolve

_LOG2 = math.log(2.0)


class Kind(enum.Enum):
    """Division algebra underlying the symmetric space."""

    REAL = "real"
    COMPLEX = "complex"
    QUATERNION = "quaternion"
    OCTONION = "octonion"


ALGEBRA_DIM = {
    Kind.REAL: 1,
    Kind.COMPLEX: 2,
    Kind.QUATERNION: 4,
    Kind.OCTONION: 8,
}

_KIND_ALIASES = {
    "r": Kind.REAL,
    "real": Kind.REAL,
    "c": Kind.COMPLEX,
    "complex": Kind.COMPLEX,
    "h": Kind.QUATERNION,
    "quaternion": Kind.QUATERNION,
    "o": Kind.OCTONION,
    "octonion": Kind.OCTONION,
}


@dataclass(frozen=True)
class SpaceParams:
    """Resolved space: algebra kind, algebra rank n, k = dim of algebra, m = k*n."""

    kind: Kind
    n: int
    k: int
    m: int

    def label(self) -> str:
        return f"{self.kind.value}H{self.n}"


def make_space(kind: Kind | str, n: int) -> SpaceParams:
    """Resolve and validate a space from its algebra and rank.

    Parameters
    ----------
    kind:
        A :class:`Kind` member, or a name/letter among
        ``R, C, H, O, real, complex, quaternion, octonion`` (case-insensitive).
    n:
        Rank of the space; an integer >= 2.  The octonion family exists
        only for n = 2.
    """
    if isinstance(kind, str):
        try:
            kind = _KIND_ALIASES[kind.strip().lower()]
        except KeyError:
            raise InvalidSpaceError(
                f"unknown algebra kind {kind!r}; expected one of R, C, H, O",
                payload={"kind": str(kind)},
            ) from None
    elif not isinstance(kind, Kind):
        raise InvalidSpaceError(f"unknown algebra kind {kind!r}")
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidSpaceError(f"rank n must be an integer, got {n!r}")
    if n < 2:
        raise InvalidSpaceError(
            f"rank n must be >= 2 (n=1 degenerates to a lower family), got {n}",
            payload={"kind": kind.value, "n": n},
        )
    if kind is Kind.OCTONION and n != 2:
        raise InvalidSpaceError(
            "the octonion family exists only for n = 2",
            payload={"kind": kind.value, "n": n},
        )
    k = ALGEBRA_DIM[kind]
    return SpaceParams(kind=kind, n=n, k=k, m=k * n)


@dataclass(frozen=True)
class GeodesicPolarData:
    """Radial coefficient bundle at one radius.

    Attributes
    ----------
    r:
        Radius, > 0.
    J, logJ:
        Geodesic sphere density and its (always finite) logarithm.
    H:
        Mean curvature of the sphere, ``(log J)'``.
    Hp, Hpp:
        First and second radial derivatives of ``H``.
    lam1:
        First nonzero eigenvalue of the geodesic sphere of radius r,
        which equals ``-Hp``.
    """

    r: float
    J: float
    logJ: float
    H: float
    Hp: float
    Hpp: float
    lam1: float


def _check_radius(r: float) -> float:
    r = float(r)
    if not math.isfinite(r) or r <= 0.0:
        raise DomainError(f"radius must be a finite positive number, got {r!r}")
    return r


def _hyperbolic(r: float) -> tuple[float, float, float, float, float, float]:
    """Stable building blocks at radius r.

    Returns ``(coth, tanh, inv_sinh2, inv_cosh2, log_sinh, log_cosh)``.
    Uses expm1 so that r near 0 keeps full relative accuracy and large r
    never overflows: with e = expm1(-2r), 1 - exp(-2r) = -e and
    1 + exp(-2r) = 2 + e.
    """
    e = math.expm1(-2.0 * r)
    a = -e          # 1 - exp(-2r) in (0, 1]
    b = 2.0 + e     # 1 + exp(-2r) in [1, 2)
    # exp(-2r) directly: reconstructing it as 1 + e would round to zero
    # past r ~ 18 and zero out the inverse squares.
    x = math.exp(-2.0 * r)
    coth = b / a
    tanh = a / b
    inv_sinh2 = 4.0 * x / (a * a)
    inv_cosh2 = 4.0 * x / (b * b)
    log_sinh = r + math.log(a) - _LOG2
    log_cosh = r + math.log(b) - _LOG2
    return coth, tanh, inv_sinh2, inv_cosh2, log_sinh, log_cosh


def polar_data(space: SpaceParams, r: float) -> GeodesicPolarData:
    """Evaluate the radial coefficient bundle of ``space`` at radius ``r``."""
    r = _check_radius(r)
    m, k = space.m, space.k
    coth, tanh, inv_s2, inv_c2, log_s, log_c = _hyperbolic(r)
    logJ = (m - 1) * log_s + (k - 1) * log_c
    try:
        J = math.exp(logJ)
    except OverflowError:
        J = math.inf
    H = (m - 1) * coth + (k - 1) * tanh
    lam1 = (m - 1) * inv_s2 - (k - 1) * inv_c2
    # Hp = -lam1; Hpp from differentiating the inverse squares once more.
    Hpp = 2.0 * (m - 1) * coth * inv_s2 - 2.0 * (k - 1) * tanh * inv_c2
    return GeodesicPolarData(r=r, J=J, logJ=logJ, H=H, Hp=-lam1, Hpp=Hpp, lam1=lam1)


def lam1_alt_form(space: SpaceParams, r: float) -> float:
    """Sphere eigenvalue via the split into a pure sinh part and a mixed term.

    Algebraically identical to ``polar_data(space, r).lam1``; kept as an
    independently coded route for cross-checks.
    """
    r = _check_radius(r)
    m, k = space.m, space.k
    _, _, inv_s2, inv_c2, _, _ = _hyperbolic(r)
    return (m - k) * inv_s2 + (k - 1) * inv_s2 * inv_c2


def log_density(space: SpaceParams, r: float) -> float:
    """log J(r), finite for every positive radius."""
    r = _check_radius(r)
    _, _, _, _, log_s, log_c = _hyperbolic(r)
    return (space.m - 1) * log_s + (space.k - 1) * log_c


def density(space: SpaceParams, r: float) -> float:
    """J(r); overflows to inf only when the true value exceeds float range."""
    try:
        return math.exp(log_density(space, r))
    except OverflowError:
        return math.inf


def space_coefficients(space: SpaceParams):
    """Fast closures ``(H, lam1)`` over the radius, for integrator hot loops."""
    m1 = float(space.m - 1)
    k1 = float(space.k - 1)

    def mean_curvature(r: float) -> float:
        e = math.expm1(-2.0 * r)
        a = -e
        b = 2.0 + e
        return m1 * b / a + k1 * a / b

    def sphere_eigenvalue(r: float) -> float:
        e = math.expm1(-2.0 * r)
        a = -e
        b = 2.0 + e
        x4 = 4.0 * (1.0 + e)
        return m1 * x4 / (a * a) - k1 * x4 / (b * b)

    return mean_curvature, sphere_eigenvalue


def ball_volume(space: SpaceParams, R: float, tols: Tolerances | None = None) -> float:
    """Volume of the geodesic ball of radius ``R``, up to the unit-sphere factor.

    Computed as the adaptive quadrature of J over [0, R] to the profile's
    relative tolerance.  The constant angular factor is omitted throughout
    the package; every consumer uses volume ratios or matched volumes, so
    the normalization cancels.
    """
    R = _check_radius(R)
    t = resolve(tols)
    val, _err = quad(
        lambda r: density(space, r),
        0.0,
        R,
        epsabs=0.0,
        epsrel=t.quad_rel,
        limit=200,
    )
    return val


def radius_for_volume(space: SpaceParams, v: float, tols: Tolerances | None = None) -> float:
    """Radius of the ball with volume ``v``; inverse of :func:`ball_volume`.

    Monotone bracketing followed by a bracketed root solve; the result
    satisfies ``|ball_volume(R) - v| <= root_tol * v``.
    """
    v = float(v)
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"volume must be a finite positive number, got {v!r}")
    t = resolve(tols)
    vol = lambda R: ball_volume(space, R, t)
    hi = 1.0
    while vol(hi) < v:
        hi *= 2.0
        if hi > 8192.0:
            raise DomainError(
                f"volume {v!r} is beyond representable radii for {space.label()}",
                payload={"volume": v},
            )
    resid = lambda x: (vol(x) if x > 0.0 else 0.0) - v
    R = brentq(resid, 0.0, hi, xtol=1e-14, rtol=8.9e-16, maxiter=200)
    # Newton polish using V' = J keeps the volume residual at rounding level.
    for _ in range(3):
        resid = vol(R) - v
        if abs(resid) <= t.root_tol * v:
            break
        R -= resid / density(space, R)
    return R
