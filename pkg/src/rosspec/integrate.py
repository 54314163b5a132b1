"""Adaptive embedded Runge-Kutta integration of the radial equations.

Specialized to the linear second-order system

    u' = v
    v' = -H(r) v - (lam - q(r)) u

integrated left to right.  A Cash-Karp 5(4) pair drives the step size.
Because the equation is linear, the pair (u, v) is rescaled whenever its
magnitude exceeds ``RENORM_LIMIT``; the accumulated log-scale keeps every
recorded sample reconstructible in a common frame.  Interior sign changes
of u are counted on the fly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericalError

RENORM_LIMIT = 1e8

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0

# Cash-Karp coefficients.
_C2, _C3, _C4, _C5, _C6 = 0.2, 0.3, 0.6, 1.0, 0.875
_A21 = 0.2
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 0.3, -0.9, 1.2
_A51, _A52, _A53, _A54 = -11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0
_A61, _A62, _A63, _A64, _A65 = (
    1631.0 / 55296.0,
    175.0 / 512.0,
    575.0 / 13824.0,
    44275.0 / 110592.0,
    253.0 / 4096.0,
)
_B1, _B3, _B4, _B6 = 37.0 / 378.0, 250.0 / 621.0, 125.0 / 594.0, 512.0 / 1771.0
_E1 = _B1 - 2825.0 / 27648.0
_E3 = _B3 - 18575.0 / 48384.0
_E4 = _B4 - 13525.0 / 55296.0
_E5 = -277.0 / 14336.0
_E6 = _B6 - 0.25


@dataclass
class RadialSolution:
    """Endpoint state of one shooting integration.

    ``u``/``v`` are in the final (renormalized) frame; ``log_scale`` is the
    logarithm of the total factor divided out along the way.  When
    checkpoints were requested, ``grid_u``/``grid_v`` hold the solution at
    those radii, expressed in the same final frame.
    """

    r: float
    u: float
    v: float
    nodes: int
    log_scale: float
    grid_u: list[float] | None = None
    grid_v: list[float] | None = None
    steps: int = 0


def integrate_radial(
    Hfun,
    qfun,
    lam: float,
    r0: float,
    r1: float,
    u0: float,
    v0: float,
    *,
    rtol: float,
    atol: float,
    checkpoints=None,
    max_steps: int = 2_000_000,
) -> RadialSolution:
    """Integrate from ``r0`` to ``r1 > r0`` starting from ``(u0, v0)``.

    ``qfun`` may be None for a vanishing potential.  ``checkpoints`` is an
    increasing sequence of radii inside ``(r0, r1]`` the integrator must
    land on exactly; the solution there is recorded.
    """
    if not r1 > r0:
        raise NumericalError(f"integration span must be increasing, got [{r0}, {r1}]")

    targets = [float(x) for x in checkpoints] if checkpoints is not None else []
    if targets:
        if targets[-1] != r1:
            targets.append(r1)
        grid_u: list[float] | None = []
        grid_v: list[float] | None = []
        scales: list[float] = []
    else:
        targets = [r1]
        grid_u = grid_v = None
        scales = []

    r = float(r0)
    u = float(u0)
    v = float(v0)
    log_scale = 0.0
    nodes = 0
    last_sign = 1.0 if u > 0.0 else (-1.0 if u < 0.0 else 0.0)

    span = r1 - r0
    h = span / 100.0
    steps = 0

    if qfun is None:
        qfun = lambda _r: 0.0

    def deriv(rr: float, uu: float, vv: float) -> tuple[float, float]:
        return vv, -Hfun(rr) * vv - (lam - qfun(rr)) * uu

    for target in targets:
        while r < target:
            if steps >= max_steps:
                raise NumericalError(
                    f"integration exceeded {max_steps} steps at r={r:.6g}",
                    payload={"r": r, "lam": lam},
                )
            if h > target - r:
                h = target - r
            if h < 1e-13 * max(1.0, abs(r)):
                raise NumericalError(
                    f"step size underflow at r={r:.6g}", payload={"r": r, "lam": lam}
                )

            du1, dv1 = deriv(r, u, v)
            uu = u + h * _A21 * du1
            vv = v + h * _A21 * dv1
            du2, dv2 = deriv(r + _C2 * h, uu, vv)
            uu = u + h * (_A31 * du1 + _A32 * du2)
            vv = v + h * (_A31 * dv1 + _A32 * dv2)
            du3, dv3 = deriv(r + _C3 * h, uu, vv)
            uu = u + h * (_A41 * du1 + _A42 * du2 + _A43 * du3)
            vv = v + h * (_A41 * dv1 + _A42 * dv2 + _A43 * dv3)
            du4, dv4 = deriv(r + _C4 * h, uu, vv)
            uu = u + h * (_A51 * du1 + _A52 * du2 + _A53 * du3 + _A54 * du4)
            vv = v + h * (_A51 * dv1 + _A52 * dv2 + _A53 * dv3 + _A54 * dv4)
            du5, dv5 = deriv(r + _C5 * h, uu, vv)
            uu = u + h * (_A61 * du1 + _A62 * du2 + _A63 * du3 + _A64 * du4 + _A65 * du5)
            vv = v + h * (_A61 * dv1 + _A62 * dv2 + _A63 * dv3 + _A64 * dv4 + _A65 * dv5)
            du6, dv6 = deriv(r + _C6 * h, uu, vv)

            u_new = u + h * (_B1 * du1 + _B3 * du3 + _B4 * du4 + _B6 * du6)
            v_new = v + h * (_B1 * dv1 + _B3 * dv3 + _B4 * dv4 + _B6 * dv6)
            eu = h * (_E1 * du1 + _E3 * du3 + _E4 * du4 + _E5 * du5 + _E6 * du6)
            ev = h * (_E1 * dv1 + _E3 * dv3 + _E4 * dv4 + _E5 * dv5 + _E6 * dv6)

            steps += 1
            scale_u = atol + rtol * max(abs(u), abs(u_new))
            scale_v = atol + rtol * max(abs(v), abs(v_new))
            err = max(abs(eu) / scale_u, abs(ev) / scale_v)

            if err <= 1.0:
                r = r + h
                u = u_new
                v = v_new
                sign = 1.0 if u > 0.0 else (-1.0 if u < 0.0 else 0.0)
                if sign != 0.0:
                    if last_sign != 0.0 and sign != last_sign:
                        nodes += 1
                    last_sign = sign
                mag = max(abs(u), abs(v))
                if mag > RENORM_LIMIT:
                    u /= mag
                    v /= mag
                    log_scale += math.log(mag)
                factor = _MAX_FACTOR if err == 0.0 else _SAFETY * err ** -0.2
                h *= min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
            else:
                h *= max(_MIN_FACTOR, _SAFETY * err ** -0.2)

        if grid_u is not None:
            grid_u.append(u)
            grid_v.append(v)
            scales.append(log_scale)

    if grid_u is not None:
        # Express every recorded sample in the final frame.
        for i, ls in enumerate(scales):
            f = math.exp(ls - log_scale)
            grid_u[i] *= f
            grid_v[i] *= f

    return RadialSolution(
        r=r, u=u, v=v, nodes=nodes, log_scale=log_scale,
        grid_u=grid_u, grid_v=grid_v, steps=steps,
    )
