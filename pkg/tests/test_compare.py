"""Annulus-versus-ball comparison: asymmetry, sandwich bound, sweep report."""
import math
from types import SimpleNamespace

import numpy as np
import pytest
from scipy.integrate import quad

from rosspec import (
    CounterexampleError,
    RadialDomain,
    ValidationError,
    ball_volume,
    density,
    fraenkel_asymmetry_annulus,
    lambda2_annulus,
    lambda2_ball,
    make_space,
    matched_ball_radius,
    radius_for_volume,
    rayleigh_bound,
    steklov_first,
    verify_theorem,
)
import rosspec.compare

R2 = make_space("R", 2)
R3 = make_space("R", 3)
C2 = make_space("C", 2)
H2 = make_space("H", 2)
O2 = make_space("O", 2)
ALL = (R2, C2, H2, O2)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1.0)


class TestLambda2Annulus:
    def test_small_hole_continuity(self):
        # Shrinking the hole recovers the ball eigenvalue.
        for sp in (R2, C2):
            R1 = 1e-3
            R2v = radius_for_volume(sp, ball_volume(sp, 1.0) +
                                    ball_volume(sp, R1))
            ann = lambda2_annulus(sp, R1, R2v, -0.2)
            ball = lambda2_ball(sp, 1.0, -0.2)
            assert abs(ann.lam - ball.lam) < 1e-3

    def test_neumann_winner_is_positive(self):
        # At alpha = 0 the constant gives tau_1 = 0 and the returned second
        # eigenvalue is the first genuinely oscillating mode.
        win = lambda2_annulus(C2, 0.3, 1.2, 0.0)
        assert win.lam > 0.0

    def test_returns_middle_of_three(self):
        win = lambda2_annulus(R2, 0.4, 1.4, -0.3)
        assert win.index in (1, 2)
        assert win.ell in (0, 1)


class TestAsymmetry:
    def test_quadrature_cross_check(self):
        R1, R2v = 0.3, 1.3
        a = fraenkel_asymmetry_annulus(R3, R1, R2v)
        v_in = quad(lambda r: density(R3, r), 0.0, R1, epsrel=1e-12)[0]
        v_ann = quad(lambda r: density(R3, r), R1, R2v, epsrel=1e-12)[0]
        assert rel(a, 2.0 * v_in / v_ann) < 1e-9

    def test_matched_radius_nests(self):
        for sp in (R2, H2):
            R1, R2v = 0.4, 1.5
            RB = matched_ball_radius(sp, R1, R2v)
            assert R1 < RB < R2v

    def test_matched_radius_volume_equality(self):
        for sp in ALL:
            R1, R2v = 0.3, 1.2
            RB = matched_ball_radius(sp, R1, R2v)
            v_ann = ball_volume(sp, R2v) - ball_volume(sp, R1)
            assert rel(ball_volume(sp, RB), v_ann) < 1e-9

    def test_vanishes_with_hole(self):
        vals = [fraenkel_asymmetry_annulus(R2, R1, 1.0 + R1)
                for R1 in (0.3, 0.1, 0.01, 0.001)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1e-3

    def test_depends_only_on_volume_ratio(self):
        # Scaling both endpoint volumes by a common factor fixes the ratio.
        sp = C2
        R1, R2v = 0.3, 1.1
        factor = 7.3
        R1s = radius_for_volume(sp, factor * ball_volume(sp, R1))
        R2s = radius_for_volume(sp, factor * ball_volume(sp, R2v))
        a = fraenkel_asymmetry_annulus(sp, R1, R2v)
        b = fraenkel_asymmetry_annulus(sp, R1s, R2s)
        assert rel(a, b) < 1e-8


class TestRayleighBound:
    def test_reproduces_ball_eigenvalue(self):
        for sp in ALL:
            for alpha in (0.0, -0.2):
                dom = RadialDomain.ball(1.0)
                q = rayleigh_bound(sp, dom, alpha)
                lam = lambda2_ball(sp, 1.0, alpha).lam
                assert rel(q, lam) < 1e-6

    def test_rejects_alpha_outside_range(self):
        dom = RadialDomain.ball(1.0)
        with pytest.raises(ValidationError):
            rayleigh_bound(R2, dom, 0.2)
        sigma = steklov_first(R2, 1.0)
        with pytest.raises(ValidationError):
            rayleigh_bound(R2, dom, -2.0 * sigma)

    @pytest.mark.parametrize("R1", [0.05, 0.2, 0.4])
    def test_sandwich(self, R1):
        # lam2(annulus) <= transplanted quotient < lam2(matched ball).
        sp = R2
        alpha = -0.2
        vol = ball_volume(sp, 1.0)
        R2v = radius_for_volume(sp, vol + ball_volume(sp, R1))
        ann = lambda2_annulus(sp, R1, R2v, alpha)
        bound = rayleigh_bound(sp, RadialDomain.annulus(R1, R2v), alpha)
        lamB = lambda2_ball(sp, 1.0, alpha).lam
        assert ann.lam <= bound + 1e-9
        assert bound < lamB


class TestVerifyTheorem:
    def test_report_structure(self):
        vol = ball_volume(R2, 1.0)
        inners = np.geomspace(5e-3, 0.3, 4)
        rep = verify_theorem(R2, vol, -0.2, inners)
        assert rep.space is R2
        assert rel(rep.ball_radius, 1.0) < 1e-9
        assert len(rep.rows) == 4
        # Rows come back in input order.
        assert [r.r_inner for r in rep.rows] == [float(x) for x in inners]
        assert rep.all_gaps_positive
        assert all(r.gap > 0.0 for r in rep.rows)
        assert rep.fitted_constant is not None and rep.fitted_constant > 0.0
        assert rep.gap_vanishes_with_asymmetry
        assert rep.gap_monotone
        assert not rep.rows[0].resolvable
        assert rep.rows[-1].resolvable
        for r in rep.rows:
            assert rel(r.lam2_ball, rep.lam2_ball) == 0.0
            assert ann_volume_matches(R2, r, vol)


def ann_volume_matches(space, row, volume):
    v = ball_volume(space, row.r_outer) - ball_volume(space, row.r_inner)
    return rel(v, volume) < 1e-9


class TestVerifyTheoremValidation:
    def test_bad_volume(self):
        with pytest.raises(ValidationError):
            verify_theorem(R2, 0.0, -0.2, [0.1])
        with pytest.raises(ValidationError):
            verify_theorem(R2, math.inf, -0.2, [0.1])

    def test_bad_alpha(self):
        with pytest.raises(ValidationError):
            verify_theorem(R2, 1.0, 0.5, [0.1])

    def test_bad_inner_radius(self):
        with pytest.raises(ValidationError):
            verify_theorem(R2, 1.0, -0.2, [-0.1])

    def test_counterexample_abort(self, monkeypatch):
        def fake_annulus(space, r_inner, r_outer, alpha, tols=None):
            lamB = lambda2_ball(space, radius_for_volume(space, 1.0), alpha).lam
            return SimpleNamespace(lam=lamB + 1.0, ell=1, index=1)

        monkeypatch.setattr(rosspec.compare, "lambda2_annulus", fake_annulus)
        with pytest.raises(CounterexampleError) as ei:
            verify_theorem(R2, 1.0, -0.2, [0.2])
        payload = ei.value.payload
        assert payload["gap"] < 0.0
        assert set(payload) == {
            "space", "alpha", "volume", "r_inner", "r_outer",
            "lam2_annulus", "lam2_ball", "gap",
        }
        assert ei.value.exit_code == 4
