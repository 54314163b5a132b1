"""Closed-form geometry: space validation, radial coefficients, volumes."""
import math

import numpy as np
import pytest

from rosspec import (
    DomainError,
    InvalidSpaceError,
    Kind,
    ball_volume,
    density,
    lam1_alt_form,
    log_density,
    make_space,
    polar_data,
    radius_for_volume,
)

SPACES = {
    "R": make_space("R", 2),
    "C": make_space("C", 2),
    "H": make_space("H", 2),
    "O": make_space("O", 2),
}

# High-precision reference values, frozen from a 50-digit evaluation of the
# same closed forms.
J_C2_AT_1 = 2.5045245476792143642
VOL_R2_AT_1 = 0.54308063481524377848
VOL_R3_AT_1 = 0.40671510196175469192
VOL_C2_AT_1 = 0.47685781474006127472
VOL_H2_AT_1 = 0.95727075249984134754
VOL_O2_AT_1 = 9.2467127170809992503
RADIUS_C3_FOR_V1 = 1.1073850839254021204


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


class TestMakeSpace:
    def test_fields(self):
        sp = make_space("R", 3)
        assert (sp.kind, sp.k, sp.m, sp.n) == (Kind.REAL, 1, 3, 3)
        sp = make_space("O", 2)
        assert (sp.kind, sp.k, sp.m) == (Kind.OCTONION, 8, 16)
        assert make_space("C", 4).m == 8
        assert make_space("H", 2).m == 8

    def test_aliases(self):
        assert make_space("real", 2) == make_space("R", 2)
        assert make_space("Quaternion", 2) == make_space("h", 2)
        assert make_space(Kind.COMPLEX, 3) == make_space("c", 3)

    def test_label(self):
        assert SPACES["R"].label() == "realH2"
        assert SPACES["O"].label() == "octonionH2"

    def test_octonion_rank_restriction(self):
        with pytest.raises(InvalidSpaceError):
            make_space("O", 3)

    def test_rank_lower_bound(self):
        for kind in ("R", "C", "H", "O"):
            with pytest.raises(InvalidSpaceError):
                make_space(kind, 1)

    def test_bad_inputs(self):
        with pytest.raises(InvalidSpaceError):
            make_space("X", 2)
        with pytest.raises(InvalidSpaceError):
            make_space("R", "2")
        with pytest.raises(InvalidSpaceError):
            make_space("R", True)
        with pytest.raises(InvalidSpaceError):
            make_space(3.5, 2)

    def test_error_exit_code(self):
        assert InvalidSpaceError.exit_code == 2


class TestPolarData:
    def test_symbolic_real_h3(self):
        sp = make_space("R", 3)
        for r in (0.3, 1.0, 2.5):
            d = polar_data(sp, r)
            assert rel(d.J, math.sinh(r) ** 2) < 1e-12
            assert rel(d.H, 2.0 / math.tanh(r)) < 1e-12
            assert rel(d.lam1, 2.0 / math.sinh(r) ** 2) < 1e-12

    def test_frozen_density(self):
        assert rel(polar_data(SPACES["C"], 1.0).J, J_C2_AT_1) < 1e-12

    def test_small_radius_leading_order(self):
        r = 1e-4
        for sp in SPACES.values():
            d = polar_data(sp, r)
            assert rel(d.J, r ** (sp.m - 1)) < 1e-6
            assert rel(d.lam1 * r * r, sp.m - 1) < 1e-6

    def test_rejects_bad_radius(self):
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(DomainError):
                polar_data(SPACES["R"], bad)

    def test_positivity(self):
        for sp in SPACES.values():
            for r in np.geomspace(1e-3, 25.0, 12):
                d = polar_data(sp, r)
                assert d.J > 0.0
                assert d.H > 0.0
                assert d.Hpp > 0.0

    def test_hp_is_negated_sphere_eigenvalue(self):
        for sp in SPACES.values():
            d = polar_data(sp, 0.7)
            assert d.Hp == -d.lam1


class TestDerivativeIdentities:
    """Finite-difference validation of H = (log J)', Hp, Hpp at step 1e-5."""

    RADII = np.geomspace(0.05, 30.0, 12)
    STEP = 1e-5

    def test_logJ_derivative_is_H(self):
        for sp in SPACES.values():
            for r in self.RADII:
                fd = (log_density(sp, r + self.STEP) -
                      log_density(sp, r - self.STEP)) / (2 * self.STEP)
                assert rel(fd, polar_data(sp, r).H) < 1e-6

    def test_H_derivative_is_Hp(self):
        for sp in SPACES.values():
            for r in self.RADII:
                fd = (polar_data(sp, r + self.STEP).H -
                      polar_data(sp, r - self.STEP).H) / (2 * self.STEP)
                d = polar_data(sp, r)
                assert abs(fd - d.Hp) < 1e-6 * max(abs(d.Hp), 1.0)

    def test_Hp_derivative_is_Hpp(self):
        for sp in SPACES.values():
            for r in self.RADII:
                fd = (polar_data(sp, r + self.STEP).Hp -
                      polar_data(sp, r - self.STEP).Hp) / (2 * self.STEP)
                d = polar_data(sp, r)
                assert abs(fd - d.Hpp) < 1e-6 * max(abs(d.Hpp), 1.0)


class TestSphereEigenvalue:
    def test_two_closed_forms_agree(self):
        for sp in SPACES.values():
            for r in (1e-3, 0.1, 0.5, 1.0, 5.0, 20.0):
                assert rel(polar_data(sp, r).lam1, lam1_alt_form(sp, r)) < 1e-12

    def test_octonion_half_radius(self):
        sp = SPACES["O"]
        assert rel(polar_data(sp, 0.5).lam1, lam1_alt_form(sp, 0.5)) < 1e-12

    def test_k1_forms_coincide(self):
        sp = make_space("R", 4)
        for r in (0.2, 1.0, 3.0):
            assert rel(polar_data(sp, r).lam1, 3.0 / math.sinh(r) ** 2) < 1e-12

    def test_strictly_decreasing(self):
        for sp in SPACES.values():
            vals = [polar_data(sp, r).lam1 for r in np.geomspace(0.1, 10.0, 30)]
            assert all(a > b for a, b in zip(vals, vals[1:]))


class TestVolumes:
    def test_closed_form_real_h2(self):
        sp = SPACES["R"]
        for R in (0.5, 1.0, 2.0):
            assert rel(ball_volume(sp, R), math.cosh(R) - 1.0) < 1e-10

    def test_closed_form_real_h3(self):
        sp = make_space("R", 3)
        for R in (0.5, 1.0, 2.0):
            exact = (math.sinh(2 * R) - 2 * R) / 4.0
            assert rel(ball_volume(sp, R), exact) < 1e-10

    def test_closed_form_complex_h2(self):
        # J = sinh^3 cosh integrates to sinh^4 / 4.
        sp = SPACES["C"]
        for R in (0.5, 1.0, 2.0):
            assert rel(ball_volume(sp, R), math.sinh(R) ** 4 / 4.0) < 1e-10

    def test_closed_form_quaternion_h2(self):
        # J = sinh^7 cosh^3 integrates to s^8/8 + s^10/10 with s = sinh R.
        sp = SPACES["H"]
        for R in (0.5, 1.0, 2.0):
            s = math.sinh(R)
            assert rel(ball_volume(sp, R), s ** 8 / 8.0 + s ** 10 / 10.0) < 1e-10

    def test_closed_form_octonion_h2(self):
        # J = sinh^15 cosh^7; substituting s = sinh R expands (1 + s^2)^3.
        sp = SPACES["O"]
        for R in (0.5, 1.0):
            s = math.sinh(R)
            exact = (s ** 16 / 16.0 + 3.0 * s ** 18 / 18.0 +
                     3.0 * s ** 20 / 20.0 + s ** 22 / 22.0)
            assert rel(ball_volume(sp, R), exact) < 1e-10

    def test_frozen_unit_volumes(self):
        assert rel(ball_volume(SPACES["R"], 1.0), VOL_R2_AT_1) < 1e-10
        assert rel(ball_volume(make_space("R", 3), 1.0), VOL_R3_AT_1) < 1e-10
        assert rel(ball_volume(SPACES["C"], 1.0), VOL_C2_AT_1) < 1e-10
        assert rel(ball_volume(SPACES["H"], 1.0), VOL_H2_AT_1) < 1e-10
        assert rel(ball_volume(SPACES["O"], 1.0), VOL_O2_AT_1) < 1e-10

    def test_strictly_increasing(self):
        for sp in SPACES.values():
            vols = [ball_volume(sp, R) for R in (0.1, 0.5, 1.0, 2.0, 4.0)]
            assert all(a < b for a, b in zip(vols, vols[1:]))

    def test_rejects_bad_radius(self):
        with pytest.raises(DomainError):
            ball_volume(SPACES["R"], 0.0)
        with pytest.raises(DomainError):
            ball_volume(SPACES["R"], -2.0)


class TestRadiusForVolume:
    def test_roundtrip(self):
        for sp in SPACES.values():
            for R in (0.1, 1.0, 5.0):
                back = radius_for_volume(sp, ball_volume(sp, R))
                assert rel(back, R) < 1e-9

    def test_exact_inverse_real_h2(self):
        R = radius_for_volume(SPACES["R"], math.cosh(1.0) - 1.0)
        assert abs(R - 1.0) < 1e-10

    def test_frozen_complex_h3(self):
        assert rel(radius_for_volume(make_space("C", 3), 1.0),
                   RADIUS_C3_FOR_V1) < 1e-9

    def test_rejects_bad_volume(self):
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(DomainError):
                radius_for_volume(SPACES["R"], bad)


class TestLargeRadius:
    def test_density_overflow_has_finite_log(self):
        sp = SPACES["O"]
        assert math.isinf(density(sp, 300.0))
        lg = log_density(sp, 300.0)
        assert math.isfinite(lg)
        # log sinh r and log cosh r both collapse to r - log 2 far out.
        expected = (sp.m - 1 + sp.k - 1) * (300.0 - math.log(2.0))
        assert rel(lg, expected) < 1e-12

    def test_coefficients_finite_far_out(self):
        for sp in SPACES.values():
            d = polar_data(sp, 200.0)
            assert math.isfinite(d.H)
            assert math.isfinite(d.lam1)
            assert rel(d.H, sp.m + sp.k - 2) < 1e-12
