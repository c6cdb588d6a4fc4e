import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sosharmonics.coords import (
    CartesianPoint,
    SosPoint,
    SystemConfig,
    cartesian_to_sos,
    compute_W,
    dW,
    metrics_at,
    sos_to_cartesian,
)
from sosharmonics.errors import DegenerateOriginError, PoleLimitError
from sosharmonics.series import w_border
from sosharmonics.trig import trig_auto

from _oracles import W_REF_MU2_NU30, Z_REF_MU2_NU30

CFG2 = SystemConfig(mu=2.0, R0=1.0)
CFG0 = SystemConfig(mu=0.0, R0=1.0)


class TestConfig:
    def test_rejects_negative_mu(self):
        with pytest.raises(ValueError):
            SystemConfig(mu=-0.5, R0=1.0)

    def test_rejects_nonpositive_R0(self):
        with pytest.raises(ValueError):
            SystemConfig(mu=1.0, R0=0.0)

    def test_point_validation(self):
        with pytest.raises(ValueError):
            SosPoint(R=-1.0, nu=0.0)
        with pytest.raises(ValueError):
            SosPoint(R=1.0, nu=2.0)


class TestComputeW:
    def test_equator(self):
        assert compute_W(1.0, 0.0, CFG2) == 0.0

    def test_pi_over_4(self):
        # sin/cos^3 at pi/4 gives exactly 2
        assert compute_W(1.0, math.pi / 4, CFG2) == pytest.approx(2.0, rel=1e-14)

    def test_radial_scaling(self):
        # (R/R0)^mu factor: doubling R multiplies W by 4 at mu=2
        assert compute_W(2.0, math.pi / 4, CFG2) == pytest.approx(8.0, rel=1e-14)

    def test_reference_value(self):
        assert compute_W(1.0, math.pi / 6, CFG2) == pytest.approx(
            W_REF_MU2_NU30, rel=1e-14
        )

    def test_odd_in_nu(self):
        assert compute_W(1.3, -0.7, CFG2) == -compute_W(1.3, 0.7, CFG2)

    def test_pole_limit(self):
        with pytest.raises(PoleLimitError):
            compute_W(1.0, math.pi / 2, CFG2)

    def test_mu0_is_tangent(self):
        assert compute_W(5.0, 0.9, CFG0) == pytest.approx(math.tan(0.9), rel=1e-14)


class TestDerivativesOfW:
    def test_mu0_dnu(self):
        d = dW(1.0, 0.7, CFG0)
        assert d[0] == pytest.approx(1.0 / math.cos(0.7) ** 2, rel=1e-14)

    def test_dR_structure(self):
        for mu, R, nu in [(2.0, 1.5, 0.4), (0.5, 0.7, -0.9)]:
            cfg = SystemConfig(mu=mu, R0=1.0)
            d = dW(R, nu, cfg)
            assert d[1] == pytest.approx(mu * compute_W(R, nu, cfg) / R, rel=1e-14)

    def test_mu0_d2R_zero(self):
        assert dW(2.0, 0.5, CFG0)[3] == 0.0

    @pytest.mark.parametrize("mu", [0.0, 0.5, 2.0])
    @pytest.mark.parametrize("nu", [-1.1, -0.3, 0.2, 0.8, 1.3])
    def test_against_finite_differences(self, mu, nu):
        # oracle: central differences of compute_W itself
        cfg = SystemConfig(mu=mu, R0=1.0)
        R = 1.4
        d = dW(R, nu, cfg)
        hn, hr = 1e-6, 1e-6 * R
        h2n, h2r = 1e-4, 1e-4 * R  # larger step: second differences amplify rounding
        fd_nu = (compute_W(R, nu + hn, cfg) - compute_W(R, nu - hn, cfg)) / (2 * hn)
        fd_R = (compute_W(R + hr, nu, cfg) - compute_W(R - hr, nu, cfg)) / (2 * hr)
        fd_nu2 = (
            compute_W(R, nu + h2n, cfg) - 2 * compute_W(R, nu, cfg) + compute_W(R, nu - h2n, cfg)
        ) / h2n**2
        fd_R2 = (
            compute_W(R + h2r, nu, cfg) - 2 * compute_W(R, nu, cfg) + compute_W(R - h2r, nu, cfg)
        ) / h2r**2
        assert d[0] == pytest.approx(fd_nu, rel=1e-8)
        assert d[1] == pytest.approx(fd_R, rel=1e-8)
        assert d[2] == pytest.approx(fd_nu2, rel=1e-6, abs=1e-6)
        assert d[3] == pytest.approx(fd_R2, rel=1e-6, abs=1e-6)


class TestMetrics:
    @pytest.mark.parametrize("nu", [0.001, 0.4, 1.0, 1.4])
    def test_spherical_reduction(self, nu):
        R = 1.7
        mb = metrics_at(R, nu, CFG0)
        assert mb.h_R == pytest.approx(1.0, abs=1e-12)
        assert mb.h_nu == pytest.approx(R, rel=1e-12)
        assert mb.jacobian == pytest.approx(R * R * math.cos(nu), rel=1e-12)

    def test_equator_hR_is_one(self):
        assert metrics_at(2.3, 0.0, CFG2).h_R == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("mu", [0.5, 2.0])
    @pytest.mark.parametrize("R", [0.5, 1.0, 3.0])
    @pytest.mark.parametrize("nu", [0.05, 0.5, 1.1, 1.45])
    def test_cross_checks(self, mu, R, nu):
        cfg = SystemConfig(mu=mu, R0=1.0)
        mb = metrics_at(R, nu, cfg)
        assert mb.jac_over_hR2 * mb.h_R**2 == pytest.approx(mb.jacobian, rel=1e-9)
        assert mb.jac_over_hnu2 * mb.h_nu**2 == pytest.approx(mb.jacobian, rel=1e-9)
        # scale-factor product link
        W = compute_W(R, nu, cfg)
        dw_dnu = dW(R, nu, cfg)[0]
        tb = trig_auto(abs(W), mu)
        lhs = mb.h_R**2 * mb.h_nu**2 * (1.0 + mu) ** 2
        rhs = tb.f_C**2 * tb.f_S**2 * R**2 * dw_dnu**2 / W**2
        assert lhs == pytest.approx(rhs, rel=1e-9)
        # jacobian equals product of the three scale factors (h_lam = R fC/hR)
        h_lam = R * tb.f_C / tb.h_R
        assert mb.jacobian == pytest.approx(mb.h_R * mb.h_nu * h_lam, rel=1e-9)

    def test_guard_band_fallback(self):
        # place W exactly on the border by scaling R
        mu = 2.0
        nu = 0.25
        w_unit = compute_W(1.0, nu, CFG2)
        R = (w_border(mu) / w_unit) ** (1.0 / mu)
        mb = metrics_at(R, nu, CFG2)
        assert mb.jac_over_hR2 * mb.h_R**2 == pytest.approx(mb.jacobian, rel=1e-9)
        assert mb.jac_over_hnu2 * mb.h_nu**2 == pytest.approx(mb.jacobian, rel=1e-9)
        # fallback agrees with nearby series evaluations
        mb_lo = metrics_at(0.85 * R, nu, CFG2)
        mb_hi = metrics_at(1.18 * R, nu, CFG2)
        assert mb_lo.h_R > mb.h_R > mb_hi.h_R  # h_R decreases with W

    def test_negative_nu_even(self):
        a = metrics_at(1.2, 0.6, CFG2)
        b = metrics_at(1.2, -0.6, CFG2)
        assert a.h_R == b.h_R
        assert a.h_nu == b.h_nu
        assert a.jacobian == b.jacobian


class TestForwardTransform:
    def test_equator(self):
        c = sos_to_cartesian(SosPoint(R=2.0, nu=0.0, lam=0.0), CFG2)
        assert (c.x, c.y, c.z) == (2.0, 0.0, 0.0)

    def test_pole(self):
        c = sos_to_cartesian(SosPoint(R=2.0, nu=math.pi / 2), CFG2)
        assert c.x == 0.0 and c.y == 0.0
        assert c.z == pytest.approx(2.0 / math.sqrt(3.0), rel=1e-15)

    def test_reference_point(self):
        c = sos_to_cartesian(SosPoint(R=1.0, nu=math.pi / 6), CFG2)
        assert c.x == pytest.approx(math.cos(math.pi / 6), abs=1e-13)
        assert c.z == pytest.approx(Z_REF_MU2_NU30, abs=1e-13)

    def test_longitude(self):
        c = sos_to_cartesian(SosPoint(R=1.0, nu=0.3, lam=2.0), CFG2)
        assert math.atan2(c.y, c.x) == pytest.approx(2.0, rel=1e-12)

    def test_south_mirror(self):
        n = sos_to_cartesian(SosPoint(R=1.0, nu=0.8), CFG2)
        s = sos_to_cartesian(SosPoint(R=1.0, nu=-0.8), CFG2)
        assert s.x == n.x and s.z == -n.z


class TestInverseTransform:
    def test_equator_axis_points(self):
        p = cartesian_to_sos(CartesianPoint(1.0, 0.0, 0.0), CFG2)
        assert (p.R, p.nu, p.lam) == (1.0, 0.0, 0.0)
        p = cartesian_to_sos(CartesianPoint(0.0, 0.0, 1.0 / math.sqrt(3.0)), CFG2)
        assert p.R == pytest.approx(1.0, rel=1e-15)
        assert p.nu == math.pi / 2

    def test_origin_degenerate(self):
        with pytest.raises(DegenerateOriginError):
            cartesian_to_sos(CartesianPoint(0.0, 0.0, 0.0), CFG2)

    def test_roundtrip_reference(self):
        p0 = SosPoint(R=1.0, nu=math.pi / 6, lam=0.0)
        p1 = cartesian_to_sos(sos_to_cartesian(p0, CFG2), CFG2)
        assert p1.R == pytest.approx(p0.R, rel=1e-9)
        assert p1.nu == pytest.approx(p0.nu, abs=1e-9)

    @settings(max_examples=100, deadline=None)
    @given(
        mu=st.floats(0.0, 6.0),
        logR=st.floats(math.log(0.1), math.log(10.0)),
        nu=st.floats(-1.55, 1.55),
        lam=st.floats(-3.1, 3.1),
    )
    def test_roundtrip_property(self, mu, logR, nu, lam):
        cfg = SystemConfig(mu=mu, R0=1.0)
        p0 = SosPoint(R=math.exp(logR), nu=nu, lam=lam)
        c = sos_to_cartesian(p0, cfg)
        # membership of the R-spheroid
        assert c.x**2 + c.y**2 + (1.0 + mu) * c.z**2 == pytest.approx(
            p0.R**2, rel=1e-10
        )
        p1 = cartesian_to_sos(c, cfg)
        assert p1.R == pytest.approx(p0.R, rel=1e-9)
        assert p1.nu == pytest.approx(p0.nu, abs=1e-9)
        assert p1.lam == pytest.approx(p0.lam, abs=1e-9)


class TestGeometricInvariants:
    @pytest.mark.parametrize("mu", [0.5, 2.0])
    def test_cone_invariance(self, mu):
        # scaling a position along its origin ray preserves W and the bundle
        cfg = SystemConfig(mu=mu, R0=1.0)
        rng = random.Random(7)
        for _ in range(40):
            p = SosPoint(R=rng.uniform(0.3, 3.0), nu=rng.uniform(-1.4, 1.4), lam=0.0)
            if abs(p.nu) < 1e-3:
                continue
            c = sos_to_cartesian(p, cfg)
            c2 = CartesianPoint(2 * c.x, 2 * c.y, 2 * c.z)
            p2 = cartesian_to_sos(c2, cfg)
            w1 = compute_W(p.R, abs(p.nu), cfg)
            w2 = compute_W(p2.R, abs(p2.nu), cfg)
            assert w2 == pytest.approx(w1, rel=1e-9)
            t1, t2 = trig_auto(w1, mu), trig_auto(w2, mu)
            for f in ("s", "h_R", "f_S", "f_C"):
                assert getattr(t2, f) == pytest.approx(getattr(t1, f), abs=1e-9)

    @pytest.mark.parametrize("mu", [0.5, 2.0])
    def test_position_magnitude(self, mu):
        # |r|^2 = R^2 (1 - mu s^2/(1+mu)^2)
        cfg = SystemConfig(mu=mu, R0=1.0)
        for nu in (-1.2, -0.5, 0.3, 0.9, 1.5):
            for R in (0.4, 1.0, 2.5):
                p = SosPoint(R=R, nu=nu, lam=1.1)
                c = sos_to_cartesian(p, cfg)
                W = compute_W(R, abs(nu), cfg)
                s = trig_auto(W, mu).s
                ref = R * R * (1.0 - mu * s * s / (1.0 + mu) ** 2)
                assert c.x**2 + c.y**2 + c.z**2 == pytest.approx(ref, rel=1e-10)
