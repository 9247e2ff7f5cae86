import math

import numpy as np
import pytest

from cubeshadow import quad, specfun


class TestIntegrator:
    KNOWN = [
        (lambda t: math.exp(-t), 0, np.inf, 1.0),
        (lambda v: 1.0 / math.sqrt(1 - v * v), 0, 1, math.pi / 2),
        (lambda t: t * math.log(t), 0, 1, -0.25),
        (lambda t: math.log(t) ** 2, 0, 1, 2.0),
        (lambda t: 1.0 / math.sqrt(t), 0, 1, 2.0),
        (lambda t: t**3 - 2 * t, -1, 2, 0.75),
        (lambda t: math.exp(-t * t), 0, np.inf, math.sqrt(math.pi) / 2),
        (lambda t: 1.0 / (1 + t * t), 0, np.inf, math.pi / 2),
        (lambda t: math.sin(t) ** 2, 0, math.pi, math.pi / 2),
        (lambda t: t * math.exp(-t) * math.log(t), 0, np.inf, 1 - 0.5772156649015329),
    ]

    @pytest.mark.parametrize("f,a,b,expected", KNOWN)
    def test_known_integrals(self, f, a, b, expected):
        r = quad.integrate_1d(f, a, b, tol=1e-12)
        assert abs(r.value - expected) <= max(10 * r.error_estimate, 1e-12)
        assert r.error_estimate >= 0
        assert r.evaluations > 0

    def test_elliptic_integrand(self):
        r = quad.integrate_1d(lambda t: math.sqrt(1 + math.sin(t) ** 2),
                              0, math.pi / 2, tol=1e-12)
        assert r.value == pytest.approx(specfun.elliptic_imag(1.0).e_value, abs=1e-11)

    def test_bad_tolerance(self):
        with pytest.raises(ValueError):
            quad.integrate_1d(lambda t: t, 0, 1, tol=0.0)


class TestPiIdentity:
    def test_components_and_combination(self):
        suite = quad.pi_over_128_suite()
        assert suite.first.value == pytest.approx(math.pi / 96, abs=1e-10)
        assert suite.second.value == pytest.approx(math.pi / 256, abs=1e-10)
        assert suite.third.value == pytest.approx(math.pi / 192, abs=1e-10)
        assert suite.combination == pytest.approx(math.pi / 128, abs=1e-10)


class TestZetaQuadratures:
    def test_zeta4_value(self, zeta4):
        assert zeta4 == pytest.approx(7.118558716719735, abs=1e-9)

    def test_zeta4_feeds_ar2(self, zeta4):
        assert 12 + 6 * zeta4 + 3 * math.pi == pytest.approx(
            64.136130261087789, abs=1e-8)

    def test_zeta4_tail_decay(self):
        # integrand falls off like 1/t^3, so the tail integral scales as 1/t^2
        tail_a = quad.integrate_1d(quad._zeta4_integrand, 50.0, np.inf, tol=1e-14)
        tail_b = quad.integrate_1d(quad._zeta4_integrand, 100.0, np.inf, tol=1e-14)
        assert tail_b.value / tail_a.value == pytest.approx(0.25, rel=0.05)

    def test_zeta4_integrand_at_zero(self):
        assert quad._zeta4_integrand(0.0) == pytest.approx(0.0, abs=1e-15)

    def test_substitution_invariance(self, zeta4):
        assert quad.zeta4_quadrature_psi_form() == pytest.approx(zeta4, abs=1e-8)

    def test_zeta3_matches_zeta4(self, zeta4):
        z3 = quad.zeta3_quadrature()
        assert z3 == pytest.approx(zeta4, abs=1e-9)

    def test_zeta3_matches_3f2_closed_form(self):
        z3 = quad.zeta3_quadrature()
        f = specfun.hyp3f2_unit(-0.5, 0.5, 1.5, 1.0, 2.0)
        assert z3 / (3 * math.pi) == pytest.approx(f, abs=1e-10)

    def test_zeta5_reduction(self, zeta4):
        assert quad.zeta5_reduction_check() == pytest.approx(zeta4, abs=1e-9)

    @pytest.mark.parametrize("u", [0.3, 1.0, 3.0])
    def test_zeta5_inner_v_identity(self, u):
        lhs, rhs = quad.zeta5_inner_v_identity(u)
        assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_zeta5_identity_large_u_asymptotics(self):
        # closed form behaves like 1/(240 u^14) for large u
        u = 100.0
        _, rhs = quad.zeta5_inner_v_identity(u)
        assert rhs * 240.0 * u**14 == pytest.approx(1.0, abs=1e-3)

    def test_zeta_report(self, zeta4):
        rep = quad.zeta_report()
        assert rep.zeta4 == pytest.approx(zeta4, abs=1e-12)
        assert rep.zeta5_ratio_check == pytest.approx(1.0, abs=1e-10)
        assert rep.discrepancy_34 < 1e-9


class TestMomentIntegralSuite:
    def test_every_entry_matches_closed_form(self, moment_suite):
        for entry in moment_suite:
            tol = 1e-7 if entry.name == "e_mw2_5cube" else 1e-9
            assert entry.discrepancy < max(10 * entry.numeric.error_estimate, tol), entry.name

    def test_key_values(self, moment_suite):
        by_name = {e.name: e for e in moment_suite}
        assert by_name["e_vl"].numeric.value == pytest.approx(
            1.697652726313550, abs=1e-9)
        assert by_name["e_ar"].numeric.value == pytest.approx(8.0, abs=1e-9)
        assert by_name["e_mw2_5cube"].numeric.value == pytest.approx(
            3.516040901689803, abs=1e-7)
