"""Acceptance checks: exact solutions, residuals and the four certificates.

Run with ``pytest -m acceptance``.
"""

import math
import time

import numpy as np
import pytest

from rsharmonic.certify import (
    certify_prop4,
    certify_thm1,
    certify_thm2,
    certify_thm3_nonexistence,
    cross_validate_thm1,
    planar_sample,
)
from rsharmonic.closedform import (
    H_thm3,
    bernoulli_residual_thm1,
    h_thm3_derivatives,
    linear_residual_prop4,
    q_exact,
    q_exact_derivatives,
    r_thm2,
    riccati_residual_thm3,
)
from rsharmonic.models import ConformalMetric, Verdict
from rsharmonic.numerics import ShootingProblem, shoot
from rsharmonic.radial import reduce, residual_1d, residual_2d

pytestmark = [pytest.mark.e2e, pytest.mark.acceptance]

EUCLIDEAN = ConformalMetric.euclidean()


class TestExactSolutions:
    """Shooting reproduces q and the Euler family solves the radial ODE."""

    def setup_method(self):
        self.ode = reduce(EUCLIDEAN)

    @pytest.mark.parametrize("a", [math.log(2.0), 1.0])
    def test_shooting_reproduces_q(self, a):
        start = time.perf_counter()
        problem = ShootingProblem.from_boundary(self.ode, math.exp(-a), 0.0, 1.0, 1.0, samples=1000)
        profile = shoot(problem)
        elapsed = time.perf_counter() - start
        exact = np.array([q_exact(float(r), a) for r in profile.r])
        assert len(profile) == 1000
        assert np.max(np.abs(profile.f - exact)) < 1e-8
        assert profile.claims_diffeomorphism
        # generous against slow CI machines
        assert elapsed < 5.0

    @pytest.mark.parametrize("a", [math.log(2.0), 1.0])
    def test_q_solves_radial_ode(self, a):
        for r in np.linspace(math.exp(-a), 1.0, 500):
            assert abs(residual_1d(self.ode, float(r), *q_exact_derivatives(float(r), a))) < 1e-10

    @pytest.mark.parametrize("c3", [-2.0, 0.0, 1.0, 5.0])
    @pytest.mark.parametrize("c4", [0.0, 1.0])
    def test_euler_family_solves_radial_ode(self, c3, c4):
        checked = 0
        for r in np.linspace(0.1, 1.0, 500):
            r = float(r)
            if abs(1.0 + c3 * r * r) < 1e-3:
                continue
            assert abs(residual_1d(self.ode, r, *h_thm3_derivatives(r, c3, c4))) < 1e-10
            checked += 1
        assert checked >= 495


class TestPlanarHarmonicity:
    """u = q(|z|) z/|z| is harmonic and the stencil converges at second order."""

    def setup_method(self):
        self.a = math.log(2.0)
        self.support = (0.5, 1.0)
        self.points = planar_sample(*self.support)

    def _worst(self, h):
        return max(
            abs(residual_2d(EUCLIDEAN, lambda rho: q_exact(rho, self.a), z, h, support=self.support))
            for z in self.points
        )

    def test_residual_below_tolerance(self):
        assert len(self.points) == 20
        assert self._worst(1e-3) < 1e-5

    def test_second_order_convergence(self):
        ratio = self._worst(1e-3) / self._worst(5e-4)
        assert 2.5 <= ratio <= 6.0


@pytest.mark.certificate
class TestNonexistenceCertificates:
    """The four nonexistence sweeps at their documented constants."""

    def test_hyperbolic_annulus(self):
        start = time.perf_counter()
        cert = certify_thm1(1.0, [0.0, 0.5, 1.0, 10.0, 1e4])
        elapsed = time.perf_counter() - start
        assert cert.verdict == Verdict.PASS
        for point in cert.points:
            B = point.quantities["B"]
            c0 = point.constants["c0"]
            assert 1.0 / math.sqrt(1.0 + c0) - 1e-9 <= B <= 1.0 + 1e-9
        assert elapsed < 5.0

    def test_punctured_disc(self):
        cert = certify_thm2(1.0, [0.0, 0.1, 1.0, 10.0])
        assert cert.verdict == Verdict.PASS
        zero = cert.points[0].quantities
        assert zero["g_at_inner"] == pytest.approx(math.exp(-1.0))
        assert zero["g_at_inner"] != 0.0
        for c1 in (0.1, 1.0):
            assert r_thm2(-1e6, c1) < 1e-5 < math.exp(-1.0)
        # c1 = 10 decays as |G|^(-1/sqrt(10)), so only the inner radius is beaten
        assert r_thm2(-1e6, 10.0) < math.exp(-1.0)

    def test_euclidean_target(self):
        cert = certify_thm3_nonexistence([-2.0, 0.0, 1.0, 100.0], [0.0])
        assert cert.verdict == Verdict.PASS
        for point in cert.points:
            q = point.quantities
            assert q["h_at_probe"] > 1e5
            assert 0 < q["witness_r0"] < 1
            assert q["witness_fails_admissibility"] is True

    def test_poincare_disc(self):
        cert = certify_prop4([0.0, 1.0, 100.0])
        assert cert.verdict == Verdict.PASS
        q = cert.points[1].quantities
        assert q["b2"] == pytest.approx(0.75, abs=1e-9)
        assert q["k_min"] == pytest.approx(math.sqrt(0.5), abs=1e-5)
        assert q["sup_r_bound"] == pytest.approx(math.exp(2.0 / math.sqrt(3.0)))


class TestFirstIntegrals:
    """Closed forms against integrated ODEs and their first-order equations."""

    @pytest.mark.parametrize("c0", [0.0, 3.0])
    def test_swapped_ode_matches_closed_form(self, c0):
        assert cross_validate_thm1(1.0, c0) < 1e-6

    def test_bernoulli_family(self):
        for c0 in (0.0, 0.5, 3.0, 10.0):
            for F in np.linspace(-0.9, -0.1, 17):
                assert abs(bernoulli_residual_thm1(float(F), 1.0, c0)) < 1e-6

    def test_riccati_family(self):
        for c3 in (-2.0, 0.0, 1.0, 5.0):
            for r in np.linspace(0.05, 0.95, 19):
                r = float(r)
                if abs(1.0 + c3 * r * r) < 1e-2:
                    continue
                H = H_thm3(r, c3)
                assert abs(riccati_residual_thm3(r, c3)) <= 1e-10 * (1.0 + H * H + 1.0 / (r * r))

    def test_linear_first_integral(self):
        for c5 in (0.25, 1.0, 100.0):
            for k in np.linspace(0.1, 0.9, 17):
                assert abs(linear_residual_prop4(float(k), c5)) < 1e-6 * max(1.0, c5)
