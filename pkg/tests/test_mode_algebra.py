import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floquet_ising.mode_algebra import (
    DriveParams,
    ModeGeometry,
    bogoliubov_angle,
    dispersion,
    large_gamma_expansion,
    mode_geometry,
)
from floquet_ising.propagator import cycle_map
from floquet_ising import closed_form

momenta = st.floats(1e-6, math.pi - 1e-6)
fields = st.floats(-50, 50)


def mode_hamiltonian(gamma, k):
    """H_k on (|0>, |1>) (pair empty, pair occupied), built from the
    fermion bilinears directly."""
    c, s = gamma + math.cos(k), math.sin(k)
    return np.array([[2 * c, 2j * s], [-2j * s, -2 * c]])


class TestDriveParams:
    def test_p_is_derived(self):
        d = DriveParams(20.0, 0.1)
        assert d.p == 20.0 * 0.1 / math.pi

    @pytest.mark.parametrize("g, t", [(0, 1), (-1, 1), (1, 0), (1, -2), (math.inf, 1)])
    def test_rejects_nonpositive(self, g, t):
        with pytest.raises(ValueError):
            DriveParams(g, t)

    def test_from_p(self):
        assert DriveParams.from_p(1.0, gamma0=20).period == pytest.approx(math.pi / 20, rel=1e-15)
        assert DriveParams.from_p(2.0, period=0.1).gamma0 == pytest.approx(20 * math.pi, rel=1e-15)
        with pytest.raises(ValueError):
            DriveParams.from_p(1.0)
        with pytest.raises(ValueError):
            DriveParams.from_p(1.0, gamma0=1, period=1)


class TestDispersion:
    @pytest.mark.parametrize("k", [0.0, 0.3, 1.7, math.pi])
    def test_zero_field(self, k):
        assert dispersion(0.0, k) == pytest.approx(2.0, abs=1e-15)

    def test_values(self):
        assert dispersion(1.0, 0.0) == 4.0
        assert dispersion(20.0, math.pi / 2) == pytest.approx(2 * math.sqrt(401), rel=1e-15)
        assert dispersion(20.0, math.pi / 2) == pytest.approx(40.049969, abs=1e-6)

    @given(fields, momenta)
    def test_mirror(self, g, k):
        assert dispersion(g, math.pi - k) == pytest.approx(dispersion(-g, k), rel=1e-12, abs=1e-12)

    @given(fields, momenta)
    def test_matches_mode_hamiltonian(self, g, k):
        e = np.linalg.eigvalsh(mode_hamiltonian(g, k))
        assert e[1] == pytest.approx(dispersion(g, k), rel=1e-12, abs=1e-12)
        assert dispersion(g, k) >= 2 * abs(math.sin(k)) - 1e-12


class TestBogoliubovAngle:
    def test_values(self):
        assert bogoliubov_angle(5.0, 1e-12) == pytest.approx(0.0, abs=1e-12)
        assert bogoliubov_angle(0.0, math.pi / 2) == pytest.approx(-math.pi / 4, abs=1e-15)
        assert bogoliubov_angle(20.0, math.pi / 2) == pytest.approx(math.atan(-1 / (20 + math.sqrt(401))), rel=1e-14)
        assert bogoliubov_angle(20.0, math.pi / 2) == pytest.approx(-0.0249792, abs=1e-7)

    @given(momenta)
    def test_zero_field_half_angle(self, k):
        assert bogoliubov_angle(0.0, k) == pytest.approx(-k / 2, abs=1e-12)

    @given(fields, momenta)
    def test_ground_vector(self, g, k):
        # |-> = -sin(t)|0> + i cos(t)|1> must be the lower eigenvector
        t = bogoliubov_angle(g, k)
        v = np.array([-math.sin(t), 1j * math.cos(t)])
        h = mode_hamiltonian(g, k)
        assert np.allclose(h @ v, -dispersion(g, k) * v, atol=1e-9 * max(1.0, abs(g)))

    @given(st.floats(0, 50), momenta)
    def test_range_for_positive_field(self, g, k):
        t = bogoliubov_angle(g, k)
        assert -math.pi / 2 < t <= 0

    def test_singular_corner(self):
        k = np.geomspace(1e-12, 1e-2, 50)
        t = bogoliubov_angle(-20.0, k)
        assert np.all(np.isfinite(t))
        assert np.all(np.diff(t) > 0)  # continuous, monotone approach to -pi/2
        assert t[0] == pytest.approx(-math.pi / 2, abs=1e-11)
        assert bogoliubov_angle(-20.0, 0.0) == -math.pi / 2

    def test_continuity_on_fine_grid(self):
        k = np.linspace(1e-9, math.pi - 1e-9, 200001)
        for g in (-40.0, -1.5, -0.5, 0.5, 20.0):
            t = bogoliubov_angle(g, k)
            assert np.all(np.isfinite(t))
            assert np.max(np.abs(np.diff(t))) < 1e-3


class TestModeGeometry:
    def test_example_off_peak(self):
        g = mode_geometry(DriveParams(20, 0.1), math.pi / 2)
        assert g.mu1 == pytest.approx(2.0024984, abs=1e-7)
        assert g.mu2 == pytest.approx(g.mu1, rel=1e-15)
        assert g.phi == pytest.approx(1.5208379, abs=1e-7)
        assert g.theta2 == pytest.approx(math.atan(-40.02498), abs=1e-6)

    def test_example_freezing(self):
        g = mode_geometry(DriveParams(20, math.pi / 20), math.pi / 2)
        assert g.mu1 == pytest.approx(math.pi * math.sqrt(401) / 20, rel=1e-15)
        assert g.mu2 == pytest.approx(g.mu1, rel=1e-15)
        assert g.mu1 == pytest.approx(3.1455, abs=1e-4)

    def test_example_unit(self):
        g = mode_geometry(DriveParams(1, 1), math.pi / 2)
        assert g.lambda_plus == pytest.approx(2 * math.sqrt(2), rel=1e-15)
        assert g.lambda_minus == pytest.approx(2 * math.sqrt(2), rel=1e-15)
        assert g.mu1 == pytest.approx(math.sqrt(2), rel=1e-15)

    @given(st.floats(0.1, 50), st.floats(0.01, 2), momenta)
    def test_consistency(self, g0, T, k):
        g = mode_geometry(DriveParams(g0, T), k)
        assert g.lambda_plus == pytest.approx(2 * math.sqrt(g0**2 + 1 + 2 * g0 * math.cos(k)), rel=1e-13)
        assert g.mu1 == pytest.approx(T / 2 * g.lambda_plus, rel=1e-15)
        assert g.mu2 == pytest.approx(T / 2 * g.lambda_minus, rel=1e-15)
        assert g.phi == g.theta1 - g.theta2
        assert all(np.isfinite(x) for x in (g.theta1, g.theta2, g.phi))

    def test_vectorized(self):
        k = np.linspace(0.1, 3.0, 7)
        g = mode_geometry(DriveParams(3, 0.4), k)
        for i, ki in enumerate(k):
            assert g.phi[i] == mode_geometry(DriveParams(3, 0.4), ki).phi


def _physics(geom):
    u = cycle_map(geom).u
    env = closed_form.envelope_from_geometry(geom)
    return u, env


class TestGaugeInvariance:
    @given(st.floats(0.5, 40), st.floats(0.01, 1), momenta)
    @settings(max_examples=50)
    def test_pi_shift_of_theta2(self, g0, T, k):
        g = mode_geometry(DriveParams(g0, T), k)
        shifted = ModeGeometry(g.k, g.lambda_plus, g.lambda_minus, g.theta1, g.theta2 + math.pi, g.phi - math.pi, g.mu1, g.mu2)
        u0, e0 = _physics(g)
        u1, e1 = _physics(shifted)
        assert np.allclose(u1, u0, atol=1e-12) or np.allclose(u1, -u0, atol=1e-12)
        for name in ("a_k", "r_k", "omega_k"):
            assert getattr(e1, name) == pytest.approx(getattr(e0, name), abs=1e-12)

    @given(st.floats(0.5, 40), st.floats(0.01, 1), momenta)
    @settings(max_examples=50)
    def test_sin_k_reflection(self, g0, T, k):
        # theta -> -theta (the other sin k sign convention) leaves physics unchanged
        g = mode_geometry(DriveParams(g0, T), k)
        flipped = ModeGeometry(g.k, g.lambda_plus, g.lambda_minus, -g.theta1, -g.theta2, -g.phi, g.mu1, g.mu2)
        u0, e0 = _physics(g)
        u1, e1 = _physics(flipped)
        assert np.allclose(np.abs(u1), np.abs(u0), atol=1e-12)
        for name in ("a_k", "r_k", "omega_k"):
            assert getattr(e1, name) == pytest.approx(getattr(e0, name), abs=1e-12)


class TestLargeGammaExpansion:
    def test_freezing_point(self):
        _, _, u12 = large_gamma_expansion(DriveParams(20, math.pi / 20), math.pi / 2)
        assert u12 == pytest.approx(0.0, abs=1e-15)

    def test_phi_example(self):
        d = DriveParams(20, 0.1)
        phi, _, _ = large_gamma_expansion(d, math.pi / 2)
        assert phi == pytest.approx(-math.pi / 2 + 0.05, rel=1e-15)
        assert phi == pytest.approx(-1.5208, abs=1e-4)
        # the expansion uses the opposite sin k sign convention
        exact = mode_geometry(d, math.pi / 2).phi
        assert -exact == pytest.approx(phi, abs=1e-4)

    def test_u12_example(self):
        _, _, u12 = large_gamma_expansion(DriveParams(100, 0.01), math.pi / 4)
        assert u12 == pytest.approx(abs(math.sin(1)) * 2 * (math.sqrt(2) / 2) / 100, rel=1e-14)
        assert u12 == pytest.approx(0.0119, abs=1e-4)

    def test_u12_against_exact(self):
        # O(1/gamma0^2) holds at fixed p, where T itself shrinks like 1/gamma0
        k = np.linspace(0.05, math.pi - 0.05, 64)
        for g0 in (50, 100, 200):
            d = DriveParams.from_p(1.3, gamma0=g0)
            _, _, approx = large_gamma_expansion(d, k)
            exact = np.abs(cycle_map(mode_geometry(d, k)).u[:, 0, 1])
            assert np.max(np.abs(exact - approx)) < 10 / g0**2

    def test_convergence_orders(self):
        k = np.linspace(0.05, math.pi - 0.05, 97)
        T = 0.3
        phi_err, mu_err = [], []
        for g0 in (50.0, 100.0, 200.0):
            d = DriveParams(g0, T)
            geom = mode_geometry(d, k)
            phi_a, mu2_a, _ = large_gamma_expansion(d, k)
            diff = np.mod(-geom.phi - phi_a + math.pi / 2, math.pi) - math.pi / 2
            phi_err.append(np.max(np.abs(diff)))
            mu_err.append(np.max(np.abs(geom.mu2 - mu2_a)))
        # doubling gamma0 divides the errors by ~8 and ~2
        assert phi_err[0] / phi_err[1] == pytest.approx(8, rel=0.05)
        assert phi_err[1] / phi_err[2] == pytest.approx(8, rel=0.05)
        assert mu_err[0] / mu_err[1] == pytest.approx(2, rel=0.05)
        assert mu_err[1] / mu_err[2] == pytest.approx(2, rel=0.05)
        assert phi_err[0] * 50**3 < 1.0
        assert mu_err[0] * 50 / T < 1.0
