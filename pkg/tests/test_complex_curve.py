"""Tests for the complex torus picture of the orbit curve."""

import numpy as np
import pytest

from etgeom.complex_curve import (
    complex_involution,
    coplanarity_det,
    normalize_torus,
    phi,
    real_coplanarity,
    slice_to_torus,
    torus_to_slice,
)
from etgeom.curve import Component, Orbit, curve_point, normalize_phase, tau_phase
from etgeom.elliptic import quarter_periods
from etgeom.errors import OutOfRange
from etgeom.involution import Branch


@pytest.fixture
def chart(case_state):
    _, delta, x = case_state
    return Orbit.from_state(x, delta).chart


class TestPhi:
    def test_real_slice_is_plus_component(self, chart):
        plus = chart.with_component(Component.PLUS)
        for u in np.linspace(-4.0, 4.0, 9):
            p = phi(u, chart)
            assert np.max(np.abs(p.imag)) <= 1e-14
            assert p.real == pytest.approx(curve_point(plus, u), abs=1e-13)

    def test_upper_slice_is_minus_component(self, chart):
        K, Kp = chart.periods
        minus = chart.with_component(Component.MINUS)
        for u in np.linspace(-3.0, 3.0, 7):
            p = phi(complex(-(u + 2 * K), 2 * Kp), chart)
            assert p == pytest.approx(curve_point(minus, -u), abs=1e-12)

    def test_periodic(self, chart):
        K, Kp = chart.periods
        z = complex(0.4, 0.3)
        assert phi(z + 4 * K, chart) == pytest.approx(phi(z, chart), abs=1e-12)
        assert phi(z + 4j * Kp, chart) == pytest.approx(phi(z, chart), abs=1e-12)

    def test_slices_round_trip(self, chart):
        periods = chart.periods
        for component in Component:
            for u in (-1.9, -0.3, 0.0, 1.2):
                z = slice_to_torus(component, u, periods)
                assert phi(z, chart) == pytest.approx(
                    curve_point(chart.with_component(component), u), abs=1e-12
                )
                back, w = torus_to_slice(z, periods)
                assert back is component
                assert w == pytest.approx(u, abs=1e-12)

    def test_off_slice(self, chart):
        with pytest.raises(OutOfRange):
            torus_to_slice(complex(0.3, 0.5 * chart.periods.Kprime), chart.periods)


class TestNormalizeTorus:
    def test_fundamental_domain(self):
        periods = quarter_periods(0.6)
        K, Kp = periods
        for z in (complex(-0.1, -0.1), complex(9.0, 17.0), complex(4 * K, 4 * Kp)):
            w = normalize_torus(z, periods)
            assert 0.0 <= w.real < 4 * K
            assert 0.0 <= w.imag < 4 * Kp


class TestComplexInvolution:
    @pytest.mark.parametrize("branch", list(Branch))
    def test_involutive(self, chart, branch):
        z = complex(0.7, 0.4)
        w = complex_involution(complex_involution(z, 0.3, branch, chart), 0.3, branch, chart)
        assert phi(w, chart) == pytest.approx(phi(z, chart), abs=1e-11)

    def test_composition_is_translation(self, chart):
        z = complex(0.7, 0.4)
        nu1, nu2 = 0.25, -0.6
        w = complex_involution(z, nu1, Branch.MINUS, chart)
        w = complex_involution(w, nu2, Branch.PLUS, chart)
        assert phi(w, chart) == pytest.approx(phi(z + nu1 + nu2, chart), abs=1e-11)

    def test_real_points_map_to_upper_slice(self, chart):
        Kp = chart.periods.Kprime
        for u in (-1.0, 0.0, 2.3):
            w = complex_involution(u, 0.5, Branch.MINUS, chart)
            assert w.imag == pytest.approx(2 * Kp)

    def test_agrees_with_phase_bookkeeping(self, chart):
        periods = chart.periods
        nu_i = 0.45
        for u in (-1.3, 0.2, 1.7):
            z = slice_to_torus(Component.PLUS, u, periods)
            w = complex_involution(z, nu_i, Branch.MINUS, chart)
            component, phase = torus_to_slice(w, periods)
            expected_component, expected_phase = tau_phase(Component.PLUS, u, nu_i)
            assert component is expected_component
            assert normalize_phase(phase - expected_phase, chart.K) == pytest.approx(0.0, abs=1e-12)

    def test_image_matches_real_curve(self, chart):
        minus = chart.with_component(Component.MINUS)
        for u in (-0.8, 0.5):
            w = complex_involution(u, 0.3, Branch.MINUS, chart)
            assert phi(w, chart) == pytest.approx(curve_point(minus, -u - 0.3), abs=1e-11)


class TestCoplanarity:
    MODULUS = 0.6

    def test_opposite_pairs(self):
        z, w = complex(0.3, 0.2), complex(-0.9, 0.5)
        assert abs(coplanarity_det([z, -z, w, -w], self.MODULUS)) <= 1e-12

    def test_zero_sum(self):
        zs = [complex(0.4, 0.1), complex(1.1, -0.3), complex(-0.6, 0.45)]
        zs.append(-sum(zs))
        assert abs(coplanarity_det(zs, self.MODULUS)) <= 1e-11

    def test_random_zero_sum_quadruples(self):
        rng = np.random.default_rng(51)
        for _ in range(50):
            zs = list(rng.uniform(-1.5, 1.5, size=3) + 1j * rng.uniform(-0.3, 0.3, size=3))
            zs.append(-sum(zs))
            assert abs(coplanarity_det(zs, self.MODULUS)) <= 1e-8

    def test_sum_equal_to_period(self):
        periods = quarter_periods(self.MODULUS)
        zs = [complex(0.4, 0.1), complex(1.1, -0.3), complex(-0.6, 0.45)]
        zs.append(4 * periods.K - sum(zs))
        assert abs(coplanarity_det(zs, self.MODULUS)) <= 1e-10

    def test_generic_quadruple_is_not_coplanar(self):
        zs = [complex(0.2, 0.0), complex(0.9, 0.3), complex(1.7, -0.2), complex(2.6, 0.4)]
        assert abs(coplanarity_det(zs, self.MODULUS)) > 1e-4

    def test_random_quadruples_are_not_coplanar(self):
        # spread real parts keep the points apart and the sum near 5.6,
        # at least 1 away from the lattice (4K, 4iK')
        rng = np.random.default_rng(52)
        base = np.array([0.2, 1.0, 1.8, 2.6])
        for _ in range(50):
            zs = base + rng.uniform(-0.1, 0.1, size=4) + 1j * rng.uniform(-0.2, 0.2, size=4)
            assert abs(coplanarity_det(list(zs), self.MODULUS)) > 1e-5

    def test_needs_four_points(self):
        with pytest.raises(ValueError):
            coplanarity_det([0.1, 0.2, 0.3], self.MODULUS)

    @pytest.mark.parametrize("nu_i", [0.3, -1.1, 2.0])
    def test_real_rulings_meet(self, chart, nu_i):
        rng = np.random.default_rng(50)
        for _ in range(20):
            u0, u0_tilde = rng.uniform(-2 * chart.K, 2 * chart.K, size=2)
            assert abs(real_coplanarity(chart, u0, u0_tilde, nu_i)) <= 1e-11

    def test_unrelated_real_points(self, chart):
        plus = chart.with_component(Component.PLUS)
        minus = chart.with_component(Component.MINUS)
        points = [
            curve_point(plus, 0.1),
            curve_point(minus, 1.4),
            curve_point(minus, -1.0),
            curve_point(plus, 2.5),
        ]
        rows = np.hstack([np.array(points), np.ones((4, 1))])
        assert abs(np.linalg.det(rows)) > 1e-6
