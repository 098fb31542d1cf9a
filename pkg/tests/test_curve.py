"""Tests for the elliptic chart of the orbit curve."""

import math

import numpy as np
import pytest

from conftest import CANONICAL_DELTA, CASE_A_STATE, CASE_B_STATE, draw_admissible
from etgeom.curve import (
    Component,
    Orbit,
    amplitudes_squared,
    chart_from_state,
    curve_modulus,
    curve_point,
    elliptic_solution,
    elliptic_time_step,
    mirror_state,
    normalize_phase,
    tau_phase,
)
from etgeom.dynamics import CaseLabel, Delta, conserved, cylinders, hk_map, iterate
from etgeom.elliptic import jacobi_real
from etgeom.errors import OutOfRange, RegimeViolation


class TestChartFromState:
    def test_reproduces_state(self, case_state):
        case, delta, x = case_state
        chart, u0 = chart_from_state(x, delta)
        assert chart.case is case
        assert curve_point(chart, u0) == pytest.approx(x, abs=1e-10)

    def test_phase_interval(self, case_state):
        _, delta, x = case_state
        chart, u0 = chart_from_state(x, delta)
        assert -2 * chart.K <= u0 <= 2 * chart.K

    def test_random_round_trip(self):
        rng = np.random.default_rng(20)
        for _ in range(50):
            delta, x = draw_admissible(rng)
            chart, u0 = chart_from_state(x, delta)
            again, u1 = chart_from_state(curve_point(chart, u0), delta)
            assert again.amplitudes == pytest.approx(chart.amplitudes, rel=1e-10)
            assert again.k == pytest.approx(chart.k, rel=1e-10)
            assert u1 == pytest.approx(u0, abs=1e-10)
            assert curve_point(chart, u0) == pytest.approx(x, abs=1e-10)

    def test_amplitudes_match_formulas(self, case_state):
        case, delta, x = case_state
        chart, _ = chart_from_state(x, delta)
        F = conserved(x, delta)
        expected = amplitudes_squared(F, delta, case)
        assert [a * a for a in chart.amplitudes] == pytest.approx(list(expected), rel=1e-11)

    def test_modulus_formula(self):
        delta = Delta(*CANONICAL_DELTA)
        F = conserved(CASE_A_STATE, delta)
        k = curve_modulus(F, CaseLabel.A)
        assert k.k ** 2 == pytest.approx((1 - 1 / F.F3) / (1 - F.F1), rel=1e-14)
        F = conserved(CASE_B_STATE, delta)
        k = curve_modulus(F, CaseLabel.B)
        assert k.k ** 2 == pytest.approx((1 - F.F1) / (1 - 1 / F.F3), rel=1e-14)

    def test_middle_amplitude_sign(self):
        rng = np.random.default_rng(21)
        for regime_sign in (1, -1):
            for _ in range(20):
                delta, x = draw_admissible(rng, regime_sign=regime_sign)
                chart, _ = chart_from_state(x, delta)
                p, q, r = chart.amplitudes
                anchor = p if chart.case is CaseLabel.A else r
                assert math.copysign(1.0, q) == math.copysign(1.0, delta.d2 * anchor)

    def test_map_advances_phase(self, case_state):
        _, delta, x = case_state
        chart, u0 = chart_from_state(x, delta)
        nu = elliptic_time_step(conserved(x, delta), chart.case, chart.k)
        assert curve_point(chart, u0 + nu) == pytest.approx(hk_map(x, delta), abs=1e-9)

    def test_middle_coordinate_zero(self):
        delta = Delta(*CANONICAL_DELTA)
        x = np.array([1.0, 0.0, 0.5])
        chart, u0 = chart_from_state(x, delta)
        K = chart.K
        assert min(abs(u0), abs(abs(u0) - 2 * K)) <= 1e-12
        p = chart.amplitudes[0] if chart.case is CaseLabel.A else chart.amplitudes[2]
        coordinate = x[0] if chart.case is CaseLabel.A else x[2]
        assert jacobi_real(u0, chart.k).cn == pytest.approx(math.copysign(1.0, coordinate / p))

    def test_mixed_regime(self):
        with pytest.raises(RegimeViolation):
            chart_from_state(CASE_B_STATE, Delta(0.05, 0.05, -0.05))


class TestEllipticTimeStep:
    def test_defining_relation(self, case_state):
        case, delta, x = case_state
        F = conserved(x, delta)
        k = curve_modulus(F, case)
        nu = elliptic_time_step(F, case, k)
        sn, cn, dn = jacobi_real(nu / 2, k.k)
        if case is CaseLabel.A:
            assert sn * sn == pytest.approx(1 - F.F1, abs=1e-11)
            assert cn * cn == pytest.approx(F.F1, abs=1e-10)
            assert dn * dn == pytest.approx(1 / F.F3, abs=1e-10)
        else:
            assert sn * sn == pytest.approx(1 - 1 / F.F3, abs=1e-11)
            assert cn * cn == pytest.approx(1 / F.F3, abs=1e-10)
            assert dn * dn == pytest.approx(F.F1, abs=1e-10)

    def test_positive_and_below_half_period(self, case_state):
        case, delta, x = case_state
        F = conserved(x, delta)
        k = curve_modulus(F, case)
        nu = elliptic_time_step(F, case, k)
        assert 0 < nu < 2 * Orbit.from_state(x, delta).K

    def test_vanishes_with_step(self):
        steps = []
        for eps in (1e-1, 1e-2, 1e-3):
            delta = Delta.from_eps_alpha(eps, (-1.0, 1.0, -1.0))
            steps.append(Orbit.from_state(CASE_B_STATE, delta).nu)
        assert steps[0] > steps[1] > steps[2]
        assert steps[2] < 1e-2


class TestCurvePoint:
    def test_origin_case_a(self):
        delta = Delta(*CANONICAL_DELTA)
        chart, _ = chart_from_state(CASE_A_STATE, delta)
        a1, _, a3 = chart.amplitudes
        assert curve_point(chart.with_component(Component.PLUS), 0.0) == pytest.approx(
            [a1, 0.0, a3]
        )

    def test_on_cylinders(self, case_state):
        _, delta, x = case_state
        chart, _ = chart_from_state(x, delta)
        quadrics = cylinders(conserved(x, delta), delta)
        rng = np.random.default_rng(22)
        for component in Component:
            c = chart.with_component(component)
            for u in rng.uniform(-10.0, 10.0, size=100):
                p = curve_point(c, u)
                for q in quadrics:
                    assert abs(q.evaluate(p)) <= 1e-10 * max(1.0, q.scale(p))

    def test_periodic(self, case_state):
        _, delta, x = case_state
        chart, _ = chart_from_state(x, delta)
        for u in (-1.0, 0.3, 2.5):
            assert curve_point(chart, u + 4 * chart.K) == pytest.approx(
                curve_point(chart, u), abs=1e-10
            )


class TestEllipticSolution:
    def test_zero_steps(self, case_state):
        _, delta, x = case_state
        orbit = Orbit.from_state(x, delta)
        states = orbit.solution(0)
        assert states.shape == (1, 3)
        assert states[0] == pytest.approx(x, abs=1e-10)

    def test_matches_map(self, case_state):
        _, delta, x = case_state
        orbit = Orbit.from_state(x, delta)
        assert np.max(np.abs(orbit.solution(50) - iterate(x, delta, 50))) <= 1e-8

    @pytest.mark.acceptance
    @pytest.mark.parametrize("case", [CaseLabel.A, CaseLabel.B])
    def test_random_agreement(self, case):
        rng = np.random.default_rng(23)
        for _ in range(50):
            delta, x = draw_admissible(rng, case=case)
            orbit = Orbit.from_state(x, delta)
            assert np.max(np.abs(orbit.solution(50) - iterate(x, delta, 50))) <= 1e-8

    def test_commensurate_step_closes(self, case_state):
        _, delta, x = case_state
        chart, u0 = chart_from_state(x, delta)
        nu = 4 * chart.K / 7
        states = elliptic_solution(chart, u0, nu, 7)
        assert states[7] == pytest.approx(states[0], abs=1e-10)

    def test_negative_steps(self, case_state):
        _, delta, x = case_state
        chart, u0 = chart_from_state(x, delta)
        with pytest.raises(OutOfRange):
            elliptic_solution(chart, u0, 0.1, -1)


class TestMirror:
    def test_involutive(self):
        for case in CaseLabel:
            x = np.array([0.3, -0.2, 0.9])
            assert np.array_equal(mirror_state(mirror_state(x, case), case), x)

    def test_coordinates(self):
        x = np.array([0.3, -0.2, 0.9])
        assert mirror_state(x, CaseLabel.A).tolist() == [0.3, -0.2, -0.9]
        assert mirror_state(x, CaseLabel.B).tolist() == [-0.3, -0.2, 0.9]

    def test_same_integrals_other_component(self, case_state):
        case, delta, x = case_state
        chart, u0 = chart_from_state(x, delta)
        mirrored = mirror_state(x, case)
        assert conserved(mirrored, delta) == conserved(x, delta)
        other, w0 = chart_from_state(mirrored, delta)
        assert other.component == -chart.component
        assert other.amplitudes == pytest.approx(chart.amplitudes, rel=1e-12)
        assert normalize_phase(w0 + u0, chart.K) == pytest.approx(0.0, abs=1e-10)

    def test_mirrored_orbit_runs_backwards(self, case_state):
        case, delta, x = case_state
        orbit = Orbit.from_state(x, delta)
        stepped = mirror_state(hk_map(mirror_state(x, case), delta), case)
        assert stepped == pytest.approx(orbit.point(orbit.u0 - orbit.nu), abs=1e-9)


class TestTauPhase:
    def test_first_and_second(self):
        assert tau_phase(Component.PLUS, 0.4, 0.1) == (Component.MINUS, pytest.approx(-0.5))
        assert tau_phase(Component.MINUS, 0.4, 0.1, first=False) == (
            Component.PLUS,
            pytest.approx(-0.3),
        )

    def test_composition_shifts(self):
        s, u = tau_phase(Component.PLUS, 0.4, 0.15)
        s, u = tau_phase(s, u, 0.25, first=False)
        assert s is Component.PLUS
        assert u == pytest.approx(0.4 + 0.15 + 0.25)
