"""Elliptic parametrization of the invariant curve.

The orbit curve (intersection of the invariant cylinders) has two real
components. Each is parametrized by Jacobi functions of a phase u, and one
map step is the shift u -> u + nu on both components.

Case A:  v_s(u) = (a1 cn u, s a2 sn u, s a3 dn u)
Case B:  v_s(u) = (s b1 dn u, s b2 sn u, b3 cn u)

with s = +1 or -1 the component.
"""

import dataclasses
import enum
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from etgeom.dynamics import CaseLabel, TopContext, as_state, check_admissible, hk_map
from etgeom.elliptic import Modulus, QuarterPeriods, arcsn, jacobi_real, quarter_periods
from etgeom.errors import AmbiguousPhase, OutOfRange, RegimeViolation

logger = logging.getLogger(__name__)

# below this |sn| the phase comes from arcsn(|sn|); above it from cn/dn
SN_SWITCH = 0.7
PROBE_TOLERANCE = 1e-8
PROBE_WARNING = 1e-6


class Component(enum.IntEnum):
    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class CurveChart:
    """Signed amplitudes, modulus and periods of one orbit curve.

    ``amplitudes`` is (a1, a2, a3) in case A and (b1, b2, b3) in case B.
    ``component`` is the component the generating state lies on.
    """

    case: CaseLabel
    amplitudes: Tuple[float, float, float]
    modulus: Modulus
    periods: QuarterPeriods
    component: Component

    @property
    def k(self):
        return self.modulus.k

    @property
    def K(self):
        return self.periods.K

    @property
    def Kprime(self):
        return self.periods.Kprime

    def with_component(self, component):
        return dataclasses.replace(self, component=Component(component))


def curve_modulus(F, case):
    F1, _, F3 = check_admissible(F)
    if case is CaseLabel.A:
        k2 = (1.0 - 1.0 / F3) / (1.0 - F1)
    else:
        k2 = (1.0 - F1) / (1.0 - 1.0 / F3)
    if not 0.0 < k2 < 1.0:
        raise RegimeViolation(f"k^2 = {k2!r} is outside (0, 1) for case {case.value}")
    return Modulus.from_squared(k2)


def amplitudes_squared(F, delta, case):
    F1, _, F3 = check_admissible(F)
    d1, d2, d3 = delta.triple
    if case is CaseLabel.A:
        squares = (
            (1.0 - F3) / (d2 * d3),
            (1.0 - 1.0 / F3) / (d3 * d1),
            (1.0 - 1.0 / F1) / (d1 * d2),
        )
    else:
        squares = (
            (1.0 - F3) / (d2 * d3),
            (1.0 - F1) / (d1 * d3),
            (1.0 - 1.0 / F1) / (d1 * d2),
        )
    if min(squares) <= 0.0:
        raise RegimeViolation(f"squared amplitudes {squares} are not all positive")
    return squares


def elliptic_time_step(F, case, k):
    """Phase shift nu of one map step, in (0, 2K).

    Fixed by cn^2(nu/2) = F1, dn^2(nu/2) = 1/F3 in case A, and by
    cn^2(nu/2) = 1/F3, dn^2(nu/2) = F1 in case B.
    """
    F1, _, F3 = check_admissible(F)
    if case is CaseLabel.A:
        s = math.sqrt(1.0 - F1)
    else:
        s = math.sqrt(1.0 - 1.0 / F3)
    return 2.0 * arcsn(min(s, 1.0), float(k))


def curve_point(chart, u):
    sn, cn, dn = jacobi_real(u, chart.k)
    p, q, r = chart.amplitudes
    s = int(chart.component)
    if chart.case is CaseLabel.A:
        return np.array([p * cn, s * q * sn, s * r * dn])
    return np.array([s * p * dn, s * q * sn, r * cn])


def curve_points(chart, phases):
    return np.array([curve_point(chart, u) for u in phases])


def normalize_phase(u, K):
    """Reduce a phase into [-2K, 2K]."""
    period = 4.0 * K
    return u - period * round(u / period)


def mirror_state(x, case):
    """Swap the two curve components: flip x3 in case A, x1 in case B."""
    x = np.array(as_state(x))
    if case is CaseLabel.A:
        x[2] = -x[2]
    else:
        x[0] = -x[0]
    return x


def tau_phase(component, u, nu_i, first=True):
    """Phase action of an involution restricted to the curve.

    The first slot maps (s, u) to (-s, -u - nu_i), the second slot to
    (-s, -u + nu_i).
    """
    shifted = -u - nu_i if first else -u + nu_i
    return Component(-int(component)), shifted


def recover_phase(x, chart):
    """Phase u in [-2K, 2K] of a point on the chart's component."""
    x1, x2, x3 = as_state(x)
    p, q, r = chart.amplitudes
    s = int(chart.component)
    cn = x1 / p if chart.case is CaseLabel.A else x3 / r
    sn = x2 / (s * q)
    cn = min(max(cn, -1.0), 1.0)
    sn = min(max(sn, -1.0), 1.0)
    k = chart.k
    K = chart.K
    abs_sn = abs(sn)
    if abs_sn <= SN_SWITCH:
        base = arcsn(abs_sn, k)
    else:
        dn = math.sqrt((1.0 - k * abs_sn) * (1.0 + k * abs_sn))
        base = K - arcsn(min(abs(cn) / dn, 1.0), k)
    if cn < 0.0:
        base = 2.0 * K - base
    return base if sn >= 0.0 else -base


def _phase_gap(a, b, K):
    return abs(normalize_phase(a - b, K))


def chart_from_state(x, delta):
    """Chart of the orbit curve through x, and the phase u0 of x on it.

    The signs of the amplitudes a1, a3 (case A) or b1, b3 (case B) and the
    component follow the signs of x. The sign of the middle amplitude is
    fixed by a one-step probe so that the map advances the phase by +nu.
    """
    x = as_state(x)
    ctx = TopContext.from_state(x, delta)
    F, case = ctx.conserved, ctx.case
    modulus = curve_modulus(F, case)
    periods = quarter_periods(modulus.k)
    mags = [math.sqrt(v) for v in amplitudes_squared(F, delta, case)]
    if case is CaseLabel.A:
        amps = (mags[0] if x[0] >= 0.0 else -mags[0], mags[1], mags[2])
        component = Component.PLUS if x[2] >= 0.0 else Component.MINUS
    else:
        amps = (mags[0], mags[1], mags[2] if x[2] >= 0.0 else -mags[2])
        component = Component.PLUS if x[0] >= 0.0 else Component.MINUS
    chart = CurveChart(case, amps, modulus, periods, component)

    nu = elliptic_time_step(F, case, modulus.k)
    u0 = recover_phase(x, chart)
    u1 = recover_phase(hk_map(x, delta), chart)
    step = u1 - u0
    err_plus = _phase_gap(step, nu, periods.K)
    err_minus = _phase_gap(step, -nu, periods.K)
    if abs(err_plus - err_minus) < PROBE_TOLERANCE:
        raise AmbiguousPhase(
            f"cannot orient the phase: step {step!r} is equidistant from +nu and -nu"
        )
    if min(err_plus, err_minus) > PROBE_WARNING:
        logger.warning("phase probe mismatch %.3e exceeds %.1e", min(err_plus, err_minus), PROBE_WARNING)
    if err_minus < err_plus:
        chart = dataclasses.replace(chart, amplitudes=(amps[0], -amps[1], amps[2]))
        u0 = recover_phase(x, chart)
    logger.debug(
        "chart case %s k=%.6g K=%.6g amplitudes=%s component %+d u0=%.6g",
        case.value,
        modulus.k,
        periods.K,
        chart.amplitudes,
        int(chart.component),
        u0,
    )
    return chart, u0


def elliptic_solution(chart, u0, nu, n):
    """Closed-form orbit v(u0 + m nu) for m = 0..n."""
    if n < 0:
        raise OutOfRange(f"number of steps must be non-negative, got {n!r}")
    return curve_points(chart, [u0 + m * nu for m in range(n + 1)])


@dataclass(frozen=True)
class Orbit:
    """Everything derived from one initial state: context, chart, u0 and nu."""

    context: TopContext
    chart: CurveChart
    u0: float
    nu: float

    @classmethod
    def from_state(cls, x, delta):
        chart, u0 = chart_from_state(x, delta)
        ctx = TopContext.from_state(x, delta)
        nu = elliptic_time_step(ctx.conserved, ctx.case, chart.k)
        return cls(ctx, chart, u0, nu)

    @property
    def case(self):
        return self.context.case

    @property
    def K(self):
        return self.chart.K

    @property
    def k(self):
        return self.chart.k

    def point(self, u, component=None):
        chart = self.chart if component is None else self.chart.with_component(component)
        return curve_point(chart, u)

    def solution(self, n):
        return elliptic_solution(self.chart, self.u0, self.nu, n)
