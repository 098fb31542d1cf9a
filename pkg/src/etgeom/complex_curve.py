"""The orbit curve as a complex torus.

phi(z) = v+(z) extends the real parametrization to the period parallelogram
[0, 4K) x [0, 4K'). The real slice Im z = 0 is the component v+, and the
slice Im z = 2K' carries v- through phi(2iK' - (u + 2K)) = v-(-u). On the
torus the involutions are reflections z -> 2iK' - (z + 2K) +- nu_i.
"""

import logging
import math

import numpy as np

from etgeom.curve import Component, curve_point, normalize_phase
from etgeom.dynamics import CaseLabel
from etgeom.elliptic import jacobi_complex
from etgeom.errors import OutOfRange
from etgeom.involution import Branch

logger = logging.getLogger(__name__)

SLICE_TOLERANCE = 1e-9


def _wrap(value, period):
    r = value - period * math.floor(value / period)
    return 0.0 if r >= period else r


def normalize_torus(z, periods):
    """Reduce z into [0, 4K) x [0, 4K')."""
    z = complex(z)
    return complex(_wrap(z.real, 4.0 * periods.K), _wrap(z.imag, 4.0 * periods.Kprime))


def phi(z, chart):
    """Complex point v+(z) of the chart's curve; the chart component is ignored."""
    sn, cn, dn = jacobi_complex(z, chart.k)
    p, q, r = chart.amplitudes
    if chart.case is CaseLabel.A:
        return np.array([p * cn, q * sn, r * dn])
    return np.array([p * dn, q * sn, r * cn])


def complex_involution(z, nu_i, branch, chart):
    """z -> 2iK' - (z + 2K) + nu_i (PLUS) or - nu_i (MINUS), normalized."""
    periods = chart.periods
    z = complex(z)
    shift = nu_i if Branch(branch) is Branch.PLUS else -nu_i
    image = complex(-z.real - 2.0 * periods.K + shift, 2.0 * periods.Kprime - z.imag)
    return normalize_torus(image, periods)


def slice_to_torus(component, u, periods):
    """Torus point of the real curve point (component, u)."""
    if Component(component) is Component.PLUS:
        return normalize_torus(complex(u, 0.0), periods)
    return normalize_torus(complex(u - 2.0 * periods.K, 2.0 * periods.Kprime), periods)


def torus_to_slice(z, periods):
    """Inverse of slice_to_torus; the phase is returned in [-2K, 2K]."""
    z = normalize_torus(z, periods)
    K, Kp = periods
    tol = SLICE_TOLERANCE * Kp
    y = z.imag
    if y <= tol or 4.0 * Kp - y <= tol:
        return Component.PLUS, normalize_phase(z.real, K)
    if abs(y - 2.0 * Kp) <= tol:
        return Component.MINUS, normalize_phase(z.real + 2.0 * K, K)
    raise OutOfRange(f"{z!r} does not lie on a real slice")


def coplanarity_det(zs, k):
    """Determinant of the rows (cn z_i, sn z_i, dn z_i, 1).

    Vanishes exactly when z1 + z2 + z3 + z4 is a period of (4K, 4iK').
    """
    if len(zs) != 4:
        raise ValueError(f"coplanarity needs four points, got {len(zs)}")
    rows = []
    for z in zs:
        sn, cn, dn = jacobi_complex(z, k)
        rows.append([cn, sn, dn, 1.0])
    return complex(np.linalg.det(np.array(rows, dtype=complex)))


def real_coplanarity(chart, u0, u0_tilde, nu_i):
    """Determinant of the homogeneous rows [x, 1] of four real curve points.

    The points are v+(u0), mirror v+(u0 + nu_i), mirror v+(u0~) and
    v+(u0~ + nu_i), with the mirrors taken on the opposite component. The
    two rulings they span lie on one pencil quadric and always meet, so the
    determinant is zero for every u0 and u0~.
    """
    plus = chart.with_component(Component.PLUS)
    minus = chart.with_component(Component.MINUS)
    points = [
        curve_point(plus, u0),
        curve_point(minus, -(u0 + nu_i)),
        curve_point(minus, -u0_tilde),
        curve_point(plus, u0_tilde + nu_i),
    ]
    rows = np.hstack([np.array(points), np.ones((4, 1))])
    return float(np.linalg.det(rows))
