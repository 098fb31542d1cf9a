"""The pencil of quadrics through the orbit curve.

Every member C1 + lam C3 contains the curve. A member is tied to a phase
shift nu_i by requiring that the segment from v+(u) to the mirrored point of
phase u + nu_i be one of its rulings; that fixes lam as a function of nu_i.
"""

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from etgeom.dynamics import CaseLabel, DiagonalQuadric, check_admissible, cylinders
from etgeom.elliptic import complete_K, jacobi_real
from etgeom.errors import LambdaInfinite, LambdaOutOfRange, OutOfRange

logger = logging.getLogger(__name__)

LAMBDA_TOLERANCE = 1e-12


class PencilKind(enum.Enum):
    HYPERBOLOID = "hyperboloid"
    CONE = "cone"
    CYLINDER_C1 = "cylinderC1"
    CYLINDER_C3 = "cylinderC3"


@dataclass(frozen=True)
class PencilQuadric:
    """A pencil member with its coefficients and the signed root s.

    s = sqrt(ABCD) signed by the regime of the step parameters: positive in
    the canonical regime and negative in the reversed one.
    """

    lam: float
    quadric: DiagonalQuadric
    s: float
    kind: PencilKind

    @property
    def coefficients(self):
        return self.quadric.as_tuple()


def cone_lambda(F):
    """The pencil parameter of the cone, -(1 - F1) / (1 - F3)."""
    return -(1.0 - F.F1) / (1.0 - F.F3)


def valid_lambda_range(F, case):
    lam_c = cone_lambda(F)
    if case is CaseLabel.A:
        return lam_c, math.inf
    return 0.0, lam_c


def lambda_from_nu(nu_i, F, case, k):
    """Pencil parameter whose rulings realize the phase shift nu_i.

    Case A: lam = -((1 - F1)/(1 - F3)) ns^2(nu_i/2)
    Case B: lam = -((1 - F1)/(1 - F3)) sn^2(nu_i/2)

    Even in nu_i.
    """
    check_admissible(F)
    K = complete_K(k)
    if not abs(nu_i) <= 2.0 * K * (1.0 + LAMBDA_TOLERANCE):
        raise OutOfRange(f"nu_i = {nu_i!r} lies outside [-2K, 2K] with K = {K!r}")
    sn = jacobi_real(0.5 * abs(nu_i), k).sn
    scale = cone_lambda(F)
    if case is CaseLabel.A:
        if nu_i == 0.0 or sn == 0.0:
            raise LambdaInfinite("nu_i = 0 corresponds to the cylinder C3 (lambda = inf)")
        return scale / (sn * sn)
    return scale * sn * sn


def pencil_quadric(lam, F, delta, case):
    """Coefficients, root and kind of the member C1 + lam C3."""
    check_admissible(F)
    delta.check_regime()
    F1, _, F3 = F
    if math.isinf(lam):
        if case is not CaseLabel.A or lam < 0:
            raise LambdaOutOfRange(f"lambda = {lam!r} is not admissible for case {case.value}")
        return PencilQuadric(math.inf, cylinders(F, delta)[2], 0.0, PencilKind.CYLINDER_C3)

    lam_c = cone_lambda(F)
    tol = LAMBDA_TOLERANCE * max(1.0, abs(lam_c))
    lo, hi = valid_lambda_range(F, case)
    if math.isnan(lam) or lam < lo - tol or lam > hi + tol:
        raise LambdaOutOfRange(
            f"lambda = {lam!r} outside [{lo!r}, {hi!r}] for case {case.value}"
        )

    c1, _, c3 = cylinders(F, delta)
    quadric = c1.combine(c3, lam)
    if abs(lam - lam_c) <= tol:
        kind = PencilKind.CONE
    elif abs(lam) <= tol:
        kind = PencilKind.CYLINDER_C1
    else:
        kind = PencilKind.HYPERBOLOID
    # ABCD with the positive product (d1 d2 d3)^2 factored out
    reduced = lam * (1.0 - lam * F3) * (-F1) * quadric.c0
    d1, d2, d3 = delta.triple
    s = delta.regime_sign * abs(d1 * d2 * d3) * math.sqrt(max(reduced, 0.0))
    logger.debug("pencil member lam=%.6g kind %s s=%.6g", lam, kind.value, s)
    return PencilQuadric(lam, quadric, s, kind)


def pencil_quadric_for_nu(nu_i, F, delta, case, k):
    """Member associated with the phase shift nu_i; C3 when lam is infinite."""
    try:
        lam = lambda_from_nu(nu_i, F, case, k)
    except LambdaInfinite:
        lam = math.inf
    return pencil_quadric(lam, F, delta, case)


def expected_sign_pattern(case):
    """Signs of (A, B, C, D) on the admissible range of each case."""
    if case is CaseLabel.A:
        return (-1, -1, 1, 1)
    return (-1, 1, 1, -1)


def sign_pattern(pq):
    return tuple(int(np.sign(c)) for c in pq.coefficients)


def tangency_residual(x, y, q):
    """Polarized form of the quadric q on (x, y).

    Zero exactly when the segment x-y lies on the quadric, given both
    endpoints are on it. A PencilQuadric is unwrapped to its quadric.
    """
    q = getattr(q, "quadric", q)
    return float(q.pairing(x, y))


def tangency_coefficients(lam, F, case):
    """Coefficients (c_cn, c_sn, c_dn, c_1) of the ruling condition.

    The condition reads
        c_cn cn u cn(u+v) + c_sn sn u sn(u+v) + c_dn dn u dn(u+v) + c_1 = 0
    and reduces at u = 0 to c_cn cn v + c_dn dn v + c_1 = 0.
    """
    F1, _, F3 = F
    d = -(1.0 - F1) - lam * (1.0 - F3)
    if case is CaseLabel.A:
        return (lam * (1.0 - F3), (1.0 - 1.0 / F3) + lam * (1.0 - F3), -(1.0 - F1), d)
    return ((1.0 - F1), (1.0 - F1) * (1.0 - lam * F3), -lam * (1.0 - F3), d)


def four_term_relation(coefficients, u, v, k):
    c_cn, c_sn, c_dn, c_1 = coefficients
    a = jacobi_real(u, k)
    b = jacobi_real(u + v, k)
    return c_cn * a.cn * b.cn + c_sn * a.sn * b.sn + c_dn * a.dn * b.dn + c_1


def reduced_relation(coefficients, v, k):
    c_cn, _, c_dn, c_1 = coefficients
    t = jacobi_real(v, k)
    return c_cn * t.cn + c_dn * t.dn + c_1
