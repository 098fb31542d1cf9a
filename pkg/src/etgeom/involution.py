"""Involutions built from rulings of the pencil quadrics.

Through a point x on a hyperboloid of the pencil pass two straight lines.
Following one of them to its second intersection with the cylinder C2 gives
an involution of the orbit curve. Composing two such involutions, with phase
shifts nu1 and nu2 = nu - nu1, reproduces one step of the discrete top.
"""

import enum
import logging
import math
import threading
from dataclasses import dataclass

import numpy as np

from etgeom.curve import (
    Component,
    chart_from_state,
    curve_modulus,
    curve_point,
    elliptic_time_step,
    mirror_state,
)
from etgeom.dynamics import CaseLabel, as_state, cylinders, hk_map
from etgeom.elliptic import complete_K
from etgeom.errors import (
    ComplexRulings,
    DegenerateNu,
    NegativeRadicand,
    OutOfRange,
    PointOffQuadric,
    TangentLine,
)
from etgeom.pencil import PencilKind, PencilQuadric, lambda_from_nu, pencil_quadric

logger = logging.getLogger(__name__)

ON_QUADRIC_TOLERANCE = 1e-9
TANGENT_TOLERANCE = 1e-13
DIRECTION_FLOOR = 1e-12
NU_TOLERANCE = 1e-9
CALIBRATION_WARNING = 1e-6


class Branch(enum.Enum):
    PLUS = 1
    MINUS = -1


class DeltaSign(enum.IntEnum):
    PLUS = 1
    MINUS = -1


class DegenerateKind(enum.Enum):
    NU0 = "nu0"
    NU_NU = "nuNu"
    NU_2K = "nu2K"
    NU_NU_MINUS_2K = "nuNuMinus2K"


@dataclass(frozen=True)
class RulingDirection:
    a: float
    b: float
    c: float

    def as_array(self):
        return np.array([self.a, self.b, self.c])


def _primary(x, A, B, C, root):
    x1, x2, x3 = x
    abc = A * B * C
    return np.array(
        [
            abc * x1 * x3 - root * B * x2,
            abc * x2 * x3 + root * A * x1,
            -A * B * (A * x1 * x1 + B * x2 * x2),
        ]
    )


def _first_alternate(x, A, B, C, root):
    x1, x2, x3 = x
    abc = A * B * C
    return np.array(
        [
            -B * C * (B * x2 * x2 + C * x3 * x3),
            abc * x1 * x2 - root * C * x3,
            abc * x1 * x3 + root * B * x2,
        ]
    )


def _second_alternate(x, A, B, C, root):
    x1, x2, x3 = x
    abc = A * B * C
    return np.array(
        [
            abc * x1 * x2 + root * C * x3,
            -A * C * (A * x1 * x1 + C * x3 * x3),
            abc * x2 * x3 - root * A * x1,
        ]
    )


_BUILDERS = {
    "primary": _primary,
    "first": _first_alternate,
    "second": _second_alternate,
}


def _signed_root(q, root):
    if root is not None:
        return float(root)
    abcd = q.c1 * q.c2 * q.c3 * q.c0
    scale = max(abs(q.c1), abs(q.c2), abs(q.c3), abs(q.c0)) ** 4
    if abcd < -DIRECTION_FLOOR * scale:
        raise ComplexRulings(f"ABCD = {abcd!r} < 0: the rulings are not real")
    return math.sqrt(max(abcd, 0.0))


def _check_on(x, q, name="quadric"):
    if not q.contains(x, ON_QUADRIC_TOLERANCE):
        raise PointOffQuadric(
            f"point {list(x)} is off the {name}: residual {float(q.evaluate(x))!r}"
        )


def raw_ruling_direction(x, q, sign, root=None, form="primary"):
    """Unnormalized ruling direction from one of the three equivalent formulas.

    ``sign`` selects d+ (+1) or d- (-1). The forms agree up to a positive or
    negative scale wherever they do not vanish.
    """
    x = as_state(x)
    r = _signed_root(q, root)
    return _BUILDERS[form](x, q.c1, q.c2, q.c3, sign * r)


def ruling_directions(x, q, root=None):
    """Unit directions (d+, d-) of the two rulings of q through x.

    With ``root`` given it replaces sqrt(ABCD), sign included, which is how
    the involutions pick their branch. When the primary formula vanishes at
    x the alternates take over.
    """
    x = as_state(x)
    _check_on(x, q)
    r = _signed_root(q, root)
    A, B, C = q.c1, q.c2, q.c3
    size = max(abs(A), abs(B), abs(C), abs(q.c0))
    reference = max(size ** 3 * float(np.dot(x, x)), 1e-300)
    directions = []
    for sign in (1, -1):
        for build in (_primary, _first_alternate, _second_alternate):
            d = build(x, A, B, C, sign * r)
            norm = float(np.linalg.norm(d))
            if norm > DIRECTION_FLOOR * reference:
                directions.append(RulingDirection(*(d / norm)))
                break
        else:
            raise TangentLine(f"no ruling direction can be formed at {list(x)}")
    return directions[0], directions[1]


def second_intersection(x, H, C, branch, root=None):
    """Follow a ruling of H through x to its second meeting with the cylinder C.

    C must have no x2 term. Returns the line parameter v and the point
    x + v d; v = 0 when the ruling touches C at x.
    """
    x = as_state(x)
    if C.c2 != 0.0:
        raise ValueError("the target cylinder must have no x2 term")
    _check_on(x, H, "hyperboloid")
    _check_on(x, C, "cylinder")
    d_plus, d_minus = ruling_directions(x, H, root)
    d = d_plus if branch is Branch.PLUS else d_minus
    alpha, beta = C.c1, C.c3
    num = alpha * d.a * x[0] + beta * d.c * x[2]
    if num == 0.0:
        return 0.0, x.copy()
    den = alpha * d.a * d.a + beta * d.c * d.c
    if abs(den) < TANGENT_TOLERANCE * (abs(alpha) + abs(beta)):
        raise TangentLine(f"ruling through {list(x)} is asymptotic to the cylinder")
    v = -2.0 * num / den
    return v, x + v * d.as_array()


def iota_generic(x, H, C, branch, root=None):
    return second_intersection(x, H, C, branch, root)[1]


@dataclass(frozen=True)
class InvolutionSpec:
    """One involution: phase shift nu_i, sign of the step parameters and its quadric."""

    nu_i: float
    delta_sign: DeltaSign
    lam: float
    H: PencilQuadric
    case: CaseLabel


def _check_generic_nu(nu_i, K):
    if abs(nu_i) <= NU_TOLERANCE * K or abs(abs(nu_i) - 2.0 * K) <= NU_TOLERANCE * K:
        raise DegenerateNu(
            f"nu_i = {nu_i!r} is 0 or +-2K; use degenerate_map for these values"
        )
    if abs(nu_i) > 2.0 * K:
        raise OutOfRange(f"nu_i = {nu_i!r} lies outside (-2K, 2K) with K = {K!r}")


def involution_spec(nu_i, delta_sign, ctx, k=None):
    F, case = ctx.conserved, ctx.case
    if k is None:
        k = curve_modulus(F, case).k
    K = complete_K(k)
    _check_generic_nu(nu_i, K)
    lam = lambda_from_nu(nu_i, F, case, k)
    H = pencil_quadric(lam, F, ctx.delta, case)
    if H.kind is not PencilKind.HYPERBOLOID:
        raise DegenerateNu(f"nu_i = {nu_i!r} gives a {H.kind.value}, not a hyperboloid")
    return InvolutionSpec(float(nu_i), DeltaSign(int(delta_sign)), lam, H, case)


def iota_dEt(x, spec, ctx):
    """The involution of the given spec: d+ with root s * delta_sign, onto C2."""
    c2 = cylinders(ctx.conserved, ctx.delta)[1]
    root = spec.H.s * int(spec.delta_sign)
    return iota_generic(x, spec.H.quadric, c2, Branch.PLUS, root=root)


def predicted_delta_signs(case, nu1, nu2):
    """Delta signs of the two slots that compose to the forward map.

    Case A: (sgn nu1, -sgn nu2); case B: (-sgn nu1, sgn nu2).
    """
    s1 = 1 if nu1 > 0 else -1
    s2 = 1 if nu2 > 0 else -1
    if case is CaseLabel.A:
        return DeltaSign(s1), DeltaSign(-s2)
    return DeltaSign(-s1), DeltaSign(s2)


_BRANCH_CACHE = {}
_BRANCH_LOCK = threading.Lock()


def clear_branch_cache():
    with _BRANCH_LOCK:
        _BRANCH_CACHE.clear()


def _branch_key(ctx, slot, nu_i):
    return (ctx.case, ctx.delta.regime, slot, nu_i > 0)


def _calibrate(x, nu1, nu2, ctx, k):
    """Pick the delta sign of each slot by matching the curve prediction.

    Slot 1 must send (s, u0) to (-s, -u0 - nu1), and slot 2 must then land
    on (s, u0 + nu).
    """
    chart, u0 = chart_from_state(x, ctx.delta)
    other = chart.with_component(Component(-int(chart.component)))
    targets = (curve_point(other, -u0 - nu1), curve_point(chart, u0 + nu1 + nu2))
    start = x
    chosen = []
    for slot, (nu_i, target) in enumerate(zip((nu1, nu2), targets), start=1):
        best = None
        for sign in (DeltaSign.PLUS, DeltaSign.MINUS):
            y = iota_dEt(start, involution_spec(nu_i, sign, ctx, k), ctx)
            err = float(np.linalg.norm(y - target))
            if best is None or err < best[0]:
                best = (err, sign, y)
        err, sign, start = best
        if err > CALIBRATION_WARNING:
            logger.warning("branch calibration for slot %d matched only to %.3e", slot, err)
        logger.debug("calibrated slot %d for nu_i=%.6g: delta sign %+d", slot, nu_i, int(sign))
        chosen.append(sign)
    return tuple(chosen)


def calibrated_delta_signs(x, nu1, ctx, nu=None, k=None):
    """Delta signs for the two slots, cached per case, regime, slot and sgn nu_i."""
    F, case = ctx.conserved, ctx.case
    if k is None:
        k = curve_modulus(F, case).k
    if nu is None:
        nu = elliptic_time_step(F, case, k)
    nu2 = nu - nu1
    keys = (_branch_key(ctx, 1, nu1), _branch_key(ctx, 2, nu2))
    with _BRANCH_LOCK:
        cached = tuple(_BRANCH_CACHE.get(key) for key in keys)
    if None not in cached:
        return cached
    signs = _calibrate(as_state(x), nu1, nu2, ctx, k)
    expected = predicted_delta_signs(case, nu1, nu2)
    if signs != expected:
        logger.warning("calibrated delta signs %s differ from %s", signs, expected)
    with _BRANCH_LOCK:
        for key, sign in zip(keys, signs):
            _BRANCH_CACHE.setdefault(key, sign)
        return tuple(_BRANCH_CACHE[key] for key in keys)


def involution_step(x, nu1, ctx, inverse=False):
    """Both stages of the factorized step: (iota_1(x), iota_2(iota_1(x))).

    With ``inverse`` the two delta signs are reversed, which composes to
    the inverse map.
    """
    x = as_state(x)
    F, case = ctx.conserved, ctx.case
    k = curve_modulus(F, case).k
    K = complete_K(k)
    nu = elliptic_time_step(F, case, k)
    nu2 = nu - nu1
    _check_generic_nu(nu1, K)
    _check_generic_nu(nu2, K)
    signs = calibrated_delta_signs(x, nu1, ctx, nu=nu, k=k)
    if inverse:
        signs = tuple(DeltaSign(-int(s)) for s in signs)
    first = involution_spec(nu1, signs[0], ctx, k)
    second = involution_spec(nu2, signs[1], ctx, k)
    mid = iota_dEt(x, first, ctx)
    return mid, iota_dEt(mid, second, ctx)


def compose_dEt(x, nu1, ctx, inverse=False):
    """One step of the discrete top written as two involutions."""
    return involution_step(x, nu1, ctx, inverse=inverse)[1]


def sqrt_map(x, delta):
    """A map whose square is one step of the discrete top.

    phi_i = (x_i + d_i x_j x_k) / (sqrt(1 - d_i d_j x_k^2) sqrt(1 - d_i d_k x_j^2))
    """
    x1, x2, x3 = as_state(x)
    d1, d2, d3 = delta.triple
    r12 = 1.0 - d1 * d2 * x3 * x3
    r13 = 1.0 - d1 * d3 * x2 * x2
    r23 = 1.0 - d2 * d3 * x1 * x1
    if min(r12, r13, r23) <= 0.0:
        raise NegativeRadicand(f"radicands {(r12, r13, r23)} are not all positive")
    return np.array(
        [
            (x1 + d1 * x2 * x3) / (math.sqrt(r13) * math.sqrt(r12)),
            (x2 + d2 * x1 * x3) / (math.sqrt(r23) * math.sqrt(r12)),
            (x3 + d3 * x1 * x2) / (math.sqrt(r23) * math.sqrt(r13)),
        ]
    )


def degenerate_map(x, which, case, delta_sign, delta):
    """Closed forms of the involution at nu_i in {0, nu, +-2K, nu - 2K}."""
    x = as_state(x)
    which = DegenerateKind(which)
    signed = delta if int(delta_sign) > 0 else -delta
    if which is DegenerateKind.NU0:
        return mirror_state(x, case)
    if which is DegenerateKind.NU_2K:
        return -x
    if which is DegenerateKind.NU_NU:
        if case is CaseLabel.A:
            return mirror_state(hk_map(x, signed), case)
        return mirror_state(hk_map(x, -signed), case)
    if case is CaseLabel.A:
        return -hk_map(x, -signed)
    return -hk_map(x, signed)


def half_step_involution(x, case, delta_sign, delta):
    """The involution at nu_i = nu/2 through the square-root map.

    Case A: mirror(sqrt_map(x, +-d)); case B: mirror(sqrt_map(x, -+d)).
    """
    signed = delta if int(delta_sign) > 0 else -delta
    if case is CaseLabel.B:
        signed = -signed
    return mirror_state(sqrt_map(x, signed), case)
