"""Invariant suites behind ``etg verify``.

Each suite evaluates one family of identities along the configured orbit and
reports the largest error it saw against its tolerance.
"""

import logging
from dataclasses import dataclass

import numpy as np

from etgeom.complex_curve import real_coplanarity
from etgeom.curve import Orbit
from etgeom.dynamics import CaseLabel, Delta, conserved, hk_map, iterate
from etgeom.involution import (
    DegenerateKind,
    DeltaSign,
    compose_dEt,
    degenerate_map,
    involution_spec,
    iota_dEt,
    sqrt_map,
    predicted_delta_signs,
)
from etgeom.pencil import expected_sign_pattern, lambda_from_nu, pencil_quadric, sign_pattern

logger = logging.getLogger(__name__)

SUITES = (
    "conservation",
    "involutivity",
    "composition",
    "coplanarity",
    "signs",
    "square_root",
    "degenerate",
)
HORIZON = 100
SAMPLES = 20
# fraction of K kept clear of the degenerate shifts 0 and +-2K
NU_MARGIN = 0.05


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_error: float
    tolerance: float
    samples: int

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "samples": self.samples,
        }


def _relative(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.max(np.abs(a - b)) / max(1.0, float(np.max(np.abs(b)))))


def generic_shifts(orbit, count=SAMPLES):
    """Shifts nu_i spread over (-2K, 2K), clear of 0 and +-2K."""
    K = orbit.K
    m = NU_MARGIN * K
    positive = np.linspace(m, 2.0 * K - m, count // 2)
    return np.concatenate([-positive[::-1], positive])


def split_shifts(orbit, count=SAMPLES):
    """Values of nu1 for which nu1 and nu - nu1 are both generic."""
    K = orbit.K
    nu = orbit.nu
    m = NU_MARGIN * K
    candidates = np.linspace(nu - 2.0 * K + m, 2.0 * K - m, 4 * count)
    good = [v for v in candidates if abs(v) > m and abs(nu - v) > m]
    idx = np.linspace(0, len(good) - 1, min(count, len(good))).round().astype(int)
    return [good[i] for i in idx]


def _sample_states(delta, x0, n=5):
    return iterate(x0, delta, n)


def check_conservation(orbit, delta, x0, rng):
    F0 = np.array(orbit.context.conserved)
    states = iterate(x0, delta, HORIZON)
    errors = [float(np.max(np.abs(np.array(conserved(x, delta)) - F0))) for x in states]
    return max(errors), len(states)


def check_involutivity(orbit, delta, x0, rng):
    ctx = orbit.context
    worst = 0.0
    count = 0
    for x in _sample_states(delta, x0):
        for nu_i in generic_shifts(orbit):
            for sign in (DeltaSign.PLUS, DeltaSign.MINUS):
                spec = involution_spec(nu_i, sign, ctx, orbit.k)
                y = iota_dEt(iota_dEt(x, spec, ctx), spec, ctx)
                worst = max(worst, _relative(y, x))
                count += 1
        for kind in DegenerateKind:
            for sign in (DeltaSign.PLUS, DeltaSign.MINUS):
                y = degenerate_map(x, kind, ctx.case, sign, delta)
                worst = max(worst, _relative(degenerate_map(y, kind, ctx.case, sign, delta), x))
                count += 1
    return worst, count


def check_composition(orbit, delta, x0, rng):
    ctx = orbit.context
    worst = 0.0
    count = 0
    expected = hk_map(x0, delta)
    for nu1 in split_shifts(orbit):
        worst = max(worst, _relative(compose_dEt(x0, nu1, ctx), expected))
        worst = max(worst, _relative(compose_dEt(expected, nu1, ctx, inverse=True), x0))
        count += 2
    states = iterate(x0, delta, HORIZON // 2)
    closed = orbit.solution(HORIZON // 2)
    worst = max(worst, _relative(closed, states))
    return worst, count + len(states)


def check_coplanarity(orbit, delta, x0, rng):
    K = orbit.K
    worst = 0.0
    shifts = generic_shifts(orbit)
    for nu_i in shifts:
        u0, u0_tilde = rng.uniform(-2.0 * K, 2.0 * K, size=2)
        worst = max(worst, abs(real_coplanarity(orbit.chart, u0, u0_tilde, nu_i)))
    return worst, len(shifts)


def check_signs(orbit, delta, x0, rng):
    ctx = orbit.context
    expected = expected_sign_pattern(ctx.case)
    violations = 0
    shifts = generic_shifts(orbit)
    for nu_i in shifts:
        lam = lambda_from_nu(nu_i, ctx.conserved, ctx.case, orbit.k)
        pq = pencil_quadric(lam, ctx.conserved, delta, ctx.case)
        a, b, c, d = pq.coefficients
        if sign_pattern(pq) != expected or a * b * c * d < 0.0:
            violations += 1
    return float(violations), len(shifts)


def check_square_root(orbit, delta, x0, rng):
    ctx = orbit.context
    worst = 0.0
    count = 0
    half = orbit.nu / 2.0
    signs = predicted_delta_signs(ctx.case, half, half)
    for x in _sample_states(delta, x0):
        worst = max(worst, _relative(sqrt_map(sqrt_map(x, delta), delta), hk_map(x, delta)))
        via_involutions = iota_dEt(
            iota_dEt(x, involution_spec(half, signs[0], ctx, orbit.k), ctx),
            involution_spec(half, signs[1], ctx, orbit.k),
            ctx,
        )
        worst = max(worst, _relative(via_involutions, hk_map(x, delta)))
        count += 2
    return worst, count


def check_degenerate(orbit, delta, x0, rng):
    ctx = orbit.context
    case = ctx.case
    # sign choices under which the closed forms compose to the forward map
    outer = DeltaSign.MINUS if case is CaseLabel.A else DeltaSign.PLUS
    worst = 0.0
    count = 0
    for x in _sample_states(delta, x0):
        expected = hk_map(x, delta)
        first = degenerate_map(
            degenerate_map(x, DegenerateKind.NU0, case, DeltaSign.PLUS, delta),
            DegenerateKind.NU_NU,
            case,
            outer,
            delta,
        )
        second = degenerate_map(
            degenerate_map(x, DegenerateKind.NU_NU_MINUS_2K, case, outer, delta),
            DegenerateKind.NU_2K,
            case,
            DeltaSign.PLUS,
            delta,
        )
        worst = max(worst, _relative(first, expected), _relative(second, expected))
        count += 2
    return worst, count


_CHECKS = {
    "conservation": check_conservation,
    "involutivity": check_involutivity,
    "composition": check_composition,
    "coplanarity": check_coplanarity,
    "signs": check_signs,
    "square_root": check_square_root,
    "degenerate": check_degenerate,
}


def run_suites(config, suites=SUITES):
    """Run the named suites on the configured orbit."""
    delta = Delta.from_sequence(config.delta)
    x0 = np.array(config.x0, dtype=float)
    orbit = Orbit.from_state(x0, delta)
    seed = 0 if config.seed is None else config.seed
    results = []
    for name in suites:
        rng = np.random.default_rng(seed)
        max_error, samples = _CHECKS[name](orbit, delta, x0, rng)
        tolerance = config.tolerance(name)
        if name == "signs":
            passed = max_error == 0.0
        else:
            passed = max_error <= tolerance
        logger.debug("suite %s: max error %.3e tol %.1e", name, max_error, tolerance)
        results.append(SuiteResult(name, passed, max_error, tolerance, samples))
    return orbit, results


def report_document(config, orbit, results):
    return {
        "case": orbit.case.value,
        "delta": list(config.delta),
        "x0": list(config.x0),
        "nu": orbit.nu,
        "passed": all(r.passed for r in results),
        "suites": [r.to_dict() for r in results],
    }
