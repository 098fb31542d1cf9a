"""Shared fixtures and random admissible initial conditions."""

import numpy as np
import pytest

from etgeom.curve import curve_modulus
from etgeom.dynamics import CaseLabel, Delta, TopContext
from etgeom.involution import clear_branch_cache

CANONICAL_DELTA = (-0.05, 0.05, -0.05)
# F2 < 1 at this state
CASE_B_STATE = (1.0, 0.5, 0.5)
# F2 > 1 at this state
CASE_A_STATE = (0.5, 0.5, 1.0)


def draw_admissible(rng, case=None, regime_sign=1, max_delta=0.2):
    """Random (delta, x0) away from the separatrix and from k near 0 or 1.

    The case boundary F2 = 1 is |d1| x3^2 = |d3| x1^2; draws whose ratio of
    the two sides is within 25% of one are rejected.
    """
    while True:
        mags = rng.uniform(0.01, max_delta, size=3)
        delta = Delta(*(regime_sign * np.array([-1.0, 1.0, -1.0]) * mags))
        x = rng.uniform(-1.5, 1.5, size=3)
        if np.min(np.abs(x)) < 0.1:
            continue
        ratio = mags[0] * x[2] ** 2 / (mags[2] * x[0] ** 2)
        if 0.8 < ratio < 1.25:
            continue
        ctx = TopContext.from_state(x, delta)
        if case is not None and ctx.case is not case:
            continue
        k2 = curve_modulus(ctx.conserved, ctx.case).k ** 2
        if not 0.05 <= k2 <= 0.95:
            continue
        return delta, x


@pytest.fixture
def canonical_delta():
    return Delta(*CANONICAL_DELTA)


@pytest.fixture(params=[CaseLabel.A, CaseLabel.B], ids=["caseA", "caseB"])
def case_state(request):
    """(case, delta, x0) for the canonical parameters in each case."""
    state = CASE_A_STATE if request.param is CaseLabel.A else CASE_B_STATE
    return request.param, Delta(*CANONICAL_DELTA), np.array(state)


@pytest.fixture(autouse=True)
def fresh_branch_cache():
    clear_branch_cache()
    yield
    clear_branch_cache()
