"""The Hirota-Kimura discretization of the Euler top.

One step is the birational map obtained from the implicit scheme

    x~1 - x1 = d1 (x~2 x3 + x2 x~3)   (and cyclically)

solved for x~. The map preserves three ratios F1, F2, F3 with product one,
and each orbit lies on three elliptic cylinders built from them.
"""

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Tuple

import numpy as np

from etgeom.errors import BoundaryCase, RegimeViolation, VanishingDenominator

logger = logging.getLogger(__name__)

DENOMINATOR_TOLERANCE = 1e-13
BOUNDARY_TOLERANCE = 1e-10


class Regime(enum.Enum):
    CANONICAL = "-+-"
    REVERSED = "+-+"
    MIXED = "mixed"


class CaseLabel(enum.Enum):
    """Which of the two admissible orbit families a state belongs to.

    Case A has F2 > 1, case B has F2 < 1. F2 = 1 is the separatrix.
    """

    A = "A"
    B = "B"


@dataclass(frozen=True)
class Delta:
    """Step parameters (d1, d2, d3), d_i = eps * alpha_i / 2."""

    d1: float
    d2: float
    d3: float
    eps: Optional[float] = field(default=None, compare=False)
    alpha: Optional[Tuple[float, float, float]] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("d1", "d2", "d3"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_eps_alpha(cls, eps, alpha):
        a1, a2, a3 = (float(a) for a in alpha)
        eps = float(eps)
        return cls(eps * a1 / 2, eps * a2 / 2, eps * a3 / 2, eps=eps, alpha=(a1, a2, a3))

    @classmethod
    def from_sequence(cls, values):
        values = tuple(values)
        if len(values) != 3:
            raise ValueError(f"delta needs three components, got {values!r}")
        return cls(*values)

    @property
    def triple(self):
        return (self.d1, self.d2, self.d3)

    def as_array(self):
        return np.array(self.triple)

    def __neg__(self):
        eps = None if self.eps is None else -self.eps
        return Delta(-self.d1, -self.d2, -self.d3, eps=eps, alpha=self.alpha)

    @property
    def regime(self):
        signs = tuple(int(np.sign(d)) for d in self.triple)
        if signs == (-1, 1, -1):
            return Regime.CANONICAL
        if signs == (1, -1, 1):
            return Regime.REVERSED
        return Regime.MIXED

    @property
    def regime_sign(self):
        """+1 for the canonical pattern (-,+,-), -1 for the reversed one."""
        regime = self.check_regime()
        return 1 if regime is Regime.CANONICAL else -1

    def check_regime(self):
        regime = self.regime
        if regime is Regime.MIXED:
            raise RegimeViolation(
                f"delta must have sign pattern (-,+,-) or (+,-,+), got {self.triple}"
            )
        return regime


class ConservedTriple(NamedTuple):
    F1: float
    F2: float
    F3: float


@dataclass(frozen=True)
class DiagonalQuadric:
    """The quadric c1 x1^2 + c2 x2^2 + c3 x3^2 + c0 = 0."""

    c1: float
    c2: float
    c3: float
    c0: float

    def __post_init__(self):
        if self.c1 == 0.0 and self.c2 == 0.0 and self.c3 == 0.0:
            raise ValueError("a quadric needs at least one non-zero quadratic coefficient")

    @property
    def quadratic(self):
        return np.array([self.c1, self.c2, self.c3])

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        return np.sum(self.quadratic * x * x, axis=-1) + self.c0

    def pairing(self, x, y):
        """Polarized form c1 x1 y1 + c2 x2 y2 + c3 x3 y3 + c0."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return np.sum(self.quadratic * x * y, axis=-1) + self.c0

    def scale(self, x):
        """Magnitude of the individual terms at x, for relative residuals."""
        x = np.asarray(x, dtype=float)
        return float(np.sum(np.abs(self.quadratic) * x * x) + abs(self.c0))

    def contains(self, x, tol):
        return abs(float(self.evaluate(x))) <= tol * max(self.scale(x), 1e-300)

    def combine(self, other, lam):
        """The pencil member self + lam * other."""
        return DiagonalQuadric(
            self.c1 + lam * other.c1,
            self.c2 + lam * other.c2,
            self.c3 + lam * other.c3,
            self.c0 + lam * other.c0,
        )

    def as_tuple(self):
        return (self.c1, self.c2, self.c3, self.c0)


def as_state(x):
    """Validate a phase-space point and return it as a float array of shape (3,)."""
    arr = np.asarray(x, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"state must have three components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"state must be finite, got {arr.tolist()}")
    return arr


def hk_map(x, delta):
    """One step of the discrete Euler top, x -> x~."""
    x1, x2, x3 = as_state(x)
    d1, d2, d3 = delta.triple
    p23 = d2 * d3 * x1 * x1
    p13 = d1 * d3 * x2 * x2
    p12 = d1 * d2 * x3 * x3
    den = 1.0 - p23 - p13 - p12 - 2.0 * d1 * d2 * d3 * x1 * x2 * x3
    if abs(den) < DENOMINATOR_TOLERANCE:
        raise VanishingDenominator(f"map denominator {den!r} vanishes at {[x1, x2, x3]}")
    return (
        np.array(
            [
                x1 + 2.0 * d1 * x2 * x3 + x1 * (-p23 + p13 + p12),
                x2 + 2.0 * d2 * x1 * x3 + x2 * (p23 - p13 + p12),
                x3 + 2.0 * d3 * x1 * x2 + x3 * (p23 + p13 - p12),
            ]
        )
        / den
    )


def hk_inverse(x, delta):
    """Inverse step. The scheme is reversible: f^-1(x, d) = f(x, -d)."""
    return hk_map(x, -delta)


def hk_residual(x, x_next, delta):
    """Residuals of the implicit scheme for a pair (x, x~)."""
    x1, x2, x3 = as_state(x)
    y1, y2, y3 = as_state(x_next)
    d1, d2, d3 = delta.triple
    return np.array(
        [
            y1 - x1 - d1 * (y2 * x3 + x2 * y3),
            y2 - x2 - d2 * (y3 * x1 + x3 * y1),
            y3 - x3 - d3 * (y1 * x2 + x1 * y2),
        ]
    )


def euler_top_field(x, alpha):
    """Continuous Euler top vector field (a1 x2 x3, a2 x3 x1, a3 x1 x2)."""
    x1, x2, x3 = as_state(x)
    a1, a2, a3 = alpha
    return np.array([a1 * x2 * x3, a2 * x3 * x1, a3 * x1 * x2])


def conserved(x, delta):
    x1, x2, x3 = as_state(x)
    d1, d2, d3 = delta.triple
    n1 = 1.0 - d3 * d1 * x2 * x2
    n2 = 1.0 - d1 * d2 * x3 * x3
    n3 = 1.0 - d2 * d3 * x1 * x1
    for value in (n1, n2, n3):
        if abs(value) < DENOMINATOR_TOLERANCE:
            raise VanishingDenominator(f"conserved quantity denominator {value!r} vanishes")
    return ConservedTriple(n1 / n2, n2 / n3, n3 / n1)


def check_admissible(F):
    """Require F1 in (0, 1) and F3 > 1, the range in which the orbit is a real curve."""
    if not (0.0 < F.F1 < 1.0 and F.F3 > 1.0):
        raise RegimeViolation(
            f"conserved quantities outside the admissible range: F1={F.F1!r}, F3={F.F3!r}"
        )
    return F


def classify_case(F):
    if abs(F.F2 - 1.0) <= BOUNDARY_TOLERANCE:
        raise BoundaryCase(f"F2 = {F.F2!r} is on the separatrix F2 = 1")
    return CaseLabel.A if F.F2 > 1.0 else CaseLabel.B


def cylinders(F, delta):
    """The three invariant cylinders (C1, C2, C3).

    C1 has no x1 term, C2 no x2 term, C3 no x3 term. They are linearly
    dependent: C2 = -(1/F1) C1 - F2 C3.
    """
    check_admissible(F)
    d1, d2, d3 = delta.triple
    F1, F2, F3 = F
    c1 = DiagonalQuadric(0.0, d1 * d3, -F1 * d1 * d2, -(1.0 - F1))
    c2 = DiagonalQuadric(-F2 * d2 * d3, 0.0, d1 * d2, -(1.0 - F2))
    c3 = DiagonalQuadric(d2 * d3, -F3 * d1 * d3, 0.0, -(1.0 - F3))
    return c1, c2, c3


@dataclass(frozen=True)
class TopContext:
    """The data fixed along one orbit: step parameters, integrals and case."""

    delta: Delta
    conserved: ConservedTriple
    case: CaseLabel

    @classmethod
    def from_state(cls, x, delta):
        delta.check_regime()
        F = check_admissible(conserved(x, delta))
        case = classify_case(F)
        logger.debug("orbit through %s: F=%s case %s", list(as_state(x)), tuple(F), case.value)
        return cls(delta, F, case)

    def quadrics(self):
        return cylinders(self.conserved, self.delta)


def iterate(x, delta, steps):
    """Orbit x, f(x), ..., f^steps(x) as an array of shape (steps + 1, 3)."""
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps!r}")
    states = [as_state(x)]
    for _ in range(steps):
        states.append(hk_map(states[-1], delta))
    return np.array(states)
