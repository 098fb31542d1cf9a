"""Jacobi elliptic functions and elliptic integrals of the first kind.

Real arguments are evaluated with the arithmetic-geometric mean and the
descending Landen transformation. Complex arguments are assembled from two
real evaluations, one with modulus k and one with the complementary modulus
k', through Jacobi's imaginary transformation and the addition theorem.
Inverse values go through Carlson's symmetric integral R_F.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from etgeom.errors import DivergentPeriod, InvalidModulus, OutOfRange, PoleProximity

logger = logging.getLogger(__name__)

AGM_TOLERANCE = 1e-15
AGM_MAX_ITER = 64
RF_TOLERANCE = 1e-3
RF_MAX_ITER = 64
POLE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus k in [0, 1].

    The complementary modulus k' = sqrt(1 - k^2) is derived on access so the
    two can never disagree.
    """

    k: float

    def __post_init__(self):
        object.__setattr__(self, "k", _check_modulus(self.k))

    @classmethod
    def from_squared(cls, k2):
        """Build a modulus from k^2, taking the positive root."""
        k2 = float(k2)
        if not 0.0 <= k2 <= 1.0:
            raise InvalidModulus(f"k^2 must be in [0, 1], got {k2!r}")
        return cls(math.sqrt(k2))

    @property
    def kprime(self):
        return _complementary(self.k)

    def __float__(self):
        return self.k


class JacobiTriple(NamedTuple):
    sn: Union[float, complex]
    cn: Union[float, complex]
    dn: Union[float, complex]


class QuarterPeriods(NamedTuple):
    K: float
    Kprime: float


def _check_modulus(k):
    k = float(k)
    if not 0.0 <= k <= 1.0:
        raise InvalidModulus(f"modulus k must be in [0, 1], got {k!r}")
    return k


def _complementary(k):
    return math.sqrt((1.0 - k) * (1.0 + k))


def agm(a, b):
    """Arithmetic-geometric mean of two non-negative numbers."""
    for _ in range(AGM_MAX_ITER):
        if abs(a - b) <= AGM_TOLERANCE * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return a


def complete_K(k):
    """Complete elliptic integral of the first kind, K(k) = pi / (2 AGM(1, k'))."""
    k = _check_modulus(k)
    if k == 1.0:
        raise DivergentPeriod("complete elliptic integral K(k) diverges at k = 1")
    return math.pi / (2.0 * agm(1.0, _complementary(k)))


def quarter_periods(k):
    """Real and imaginary quarter periods (K(k), K(k'))."""
    k = _check_modulus(k)
    if k == 0.0 or k == 1.0:
        raise DivergentPeriod(f"one quarter period is infinite for k = {k!r}")
    return QuarterPeriods(complete_K(k), complete_K(_complementary(k)))


def carlson_rf(x, y, z):
    """Carlson's symmetric elliptic integral of the first kind R_F(x, y, z).

    Duplication until the arguments agree to RF_TOLERANCE, then the
    seventh-order series in the elementary symmetric functions E2, E3.
    """
    if min(x, y, z) < 0.0 or (x == 0.0) + (y == 0.0) + (z == 0.0) > 1:
        raise OutOfRange(
            f"R_F needs non-negative arguments with at most one zero, got {(x, y, z)!r}"
        )
    for _ in range(RF_MAX_ITER):
        mu = (x + y + z) / 3.0
        dx, dy, dz = 1.0 - x / mu, 1.0 - y / mu, 1.0 - z / mu
        if max(abs(dx), abs(dy), abs(dz)) < RF_TOLERANCE:
            break
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
    e2 = dx * dy + dy * dz + dz * dx
    e3 = dx * dy * dz
    series = (
        1.0
        - e2 / 10.0
        + e3 / 14.0
        + e2 * e2 / 24.0
        - 3.0 * e2 * e3 / 44.0
        - 5.0 * e2 ** 3 / 208.0
        + 3.0 * e3 * e3 / 104.0
        + e2 * e2 * e3 / 16.0
    )
    return series / math.sqrt(mu)


def _landen_amplitude(u, k):
    # DLMF 22.20(ii): descend the AGM table, then climb back to the amplitude.
    a = [1.0]
    c = [k]
    b = _complementary(k)
    while abs(c[-1]) > AGM_TOLERANCE * a[-1] and len(a) < AGM_MAX_ITER:
        an = a[-1]
        a.append(0.5 * (an + b))
        c.append(0.5 * (an - b))
        b = math.sqrt(an * b)
    n = len(a) - 1
    phi = (2.0 ** n) * a[n] * u
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(c[j] / a[j] * math.sin(phi)))
    return phi


def jacobi_real(u, k):
    """Jacobi elliptic functions (sn, cn, dn) for real u.

    The argument is reduced modulo 4K and folded into [0, K] using the parity
    and reflection symmetries, so sn(-u) = -sn(u) holds exactly.
    """
    k = _check_modulus(k)
    u = float(u)
    if not math.isfinite(u):
        raise OutOfRange(f"argument must be finite, got {u!r}")
    if k == 1.0:
        sech = 1.0 / math.cosh(u)
        return JacobiTriple(math.tanh(u), sech, sech)

    K = complete_K(k)
    sign = 1.0 if u >= 0.0 else -1.0
    v = math.fmod(abs(u), 4.0 * K)
    if v > 2.0 * K:
        v = 4.0 * K - v
        sign = -sign
    reflect = v > K
    if reflect:
        v = 2.0 * K - v

    phi = _landen_amplitude(v, k)
    sn = math.sin(phi)
    cn = math.cos(phi)
    dn = math.sqrt((1.0 - k * sn) * (1.0 + k * sn))
    if reflect:
        cn = -cn
    return JacobiTriple(sign * sn, cn, dn)


def ns(u, k):
    """1 / sn(u); infinite at the zeros of sn."""
    sn = jacobi_real(u, k).sn
    if sn == 0.0:
        return math.inf
    return 1.0 / sn


def jacobi_add(first, second, k):
    """Addition theorem: the triple at u + v from the triples at u and v.

    Works for real and complex triples alike.
    """
    k = _check_modulus(k)
    s1, c1, d1 = first
    s2, c2, d2 = second
    m = k * k
    den = 1.0 - m * s1 * s1 * s2 * s2
    if den == 0:
        raise PoleProximity("addition theorem denominator vanishes")
    return JacobiTriple(
        (s1 * c2 * d2 + s2 * c1 * d1) / den,
        (c1 * c2 - s1 * s2 * d1 * d2) / den,
        (d1 * d2 - m * s1 * s2 * c1 * c2) / den,
    )


def jacobi_complex(z, k):
    """Jacobi elliptic functions at a complex argument z = x + iy.

    Combines the real triple at x (modulus k) with the real triple at y
    (modulus k'). This is the addition theorem applied to x and iy after the
    imaginary transformation, with the common denominator cleared.
    """
    k = _check_modulus(k)
    if not 0.0 < k < 1.0:
        raise InvalidModulus(f"complex evaluation needs 0 < k < 1, got {k!r}")
    z = complex(z)
    x, y = z.real, z.imag
    if not (math.isfinite(x) and math.isfinite(y)):
        raise OutOfRange(f"argument must be finite, got {z!r}")

    K, Kp = quarter_periods(k)
    # poles sit at 2mK + (2n+1)iK'
    px = x / (2.0 * K)
    py = (y - Kp) / (2.0 * Kp)
    if math.hypot(px - round(px), py - round(py)) < POLE_TOLERANCE:
        raise PoleProximity(f"argument {z!r} is within {POLE_TOLERANCE} of a pole")

    s, c, d = jacobi_real(x, k)
    s1, c1, d1 = jacobi_real(y, _complementary(k))
    m = k * k
    den = c1 * c1 + m * s * s * s1 * s1
    return JacobiTriple(
        complex(s * d1, c * d * s1 * c1) / den,
        complex(c * c1, -s * d * s1 * d1) / den,
        complex(d * c1 * d1, -m * s * c * s1) / den,
    )


def arcsn(s, k):
    """Inverse of sn on [0, K]: u = s R_F(1 - s^2, 1 - k^2 s^2, 1)."""
    k = _check_modulus(k)
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise OutOfRange(f"arcsn argument must be in [0, 1], got {s!r}")
    if s == 0.0:
        return 0.0
    if s == 1.0 and k == 1.0:
        raise DivergentPeriod("arcsn(1) diverges at k = 1")
    return s * carlson_rf((1.0 - s) * (1.0 + s), (1.0 - k * s) * (1.0 + k * s), 1.0)
