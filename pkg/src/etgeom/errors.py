"""Exception hierarchy for etgeom."""


class EulerTopError(Exception):
    """Base class for all errors raised by etgeom."""


class InvalidModulus(EulerTopError, ValueError):
    """Elliptic modulus outside [0, 1]."""


class DivergentPeriod(EulerTopError, ArithmeticError):
    """A quarter period (or an inverse value) is infinite."""


class OutOfRange(EulerTopError, ValueError):
    """Argument outside the documented domain."""


class PoleProximity(EulerTopError, ArithmeticError):
    """Complex argument too close to a pole of sn, cn, dn."""


class VanishingDenominator(EulerTopError, ZeroDivisionError):
    """The orbit hits the exceptional locus of the map."""


class RegimeViolation(EulerTopError, ValueError):
    """Step parameters or conserved quantities outside the admissible regime."""


class BoundaryCase(EulerTopError, ValueError):
    """F2 = 1, between the two curve cases."""


class AmbiguousPhase(EulerTopError, ValueError):
    """The orientation probe cannot tell the phase direction apart."""


class LambdaInfinite(EulerTopError, ArithmeticError):
    """Pencil parameter is infinite (the quadric is C3)."""


class LambdaOutOfRange(EulerTopError, ValueError):
    """Pencil parameter outside the range valid for the curve case."""


class PointOffQuadric(EulerTopError, ValueError):
    """Point does not lie on the quadric it is meant to be on."""


class ComplexRulings(EulerTopError, ValueError):
    """The quadric has no real rulings (ABCD < 0)."""


class TangentLine(EulerTopError, ArithmeticError):
    """Ruling is tangent to the cylinder; no second intersection."""


class DegenerateNu(EulerTopError, ValueError):
    """Involution parameter at 0 or +-2K, where the hyperboloid degenerates."""


class NegativeRadicand(EulerTopError, ValueError):
    """Square-root map evaluated outside its real domain."""
