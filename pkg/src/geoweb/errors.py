"""Exception types shared across the package.

Every numerical guard in the library raises one of these instead of
returning NaN, so grid sweeps can count and skip bad points explicitly.
"""


class GeowebError(Exception):
    """Base class for all errors raised by this package."""


class ExprSyntaxError(GeowebError):
    """Raised by the expression parser; carries the byte offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EvalDomainError(GeowebError):
    """An expression was evaluated outside its smooth real domain."""


class DivisionByZeroJet(GeowebError):
    """Jet division by a jet whose constant term is (numerically) zero."""


class OrderExceeded(GeowebError):
    """A derivative of higher order than the jet carries was requested."""


class DegenerateWeb(GeowebError):
    """A web denominator (f_x, f_y, w, a or 1-a) fell below the guard."""


class PoleProximity(GeowebError):
    """Argument too close to a lattice pole of the elliptic function."""


class HalfPeriodSingularity(GeowebError):
    """A duplication step landed too close to a half-period (P' ~ 0)."""


class FamilySingularity(GeowebError):
    """Evaluation point sits on (or too close to) a family's singular locus."""


class InsufficientSamples(GeowebError):
    """Fewer samples than the classifier needs."""


class NotCurvatureFlat(GeowebError):
    """Gauge normalization requested for a web whose curvature is not zero."""


class SignChange(GeowebError):
    """The slope invariant w changes sign on the rectangle."""


class QuadratureFailure(GeowebError):
    """Adaptive quadrature did not reach tolerance within the depth limit."""
