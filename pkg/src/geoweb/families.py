"""The four closed-form families of the invariant alpha.

In normalized coordinates (3-subweb cut out by x, y and x + y, so w = 1
and k = 0) every solution of the linearizability conditions belongs to one
of four families:

* ``Type1`` (generic, elliptic):

      alpha = [P'(2x+y+l1; g2, g3) + P'(x+2y+l2; g2, g3)]
              / [P(2x+y+l1; g2, g3) - P(x+2y+l2; g2, g3)]

  with P the Weierstrass function and the same invariants on both lines.
  The field is generated by the pair A = 6 P(2x+y+l1; g2, g3),
  B = -6 P(x+2y+l2; g2, g3) through alpha = (A' - B')/(A + B).  Both the
  numerator sign and the equality of the invariants are forced: the first
  integrals of A'' - A^2 = c and B'' + B^2 = -c must share one integration
  constant, which pins B's third invariant to +g3, and the jet tests
  confirm that every other sign choice fails the governing conditions by
  many orders of magnitude.

* ``Type2``:  alpha = k (e^{k(x-y+C)} + 1)/(e^{k(x-y+C)} - 1),  k != 0.

* ``Type3``:  alpha = -k tan(k (x-y+C)/2),  k != 0.  With
  ``corrected=False`` the evaluator instead uses -k tan((x-y+C)/2), which
  satisfies the governing Riccati equation only for k = 1 and is kept
  purely as a regression reference.

* ``Type4``:  alpha = 2/(x - y + C).

Families (ii)-(iv) depend on x - y alone and satisfy the Riccati equation
alpha' + alpha^2/2 = v with v = k^2/2, -k^2/2 and 0 respectively; family
(i) is governed by the pair A, B exposed through :func:`ab_eval`, whose
members satisfy A'' - A^2 = c, B'' + B^2 = -c and the first integrals
A'^2 = (2/3)A^3 + 2cA + 2a, B'^2 = -(2/3)B^3 - 2cB + 2a with c = -3 g2
and a = -18 g3 (one shared constant a on both lines).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import FamilySingularity
from .invariants import liouville_from_alpha
from .jets import Jet1, Jet2, compose_analytic, compose_series, variable_jets
from .weierstrass import WpParams, wp_pair

TYPE1_DENOM_GUARD = 1e-8
XI_DENOM_GUARD = 1e-10
TAN_POLE_GUARD = 1e-8


@dataclass(frozen=True)
class Type1:
    g2: float
    g3: float
    lambda1: float
    lambda2: float


@dataclass(frozen=True)
class Type2:
    k: float
    C: float

    def __post_init__(self):
        if self.k == 0.0:
            raise ValueError("Type2 requires k != 0 (k = 0 is Type4)")


@dataclass(frozen=True)
class Type3:
    k: float
    C: float
    corrected: bool = True

    def __post_init__(self):
        if self.k == 0.0:
            raise ValueError("Type3 requires k != 0 (k = 0 is Type4)")


@dataclass(frozen=True)
class Type4:
    C: float


FamilySpec = Union[Type1, Type2, Type3, Type4]

FAMILY_TAGS = {"t1": Type1, "t2": Type2, "t3": Type3, "t4": Type4}


def family_tag(fam: FamilySpec) -> str:
    for tag, cls in FAMILY_TAGS.items():
        if isinstance(fam, cls):
            return tag
    raise TypeError(f"not a family spec: {fam!r}")


def riccati_constant(fam: Union[Type2, Type3, Type4]) -> float:
    """The constant v of alpha' + alpha^2/2 = v for the x-y families."""
    if isinstance(fam, Type2):
        return 0.5 * fam.k**2
    if isinstance(fam, Type3):
        return -0.5 * fam.k**2
    if isinstance(fam, Type4):
        return 0.0
    raise TypeError("the Riccati form applies to Type2/Type3/Type4 only")


def _xi_jet(fam, point: tuple[float, float], degree: int) -> Jet2:
    """Jet of x - y + C at ``point``."""
    xj, yj = variable_jets(point, degree)
    return xj - yj + fam.C


def alpha_eval(fam: FamilySpec, point: tuple[float, float], degree: int = 2) -> Jet2:
    """Jet of the family's alpha field at ``point`` (degree <= 3)."""
    if not 0 <= degree <= 3:
        raise ValueError("alpha jets are supported up to degree 3")
    if isinstance(fam, Type4):
        d = _xi_jet(fam, point, degree)
        if abs(d.value) <= XI_DENOM_GUARD:
            raise FamilySingularity(f"x - y + C = {d.value!r} at {point}")
        return 2.0 / d
    if isinstance(fam, Type2):
        u = _xi_jet(fam, point, degree) * fam.k
        e = compose_analytic("exp", u)
        if abs(e.value - 1.0) <= XI_DENOM_GUARD:
            raise FamilySingularity(f"exp(k(x-y+C)) - 1 ~ 0 at {point}")
        return fam.k * (e + 1.0) / (e - 1.0)
    if isinstance(fam, Type3):
        scale = fam.k if fam.corrected else 1.0
        arg = _xi_jet(fam, point, degree) * (scale / 2.0)
        if abs(math.cos(arg.value)) <= TAN_POLE_GUARD:
            raise FamilySingularity(f"tan pole near argument {arg.value!r} at {point}")
        return -fam.k * compose_analytic("tan", arg)
    if isinstance(fam, Type1):
        return _alpha_type1(fam, point, degree)
    raise TypeError(f"not a family spec: {fam!r}")


def _line_jets(fam: Type1, point: tuple[float, float], degree: int):
    """P, P' jets along the lines t = 2x+y+l1 and s = x+2y+l2."""
    x0, y0 = point
    t0 = 2.0 * x0 + y0 + fam.lambda1
    s0 = x0 + 2.0 * y0 + fam.lambda2
    deg = max(degree, 1)
    params = WpParams(fam.g2, fam.g3)  # both lines carry the same invariants
    pt, dpt = wp_pair(Jet1.variable(t0, deg), params)
    ps, dps = wp_pair(Jet1.variable(s0, deg), params)
    return pt, dpt, ps, dps


def _alpha_type1(fam: Type1, point: tuple[float, float], degree: int) -> Jet2:
    pt, dpt, ps, dps = _line_jets(fam, point, degree)
    # increments of the line parameters as bivariate jets (zero constant term)
    dt = Jet2.linear(point, degree, 0.0, 2.0, 1.0)
    ds = Jet2.linear(point, degree, 0.0, 1.0, 2.0)
    p_t = compose_series(pt.c[: degree + 1], dt)
    p_s = compose_series(ps.c[: degree + 1], ds)
    dp_t = compose_series(dpt.c[: degree + 1], dt)
    dp_s = compose_series(dps.c[: degree + 1], ds)
    den = p_t - p_s
    if abs(den.value) <= TYPE1_DENOM_GUARD:
        raise FamilySingularity(
            f"P(2x+y+l1) - P(x+2y+l2) = {den.value!r} at {point}")
    return (dp_t + dp_s) / den


class ABValues(NamedTuple):
    """A, B and their first two derivatives along their own line parameters."""

    A: float
    A1: float
    A2: float
    B: float
    B1: float
    B2: float


def ab_eval(fam: Type1, point: tuple[float, float]) -> ABValues:
    """A = 6 P(2x+y+l1; g2, g3) and B = -6 P(x+2y+l2; g2, g3) with their
    first and second derivatives with respect to the line parameters."""
    pt, _, ps, _ = _line_jets(fam, point, 2)
    return ABValues(
        A=6.0 * pt.c[0], A1=6.0 * pt.c[1], A2=12.0 * pt.c[2],
        B=-6.0 * ps.c[0], B1=-6.0 * ps.c[1], B2=-12.0 * ps.c[2],
    )


def ab_compatibility(fam: Type1, point: tuple[float, float]) -> float:
    """Defect of the compatibility identity (A + B) alpha = A' - B'."""
    ab = ab_eval(fam, point)
    if abs(ab.A + ab.B) <= TYPE1_DENOM_GUARD:
        raise FamilySingularity(f"A + B = {ab.A + ab.B!r} at {point}")
    alpha = alpha_eval(fam, point, 1).value
    return (ab.A + ab.B) * alpha - (ab.A1 - ab.B1)


def riccati_residual(fam: Union[Type2, Type3, Type4], xi: float) -> float:
    """Defect of alpha'(xi) + alpha(xi)^2/2 - v for the x-y families."""
    v = riccati_constant(fam)
    jet = alpha_eval(fam, (float(xi), 0.0), 1)
    alpha = jet.value
    alpha_prime = jet.partial(1, 0)  # d/dxi along y = const
    return alpha_prime + 0.5 * alpha * alpha - v


@dataclass(frozen=True)
class NormalizedWebField:
    """A family alpha packaged as a web in normalized coordinates.

    The 3-subweb is the one cut out by x, y and x + y, so the slope jet is
    identically 1 and the k jet identically 0; only alpha varies.  The jets
    plug straight into :func:`geoweb.invariants.liouville_from_alpha`.
    """

    family: FamilySpec

    def jets_at(self, point: tuple[float, float]) -> tuple[Jet2, Jet2, Jet2]:
        alpha2 = alpha_eval(self.family, point, 2)
        w2 = Jet2.constant(1.0, point, 2)
        k1 = Jet2.constant(0.0, point, 1)
        return alpha2, w2, k1

    def liouville_at(self, point: tuple[float, float]) -> tuple[float, float]:
        return liouville_from_alpha(*self.jets_at(point))


def alpha_to_web(fam: FamilySpec) -> NormalizedWebField:
    """Package a family for the obstruction check in normalized coordinates."""
    return NormalizedWebField(fam)
