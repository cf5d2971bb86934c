"""Differential invariants of a planar 4-web given by (f, a).

The 3-subweb is cut out by the foliations x = const, y = const and
f(x, y) = const; the fourth foliation enters only through its basic
invariant a(x, y).  From these two scalar fields the module computes

    w = f_y / f_x                      (slope invariant of the 3-subweb)
    alpha = (a a_y - w a_x) / (w a (1 - a))
    k = (log w)_xy                     (evaluated rationally, sign-safe)
    K = -(1/(f_x f_y)) (log(f_x/f_y))_xy    (3-subweb curvature)

and the two third-order components L1, L2 of the linearizability
obstruction.  The web is linearizable (given that it is geodesic) exactly
when L1 = L2 = 0; for K = 0 one may first normalize w to 1 (see
:mod:`geoweb.gauge`), after which the obstruction collapses to the reduced
residual pair implemented in :func:`reduced_residuals`.

The full obstruction is transcribed bracket by bracket:

    3 L1 = w (-(kw)_x + a_xx + a a_x)
         + (a w_xx + (a^2 + 3 a_x) w_x - 2 a_xy - 2 a a_y)
         + w^-1 (-a w_xy - 2 a_y w_x + a w_x^2)
         + w^-2 a w_x w_y

    3 L2 = w^2 (-(k/w)_y + 2 a a_x)
         + w (2 a^2 w_x - 2 a_xy - a a_y)
         + (-a w_xy - 2 a_y w_x + a_yy)
         + w^-1 (a w_x w_y - a_y w_y)

(here ``a`` in the brackets stands for alpha).  Each bracket is exposed
through :func:`liouville_brackets` so a transcription defect can be
pinned to a single bracket by the finite-difference tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateWeb, OrderExceeded
from .expr import Expression, eval_jet, parse
from .jets import Jet2

DENOM_GUARD = 1e-10


@dataclass(frozen=True)
class WebSpec:
    """A web function f, a basic invariant a, and the analysis rectangle."""

    f: Expression
    a: Expression
    rectangle: tuple[float, float, float, float]  # (x_min, x_max, y_min, y_max)

    @classmethod
    def from_text(cls, f_text: str, a_text: str,
                  rectangle: tuple[float, float, float, float]) -> "WebSpec":
        return cls(parse(f_text), parse(a_text), tuple(float(v) for v in rectangle))


@dataclass(frozen=True)
class InvariantSample:
    """All pointwise invariants of a web at one sample point."""

    x: float
    y: float
    w: float
    alpha: float
    k: float
    K: float
    L1: float
    L2: float


def _guard(value: float, name: str, point) -> None:
    if abs(value) <= DENOM_GUARD:
        raise DegenerateWeb(f"denominator {name} = {value!r} at {point}")


def _base_jets_inner(spec: WebSpec, point: tuple[float, float], alpha_degree: int
                     ) -> tuple[Jet2, Jet2, Jet2, float, float]:
    if alpha_degree not in (2, 3):
        raise ValueError("alpha_degree must be 2 or 3")
    f4 = eval_jet(spec.f, point, 4)
    a_jet = eval_jet(spec.a, point, alpha_degree + 1)

    fx = f4.dx()
    fy = f4.dy()
    _guard(fx.value, "f_x", point)
    _guard(fy.value, "f_y", point)
    w3 = fy / fx
    _guard(w3.value, "w", point)

    # k = (log w)_xy computed rationally, (w_x / w)_y, so negative w is fine
    k1 = (w3.dx() / w3.truncate(2)).dy()

    d = alpha_degree
    a_d = a_jet.truncate(d)
    ax = a_jet.dx()
    ay = a_jet.dy()
    w_d = w3.truncate(d)
    _guard(a_d.value, "a", point)
    _guard(1.0 - a_d.value, "1-a", point)
    alpha = (a_d * ay - w_d * ax) / (w_d * a_d * (1.0 - a_d))
    return w3, alpha, k1, fx.value, fy.value


def base_jets(spec: WebSpec, point: tuple[float, float], *,
              alpha_degree: int = 2) -> tuple[Jet2, Jet2, Jet2]:
    """Jets of (w, alpha, k) at ``point``: degrees (3, alpha_degree, 1).

    ``alpha_degree`` is 2 by default (all the obstruction needs); passing 3
    raises a's evaluation degree to 4 so :func:`factored_residuals` can be
    applied to a (f, a)-derived field.
    """
    w3, alpha, k1, _, _ = _base_jets_inner(spec, point, alpha_degree)
    return w3, alpha, k1


def curvature(spec: WebSpec, point: tuple[float, float]) -> float:
    """Curvature K of the 3-subweb: -(1/(f_x f_y)) (log(f_x/f_y))_xy."""
    f3 = eval_jet(spec.f, point, 3)
    fx = f3.dx()
    fy = f3.dy()
    _guard(fx.value, "f_x", point)
    _guard(fy.value, "f_y", point)
    r = fx / fy
    r0 = r.value
    # (log r)_xy = (r_xy r - r_x r_y) / r^2, valid for either sign of r
    mixed = (r.partial(1, 1) * r0 - r.partial(1, 0) * r.partial(0, 1)) / (r0 * r0)
    return -mixed / (fx.value * fy.value)


def liouville_brackets(alpha_jet: Jet2, w_jet: Jet2, k_jet: Jet2
                       ) -> tuple[tuple[float, float, float, float],
                                  tuple[float, float, float, float]]:
    """The four w-power brackets of each obstruction line (before the /3)."""
    w = w_jet.value
    wx = w_jet.partial(1, 0)
    wy = w_jet.partial(0, 1)
    wxx = w_jet.partial(2, 0)
    wxy = w_jet.partial(1, 1)

    al = alpha_jet.value
    ax = alpha_jet.partial(1, 0)
    ay = alpha_jet.partial(0, 1)
    axx = alpha_jet.partial(2, 0)
    axy = alpha_jet.partial(1, 1)
    ayy = alpha_jet.partial(0, 2)

    k = k_jet.value
    kx = k_jet.partial(1, 0)
    ky = k_jet.partial(0, 1)

    kw_x = kx * w + k * wx
    kinv_y = ky / w - k * wy / (w * w)

    line1 = (
        w * (-kw_x + axx + al * ax),
        al * wxx + (al * al + 3.0 * ax) * wx - 2.0 * axy - 2.0 * al * ay,
        (-al * wxy - 2.0 * ay * wx + al * wx * wx) / w,
        al * wx * wy / (w * w),
    )
    line2 = (
        w * w * (-kinv_y + 2.0 * al * ax),
        w * (2.0 * al * al * wx - 2.0 * axy - al * ay),
        -al * wxy - 2.0 * ay * wx + ayy,
        (al * wx * wy - ay * wy) / w,
    )
    return line1, line2


def liouville_from_alpha(alpha_jet: Jet2, w_jet: Jet2, k_jet: Jet2) -> tuple[float, float]:
    """(L1, L2) from already-computed jets of alpha (deg 2), w (deg >= 2), k (deg 1).

    This is the entry point for closed-form alpha fields that bypass (f, a);
    with w = 1 and k = 0 it reduces to ``reduced_residuals(alpha_jet) / 3``.
    """
    if abs(w_jet.value) <= DENOM_GUARD:
        raise DegenerateWeb(f"denominator w = {w_jet.value!r} at {w_jet.point}")
    line1, line2 = liouville_brackets(alpha_jet, w_jet, k_jet)
    return sum(line1) / 3.0, sum(line2) / 3.0


def liouville(spec: WebSpec, point: tuple[float, float]) -> tuple[float, float]:
    """(L1, L2) of the web at ``point``, assembled from :func:`base_jets`."""
    w3, alpha2, k1 = base_jets(spec, point)
    return liouville_from_alpha(alpha2, w3, k1)


def reduced_residuals(alpha_jet: Jet2) -> tuple[float, float]:
    """The obstruction pair specialized to normalized coordinates (w=1, k=0):

        R1 = a_xx - 2 a_xy + a a_x - 2 a a_y
        R2 = a_yy - 2 a_xy + 2 a a_x - a a_y
    """
    if alpha_jet.deg < 2:
        raise OrderExceeded("reduced residuals need an alpha jet of degree >= 2")
    al = alpha_jet.value
    ax = alpha_jet.partial(1, 0)
    ay = alpha_jet.partial(0, 1)
    axx = alpha_jet.partial(2, 0)
    axy = alpha_jet.partial(1, 1)
    ayy = alpha_jet.partial(0, 2)
    r1 = axx - 2.0 * axy + al * ax - 2.0 * al * ay
    r2 = ayy - 2.0 * axy + 2.0 * al * ax - al * ay
    return r1, r2


def factored_residuals(alpha_jet: Jet2) -> tuple[float, float]:
    """The same conditions written as directional derivatives of invariant
    combinations:

        F1 = (d_x - 2 d_y)(a_x + a^2/2)
        F2 = (d_y - 2 d_x)(a_y - a^2/2)

    Values coincide with :func:`reduced_residuals` but are assembled along a
    different jet path, which requires a degree-3 alpha jet.
    """
    if alpha_jet.deg < 3:
        raise OrderExceeded("factored residuals need an alpha jet of degree >= 3")
    half_sq = (alpha_jet * alpha_jet).truncate(2) * 0.5
    g = alpha_jet.dx() + half_sq
    f1 = g.partial(1, 0) - 2.0 * g.partial(0, 1)
    h = alpha_jet.dy() - half_sq
    f2 = h.partial(0, 1) - 2.0 * h.partial(1, 0)
    return f1, f2


def sample(spec: WebSpec, point: tuple[float, float]) -> InvariantSample:
    """Every pointwise invariant at ``point`` in one evaluation pass.

    K is recovered through the identity K f_x f_y = k, which follows from
    the two defining formulas (log(f_x/f_y) = -log w).
    """
    w3, alpha2, k1, fx0, fy0 = _base_jets_inner(spec, point, 2)
    l1, l2 = liouville_from_alpha(alpha2, w3, k1)
    big_k = k1.value / (fx0 * fy0)
    return InvariantSample(point[0], point[1], w3.value, alpha2.value,
                           k1.value, big_k, l1, l2)
