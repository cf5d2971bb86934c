"""Weierstrass elliptic function for real arguments and real invariants.

``wp_pair(z, p)`` returns (P(z), P'(z)) where P solves

    P'^2 = 4 P^3 - g2 P - g3.

The evaluation is a two-stage scheme:

1. argument reduction: halve z until |z|/2^n <= r0, where
   r0 = 0.5 * min(1, |g2|^(-1/4), |g3|^(-1/6)) keeps the Laurent series
   tail below 1e-14;
2. Laurent series  P(zeta) = zeta^-2 + sum_{k>=2} c_k zeta^(2k-2)  with
   c_2 = g2/20, c_3 = g3/28 and
   c_k = 3 * sum_{m=2}^{k-2} c_m c_{k-m} / ((2k+1)(k-3)),
   truncated at k = 12;
3. n duplication steps  P(2z) = (P'')^2 / (4 P'^2) - 2P  with
   P'' = 6 P^2 - g2/2 and P'^2 replaced by 4P^3 - g2 P - g3.

The whole pipeline runs in univariate jet arithmetic, so the derivative
P' is the degree-1 slot of the result (never a square root of the ODE,
which would lose the sign).  Half-period hits, where the duplication
denominator P'^2 cancels, are reported as errors rather than healed:
sweep-style callers are expected to skip and count them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EvalDomainError, HalfPeriodSingularity, OrderExceeded, PoleProximity
from .jets import Jet1

# Laurent truncation index and reduction-radius factor: with
# r0 = RADIUS_FACTOR * min(1, |g2|^-1/4, |g3|^-1/6) the first discarded
# series term (k = 13) stays below 1e-14 for |g2|, |g3| up to ~1e3.
SERIES_TRUNCATION = 12
RADIUS_FACTOR = 0.5

POLE_EPSILON = 1e-8        # |z| below this is a pole hit
POLE_MAGNITUDE_CAP = 1e12  # intermediate |P| above this is a pole hit
HALF_PERIOD_TOL = 1e-10    # absolute |P'| threshold in the duplication step
# relative cancellation guard on P'^2 = 4P^3 - g2 P - g3; values below
# HALF_PERIOD_CANCEL * scale lose enough precision to miss a 1e-9 ODE
# residual, so they are rejected as half-period hits as well
HALF_PERIOD_CANCEL = 3e-4

_MAX_JET_DEGREE = 3  # callers never need P' beyond total degree 3


@dataclass(frozen=True)
class WpParams:
    """Invariants (g2, g3) of the cubic 4y^3 - g2 y - g3."""

    g2: float
    g3: float

    def __post_init__(self):
        if not (math.isfinite(self.g2) and math.isfinite(self.g3)):
            raise ValueError("invariants must be finite")


def laurent_coefficients(params: WpParams, kmax: int = SERIES_TRUNCATION) -> list[float]:
    """Coefficients c_k of the expansion P(z) = z^-2 + sum c_k z^(2k-2)."""
    c = [0.0] * (kmax + 1)
    if kmax >= 2:
        c[2] = params.g2 / 20.0
    if kmax >= 3:
        c[3] = params.g3 / 28.0
    for k in range(4, kmax + 1):
        acc = 0.0
        for m in range(2, k - 1):
            acc += c[m] * c[k - m]
        c[k] = 3.0 * acc / ((2 * k + 1) * (k - 3))
    return c


def reduction_radius(params: WpParams) -> float:
    r = RADIUS_FACTOR
    if params.g2 != 0.0:
        r = min(r, RADIUS_FACTOR * abs(params.g2) ** -0.25)
    if params.g3 != 0.0:
        r = min(r, RADIUS_FACTOR * abs(params.g3) ** (-1.0 / 6.0))
    return r


def _wp_jet(zjet: Jet1, params: WpParams) -> Jet1:
    """P composed with the polynomial carried by ``zjet``, in jet arithmetic."""
    g2, g3 = params.g2, params.g3
    z0 = zjet.c[0]
    if abs(z0) < POLE_EPSILON:
        raise PoleProximity(f"argument {z0!r} within {POLE_EPSILON} of the pole at 0")
    r0 = reduction_radius(params)
    n = 0
    while abs(z0) / (1 << n) > r0:
        n += 1

    zeta = zjet * (0.5**n)
    q = zeta * zeta
    coeffs = laurent_coefficients(params)
    acc = Jet1.constant(0.0, zjet.degree)
    for k in range(SERIES_TRUNCATION, 1, -1):
        acc = acc * q + coeffs[k]
    p = 1.0 / q + q * acc
    if abs(p.c[0]) > POLE_MAGNITUDE_CAP:
        raise PoleProximity(f"|P| exceeded {POLE_MAGNITUDE_CAP:g} during reduction")

    for _ in range(n):
        p0 = p.c[0]
        den = 4.0 * p * p * p - g2 * p - g3  # = P'^2 by the defining ODE
        scale = max(abs(4.0 * p0**3), abs(g2 * p0), abs(g3))
        if abs(den.c[0]) < max(HALF_PERIOD_TOL**2, HALF_PERIOD_CANCEL * scale):
            raise HalfPeriodSingularity(
                "duplication denominator P'^2 cancels (argument near a half-period)")
        second = 6.0 * p * p - 0.5 * g2     # = P''
        p = second * second / (4.0 * den) - 2.0 * p
        if abs(p.c[0]) > POLE_MAGNITUDE_CAP:
            raise PoleProximity(f"|P| exceeded {POLE_MAGNITUDE_CAP:g} during duplication")
    return p


def wp_pair(z: float | Jet1, params: WpParams) -> tuple[float, float] | tuple[Jet1, Jet1]:
    """Evaluate (P(z), P'(z)).

    ``z`` may be a real number or a :class:`Jet1` of degree at most 3; a
    jet argument is treated as an exact polynomial in its parameter (the
    callers only ever pass affine reparametrizations), and both returned
    jets carry the same degree as the input.
    """
    if isinstance(z, Jet1):
        if z.degree > _MAX_JET_DEGREE:
            raise OrderExceeded(f"jet argument degree {z.degree} exceeds {_MAX_JET_DEGREE}")
        if z.degree < 1 or abs(z.c[1]) < 1e-14:
            raise EvalDomainError("jet argument needs a nonzero linear coefficient")
        padded = Jet1(list(z.c) + [0.0])
        p_full = _wp_jet(padded, params)
        # z is an exact polynomial, so its zero-padded derivative jet is exact
        dz = Jet1([(k + 1) * z.c[k + 1] for k in range(z.degree)] + [0.0])
        p = p_full.truncate(z.degree)
        dp_dt = p_full.derivative()  # d/dt of P(z(t)), degree z.degree
        pprime = dp_dt / dz          # chain rule: P'(z(t)) = (P o z)' / z'
        return p, pprime
    zj = Jet1.variable(float(z), 1)
    p = _wp_jet(zj, params)
    return p.c[0], p.c[1]


def wp_ode_residual(z: float, params: WpParams) -> float:
    """Defect of P'^2 - (4P^3 - g2 P - g3) at z, normalized by max(1, |P|^3)."""
    p, dp = wp_pair(z, params)
    raw = dp * dp - (4.0 * p**3 - params.g2 * p - params.g3)
    return raw / max(1.0, abs(p) ** 3)
