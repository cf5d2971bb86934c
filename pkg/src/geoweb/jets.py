"""Truncated Taylor jets in one and two variables (forward-mode AD).

A jet stores the Taylor coefficients of a scalar function at a point:

* ``Jet1`` holds ``c[k] = g^(k)(t0) / k!`` for ``k = 0..D``,
* ``Jet2`` holds ``c[i][j] = d^{i+j}g / dx^i dy^j (x0,y0) / (i! j!)``
  on the triangle ``i + j <= D``.

Coefficients are kept factorial-normalized so that products are plain
truncated convolutions; raw partial derivatives are recovered through
:meth:`Jet2.partial` / :meth:`Jet1.derivative`.  The maximum total degree
is 4 (dense triangular storage, 15 coefficients): that is exactly what the
fourth-order web invariants downstream require.

Arithmetic follows truncation semantics: the result of an operation is the
jet of the pointwise operation, with every coefficient above the common
degree discarded.  Mixing jets is only allowed at identical base point and
degree; plain numbers lift to constants.  All values are pure, so jets are
safe to share between threads.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

from .errors import DivisionByZeroJet, EvalDomainError, OrderExceeded

MAX_DEGREE = 4

# |denominator constant term| below this counts as division by zero
_DIV_EPS = 1e-300


def _factorials(n: int) -> list[int]:
    out = [1]
    for k in range(1, n + 1):
        out.append(out[-1] * k)
    return out


_FACT = _factorials(MAX_DEGREE + 2)


# ---------------------------------------------------------------------------
# univariate Taylor coefficient tables for the supported analytic functions
# ---------------------------------------------------------------------------

def _series_exp(a0: float, n: int) -> list[float]:
    e = math.exp(a0)
    return [e / _FACT[k] for k in range(n + 1)]


def _series_log(a0: float, n: int) -> list[float]:
    if a0 <= 0.0:
        raise EvalDomainError(f"log of non-positive value {a0!r}")
    out = [math.log(a0)]
    for k in range(1, n + 1):
        out.append((-1.0) ** (k + 1) / (k * a0**k))
    return out


def _series_sqrt(a0: float, n: int) -> list[float]:
    if a0 <= 0.0:
        raise EvalDomainError(f"sqrt of non-positive value {a0!r}")
    return _series_pow(a0, 0.5, n)


def _series_recip(a0: float, n: int) -> list[float]:
    if abs(a0) < _DIV_EPS:
        raise DivisionByZeroJet("reciprocal of a jet with zero constant term")
    return [(-1.0) ** k / a0 ** (k + 1) for k in range(n + 1)]


def _series_pow(a0: float, r: float, n: int) -> list[float]:
    # generalized binomial series; requires a positive base for real powers
    if a0 <= 0.0:
        raise EvalDomainError(f"real power of non-positive base {a0!r}")
    out = [a0**r]
    for k in range(1, n + 1):
        out.append(out[-1] * (r - (k - 1)) / (k * a0))
    return out


def _series_sin(a0: float, n: int) -> list[float]:
    s, c = math.sin(a0), math.cos(a0)
    cycle = (s, c, -s, -c)
    return [cycle[k % 4] / _FACT[k] for k in range(n + 1)]


def _series_cos(a0: float, n: int) -> list[float]:
    s, c = math.sin(a0), math.cos(a0)
    cycle = (c, -s, -c, s)
    return [cycle[k % 4] / _FACT[k] for k in range(n + 1)]


def _series_sinh(a0: float, n: int) -> list[float]:
    s, c = math.sinh(a0), math.cosh(a0)
    cycle = (s, c)
    return [cycle[k % 2] / _FACT[k] for k in range(n + 1)]


def _series_cosh(a0: float, n: int) -> list[float]:
    s, c = math.sinh(a0), math.cosh(a0)
    cycle = (c, s)
    return [cycle[k % 2] / _FACT[k] for k in range(n + 1)]


def _series_tan(a0: float, n: int) -> list[float]:
    # u' = 1 + u^2 coefficient recurrence
    u = [math.tan(a0)]
    if not math.isfinite(u[0]):
        raise EvalDomainError(f"tan at a pole: argument {a0!r}")
    for k in range(n):
        conv = sum(u[m] * u[k - m] for m in range(k + 1))
        u.append(((1.0 if k == 0 else 0.0) + conv) / (k + 1))
    return u


def _series_tanh(a0: float, n: int) -> list[float]:
    # u' = 1 - u^2
    u = [math.tanh(a0)]
    for k in range(n):
        conv = sum(u[m] * u[k - m] for m in range(k + 1))
        u.append(((1.0 if k == 0 else 0.0) - conv) / (k + 1))
    return u


_SERIES: dict[str, Callable[[float, int], list[float]]] = {
    "exp": _series_exp,
    "log": _series_log,
    "sqrt": _series_sqrt,
    "recip": _series_recip,
    "sin": _series_sin,
    "cos": _series_cos,
    "tan": _series_tan,
    "sinh": _series_sinh,
    "cosh": _series_cosh,
    "tanh": _series_tanh,
}

ANALYTIC_FUNCTIONS = tuple(sorted(_SERIES) + ["pow"])


def function_series(name: str, a0: float, degree: int, power: float | None = None) -> list[float]:
    """Taylor coefficients of the named function expanded at ``a0``."""
    if name == "pow":
        if power is None:
            raise ValueError("pow requires the exponent argument")
        return _series_pow(a0, power, degree)
    try:
        gen = _SERIES[name]
    except KeyError:
        raise ValueError(f"unknown analytic function {name!r}") from None
    return gen(a0, degree)


# ---------------------------------------------------------------------------
# univariate jets
# ---------------------------------------------------------------------------

class Jet1:
    """Univariate truncated Taylor jet, ``c[k] = g^(k)(t0)/k!``.

    The base point is implicit (the caller tracks it); only the
    coefficients travel.  Supports ``+ - * /`` against other jets of the
    same degree and against plain numbers, integer powers, reciprocals and
    term-wise differentiation.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[float]):
        self.c = [float(v) for v in coeffs]
        if not self.c:
            raise ValueError("empty coefficient list")

    @classmethod
    def variable(cls, t0: float, degree: int) -> "Jet1":
        """Jet of the identity map t |-> t at ``t0``."""
        c = [0.0] * (degree + 1)
        c[0] = float(t0)
        if degree >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value: float, degree: int) -> "Jet1":
        c = [0.0] * (degree + 1)
        c[0] = float(value)
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def value(self) -> float:
        return self.c[0]

    def derivative(self) -> "Jet1":
        """Jet of g', one degree lower (raw, not factorial-rescaled)."""
        if self.degree == 0:
            raise OrderExceeded("cannot differentiate a degree-0 jet")
        return Jet1([(k + 1) * self.c[k + 1] for k in range(self.degree)])

    def truncate(self, degree: int) -> "Jet1":
        if degree > self.degree:
            raise OrderExceeded(f"cannot extend degree {self.degree} jet to {degree}")
        return Jet1(self.c[: degree + 1])

    def _coerce(self, other) -> "Jet1 | None":
        if isinstance(other, Jet1):
            if other.degree != self.degree:
                raise ValueError("jet degrees differ")
            return other
        if isinstance(other, (int, float)):
            return None
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            c = list(self.c)
            c[0] += other
            return Jet1(c)
        return Jet1([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            c = list(self.c)
            c[0] -= other
            return Jet1(c)
        return Jet1([a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Jet1([-a for a in self.c])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return Jet1([a * other for a in self.c])
        n = self.degree
        a, b = self.c, o.c
        return Jet1([sum(a[m] * b[k - m] for m in range(k + 1)) for k in range(n + 1)])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return Jet1([a / other for a in self.c])
        if abs(o.c[0]) < _DIV_EPS:
            raise DivisionByZeroJet("jet division by zero constant term")
        n = self.degree
        out = [0.0] * (n + 1)
        for k in range(n + 1):
            tot = self.c[k]
            for m in range(k):
                tot -= out[m] * o.c[k - m]
            out[k] = tot / o.c[0]
        return Jet1(out)

    def __rtruediv__(self, other):
        return Jet1.constant(other, self.degree) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1.0 / self) ** (-n)
        out = Jet1.constant(1.0, self.degree)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"Jet1({self.c})"


# ---------------------------------------------------------------------------
# bivariate jets
# ---------------------------------------------------------------------------

class Jet2:
    """Bivariate truncated Taylor jet at ``(x0, y0)`` of total degree ``D <= 4``.

    ``c[i][j]`` is the factorial-normalized coefficient of
    ``(x - x0)^i (y - y0)^j``; storage is dense triangular (row ``i`` has
    ``D - i + 1`` entries).
    """

    __slots__ = ("x0", "y0", "deg", "c")

    def __init__(self, x0: float, y0: float, degree: int, coeffs: list[list[float]] | None = None):
        if not 0 <= degree <= MAX_DEGREE:
            raise ValueError(f"degree must be in 0..{MAX_DEGREE}, got {degree}")
        self.x0 = float(x0)
        self.y0 = float(y0)
        self.deg = degree
        if coeffs is None:
            self.c = [[0.0] * (degree - i + 1) for i in range(degree + 1)]
        else:
            self.c = coeffs

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value: float, point: tuple[float, float], degree: int) -> "Jet2":
        j = cls(point[0], point[1], degree)
        j.c[0][0] = float(value)
        return j

    @classmethod
    def linear(cls, point: tuple[float, float], degree: int,
               const: float, coeff_x: float, coeff_y: float) -> "Jet2":
        """Jet of the affine function const + coeff_x*(x-x0) + coeff_y*(y-y0)."""
        j = cls(point[0], point[1], degree)
        j.c[0][0] = float(const)
        if degree >= 1:
            j.c[1][0] = float(coeff_x)
            j.c[0][1] = float(coeff_y)
        return j

    # -- accessors -----------------------------------------------------------

    @property
    def point(self) -> tuple[float, float]:
        return (self.x0, self.y0)

    @property
    def value(self) -> float:
        return self.c[0][0]

    def partial(self, i: int, j: int) -> float:
        """Raw partial derivative d^{i+j}g/dx^i dy^j at the base point."""
        if i < 0 or j < 0 or i + j > self.deg:
            raise OrderExceeded(f"partial ({i},{j}) exceeds jet degree {self.deg}")
        return _FACT[i] * _FACT[j] * self.c[i][j]

    def truncate(self, degree: int) -> "Jet2":
        if degree > self.deg:
            raise OrderExceeded(f"cannot extend degree {self.deg} jet to {degree}")
        return Jet2(self.x0, self.y0, degree,
                    [row[: degree - i + 1] for i, row in enumerate(self.c[: degree + 1])])

    def dx(self) -> "Jet2":
        """Jet of dg/dx, one total degree lower."""
        if self.deg == 0:
            raise OrderExceeded("cannot differentiate a degree-0 jet")
        d = self.deg - 1
        return Jet2(self.x0, self.y0, d,
                    [[(i + 1) * self.c[i + 1][j] for j in range(d - i + 1)] for i in range(d + 1)])

    def dy(self) -> "Jet2":
        """Jet of dg/dy, one total degree lower."""
        if self.deg == 0:
            raise OrderExceeded("cannot differentiate a degree-0 jet")
        d = self.deg - 1
        return Jet2(self.x0, self.y0, d,
                    [[(j + 1) * self.c[i][j + 1] for j in range(d - i + 1)] for i in range(d + 1)])

    def is_finite(self) -> bool:
        return all(math.isfinite(v) for row in self.c for v in row)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Jet2") -> None:
        if other.x0 != self.x0 or other.y0 != self.y0:
            raise ValueError("jets have different base points")
        if other.deg != self.deg:
            raise ValueError("jets have different degrees")

    def __add__(self, other):
        if isinstance(other, Jet2):
            self._check(other)
            return Jet2(self.x0, self.y0, self.deg,
                        [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.c, other.c)])
        if isinstance(other, (int, float)):
            out = self.copy()
            out.c[0][0] += other
            return out
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet2):
            self._check(other)
            return Jet2(self.x0, self.y0, self.deg,
                        [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.c, other.c)])
        if isinstance(other, (int, float)):
            out = self.copy()
            out.c[0][0] -= other
            return out
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Jet2(self.x0, self.y0, self.deg, [[-a for a in row] for row in self.c])

    def copy(self) -> "Jet2":
        return Jet2(self.x0, self.y0, self.deg, [list(row) for row in self.c])

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Jet2(self.x0, self.y0, self.deg,
                        [[a * other for a in row] for row in self.c])
        if not isinstance(other, Jet2):
            return NotImplemented
        self._check(other)
        D = self.deg
        a, b = self.c, other.c
        out = []
        for i in range(D + 1):
            row = []
            for j in range(D - i + 1):
                s = 0.0
                for p in range(i + 1):
                    ap = a[p]
                    bp = b[i - p]
                    for q in range(j + 1):
                        s += ap[q] * bp[j - q]
                row.append(s)
            out.append(row)
        return Jet2(self.x0, self.y0, D, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self * (1.0 / other)
        if not isinstance(other, Jet2):
            return NotImplemented
        self._check(other)
        b00 = other.c[0][0]
        if abs(b00) < _DIV_EPS:
            raise DivisionByZeroJet("jet division by zero constant term")
        D = self.deg
        a, b = self.c, other.c
        out = [[0.0] * (D - i + 1) for i in range(D + 1)]
        for d in range(D + 1):
            for i in range(d + 1):
                j = d - i
                if j > D - i:
                    continue
                tot = a[i][j]
                for p in range(i + 1):
                    for q in range(j + 1):
                        if p == 0 and q == 0:
                            continue
                        tot -= b[p][q] * out[i - p][j - q]
                out[i][j] = tot / b00
        return Jet2(self.x0, self.y0, D, out)

    def __rtruediv__(self, other):
        return Jet2.constant(other, self.point, self.deg) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1.0 / self) ** (-n)
        out = Jet2.constant(1.0, self.point, self.deg)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"Jet2(({self.x0}, {self.y0}), deg={self.deg}, c={self.c})"


def variable_jets(point: tuple[float, float], degree: int) -> tuple[Jet2, Jet2]:
    """Jets of the coordinate functions x and y at ``point``."""
    xj = Jet2.linear(point, degree, point[0], 1.0, 0.0)
    yj = Jet2.linear(point, degree, point[1], 0.0, 1.0)
    return xj, yj


def compose_series(coeffs: Sequence[float], h: Jet2) -> Jet2:
    """Substitute the jet ``h`` (zero constant term) into a univariate series.

    Returns the jet of ``sum_k coeffs[k] * h^k`` truncated at ``h.deg``.
    """
    out = Jet2.constant(coeffs[-1], h.point, h.deg)
    for k in range(len(coeffs) - 2, -1, -1):
        out = out * h
        out.c[0][0] += coeffs[k]
    return out


def compose_analytic(fn: str, a: Jet2, power: float | None = None) -> Jet2:
    """Jet of ``fn(g)`` for an analytic ``fn`` applied to the jet of ``g``.

    ``fn`` is one of exp, log, sqrt, sin, cos, tan, sinh, cosh, tanh, recip
    or pow (the latter takes the real exponent through ``power``).
    """
    series = function_series(fn, a.c[0][0], a.deg, power)
    h = a.copy()
    h.c[0][0] = 0.0
    out = compose_series(series, h)
    if not out.is_finite():
        raise EvalDomainError(f"{fn} produced non-finite jet coefficients")
    return out


def compose_analytic1(fn: str, a: Jet1, power: float | None = None) -> Jet1:
    """Univariate counterpart of :func:`compose_analytic`."""
    series = function_series(fn, a.c[0], a.degree, power)
    h = Jet1(list(a.c))
    h.c[0] = 0.0
    out = Jet1.constant(series[-1], a.degree)
    for k in range(len(series) - 2, -1, -1):
        out = out * h
        out.c[0] += series[k]
    return out
