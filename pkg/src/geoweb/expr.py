"""Closed-form expression parsing and jet evaluation.

The grammar covers the two web variables ``x`` and ``y``, decimal literals
(optional exponent), the constants ``pi`` and ``e``, the binary operators
``+ - * / ^`` (with ``^`` right-associative and binding tighter than unary
minus, which binds tighter than ``* /``, which bind tighter than ``+ -``),
unary minus, and the functions exp, log, sqrt, sin, cos, tan, sinh, cosh,
tanh.  Parsing is whitespace-insensitive; errors carry the byte offset.

Parsed expressions are immutable trees; :func:`eval_jet` evaluates them
over the jet algebra, which yields the exact truncated Taylor expansion at
a point (up to roundoff).  ``^`` with a constant integer exponent is
evaluated by repeated multiplication (so negative bases work); any other
exponent goes through ``exp(b*log(a))`` and therefore needs ``a > 0``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import DivisionByZeroJet, EvalDomainError, ExprSyntaxError
from .jets import Jet2, compose_analytic, variable_jets

FUNCTION_NAMES = ("exp", "log", "sqrt", "sin", "cos", "tan", "sinh", "cosh", "tanh")
CONSTANTS = {"pi": math.pi, "e": math.e}


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str  # "x" or "y"


@dataclass(frozen=True)
class Const:
    name: str  # "pi" or "e"


@dataclass(frozen=True)
class Neg:
    arg: "Expression"


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * / ^
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expression"


Expression = Union[Num, Var, Const, Neg, Bin, Call]


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.lastgroup is None:
            # skip leading whitespace that the regex did not consume
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}", at)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


# ---------------------------------------------------------------------------
# recursive-descent parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, off = self.peek()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", off)
        return self.next()

    def parse(self) -> Expression:
        e = self.sum()
        kind, val, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {val!r}", off)
        return e

    def sum(self) -> Expression:
        e = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                e = Bin(val, e, self.term())
            else:
                return e

    def term(self) -> Expression:
        e = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                e = Bin(val, e, self.unary())
            else:
                return e

    def unary(self) -> Expression:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expression:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            # right-associative; a unary-minus exponent is allowed
            return Bin("^", base, self.unary())
        return base

    def atom(self) -> Expression:
        kind, val, off = self.next()
        if kind == "num":
            return Num(float(val))
        if kind == "ident":
            if val in ("x", "y"):
                return Var(val)
            if val in CONSTANTS:
                return Const(val)
            if val in FUNCTION_NAMES:
                self.expect_op("(")
                arg = self.sum()
                kind2, _, off2 = self.peek()
                if kind2 != "op" or self.peek()[1] != ")":
                    raise ExprSyntaxError("expected ')'", off2)
                self.next()
                return Call(val, arg)
            raise ExprSyntaxError(f"unknown identifier {val!r}", off)
        if kind == "op" and val == "(":
            e = self.sum()
            kind2, val2, off2 = self.peek()
            if kind2 != "op" or val2 != ")":
                raise ExprSyntaxError("expected ')'", off2)
            self.next()
            return e
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", off)
        raise ExprSyntaxError(f"unexpected token {val!r}", off)


def parse(text: str) -> Expression:
    """Parse ``text`` into an expression tree.

    Raises :class:`ExprSyntaxError` (with a byte offset) on malformed input.
    """
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# canonical printer
# ---------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def to_text(e: Expression) -> str:
    """Serialize an expression; ``parse(to_text(parse(t)))`` equals ``parse(t)``."""
    return _print(e, 0)


def _print(e: Expression, parent_prec: int) -> str:
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var) or isinstance(e, Const):
        return e.name
    if isinstance(e, Call):
        return f"{e.fn}({_print(e.arg, 0)})"
    if isinstance(e, Neg):
        s = "-" + _print(e.arg, _PREC["neg"])
        return f"({s})" if parent_prec > _PREC["neg"] else s
    if isinstance(e, Bin):
        p = _PREC[e.op]
        # left operand at own precedence, right one notch tighter for the
        # left-associative operators; '^' is right-associative so mirror it
        if e.op == "^":
            left = _print(e.left, p + 1)
            right = _print(e.right, p)
        else:
            left = _print(e.left, p)
            right = _print(e.right, p + 1)
        s = f"{left}{e.op}{right}"
        return f"({s})" if parent_prec > p else s
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# jet evaluation
# ---------------------------------------------------------------------------

_INT_EXP_LIMIT = 64


def eval_jet(e: Expression, point: tuple[float, float], degree: int) -> Jet2:
    """Truncated Taylor expansion of the expression at ``point``.

    Exact to the requested degree up to roundoff.  Raises
    :class:`EvalDomainError` naming the offending subexpression when the
    point leaves the smooth real domain (log of a non-positive value,
    division by zero, real power of a non-positive base).
    """
    xj, yj = variable_jets(point, degree)
    out = _eval(e, xj, yj, point)
    if not out.is_finite():
        raise EvalDomainError(f"non-finite value of {to_text(e)!r} at {point}")
    return out


def _eval(e: Expression, xj: Jet2, yj: Jet2, point) -> Jet2:
    if isinstance(e, Num):
        return Jet2.constant(e.value, xj.point, xj.deg)
    if isinstance(e, Const):
        return Jet2.constant(CONSTANTS[e.name], xj.point, xj.deg)
    if isinstance(e, Var):
        return xj if e.name == "x" else yj
    if isinstance(e, Neg):
        return -_eval(e.arg, xj, yj, point)
    if isinstance(e, Call):
        arg = _eval(e.arg, xj, yj, point)
        try:
            return compose_analytic(e.fn, arg)
        except (EvalDomainError, DivisionByZeroJet) as exc:
            raise EvalDomainError(f"{to_text(e)!r} at {point}: {exc}") from exc
    if isinstance(e, Bin):
        left = _eval(e.left, xj, yj, point)
        if e.op == "^":
            return _eval_pow(e, left, xj, yj, point)
        right = _eval(e.right, xj, yj, point)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        try:
            return left / right
        except DivisionByZeroJet as exc:
            raise EvalDomainError(f"{to_text(e)!r} at {point}: {exc}") from exc
    raise TypeError(f"not an expression node: {e!r}")


def _eval_pow(node: Bin, base: Jet2, xj: Jet2, yj: Jet2, point) -> Jet2:
    exp_jet = _eval(node.right, xj, yj, point)
    nonconst = any(v != 0.0 for i, row in enumerate(exp_jet.c) for j, v in enumerate(row)
                   if (i, j) != (0, 0))
    r = exp_jet.c[0][0]
    if not nonconst and abs(r - round(r)) < 1e-12 and abs(r) <= _INT_EXP_LIMIT:
        n = int(round(r))
        try:
            return base**n
        except DivisionByZeroJet as exc:
            raise EvalDomainError(f"{to_text(node)!r} at {point}: {exc}") from exc
    # real or non-constant exponent: exp(b*log(a)), a > 0 required
    try:
        log_base = compose_analytic("log", base)
        return compose_analytic("exp", exp_jet * log_base)
    except (EvalDomainError, DivisionByZeroJet) as exc:
        raise EvalDomainError(f"{to_text(node)!r} at {point}: {exc}") from exc
