"""Expression trees for inequality disjuncts, in prefix notation.

Tokens::

    + - * /            binary arithmetic
    neg sqrt atan      unary
    const <decimal>    decimal literal, enclosed outward in interval modes
    const <name>       named constant (pi, t_dod, M_dod, ...)
    var_<i>            variable i (0-based)
    eta a b c          circumradius of a triangle from side lengths
    delta x1 .. x6     Cayley-Menger polynomial of six squared edge lengths
    quo a b c          quoin volume
    phi h t lv ls      phi(h, t, (lv, ls))
    afun h t lv ls     A(h, t, (lv, ls))
    azim y1 .. y6      dihedral angle along the first edge, from edge lengths
    sol y1 .. y6       solid angle at the apex
    omega y1 .. y6     volume of the truncated cell in the simplex
    mu y1 .. y6        omega - M_dod * sol

Six-edge primitives take their arguments in the order (|v1|, |v2|, |v3|,
|v2 v3|, |v1 v3|, |v1 v2|).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .. import geom
from ..geom.caps import LambdaPair
from ..geom.simplex import delta6
from ..ival import Interval
from ..ival import constants as K

ARITY = {
    "+": 2, "-": 2, "*": 2, "/": 2,
    "neg": 1, "sqrt": 1, "atan": 1,
    "eta": 3, "quo": 3, "phi": 4, "afun": 4,
    "delta": 6, "azim": 6, "sol": 6, "omega": 6, "mu": 6,
}

_VAR = re.compile(r"var_(\d+)$")


class ExprSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Expr:
    op: str
    args: tuple = ()
    value: object = None

    def size(self) -> int:
        return 1 + sum(a.size() for a in self.args)

    def variables(self) -> set:
        if self.op == "var":
            return {self.value}
        out = set()
        for a in self.args:
            out |= a.variables()
        return out

    def to_prefix(self) -> str:
        if self.op == "var":
            return f"var_{self.value}"
        if self.op == "const":
            return f"const {self.value}"
        return " ".join([self.op] + [a.to_prefix() for a in self.args])

    def __str__(self):
        return self.to_prefix()

    # convenience builders for tests and callers
    def __add__(self, o):
        return Expr("+", (self, _wrap(o)))

    def __sub__(self, o):
        return Expr("-", (self, _wrap(o)))

    def __mul__(self, o):
        return Expr("*", (self, _wrap(o)))

    def __truediv__(self, o):
        return Expr("/", (self, _wrap(o)))

    def __neg__(self):
        return Expr("neg", (self,))


def var(i: int) -> Expr:
    return Expr("var", (), i)


def const(text) -> Expr:
    text = str(text)
    _const_interval(text)
    return Expr("const", (), text)


def call(op: str, *args) -> Expr:
    if ARITY.get(op) != len(args):
        raise ExprSyntaxError(f"{op} takes {ARITY.get(op)} arguments")
    return Expr(op, tuple(_wrap(a) for a in args))


def _wrap(x):
    if isinstance(x, Expr):
        return x
    return const(repr(x) if isinstance(x, float) else x)


def parse(text: str) -> Expr:
    tokens = text.split()
    expr, pos = _parse(tokens, 0)
    if pos != len(tokens):
        raise ExprSyntaxError(f"trailing tokens: {' '.join(tokens[pos:])}")
    return expr


def _parse(tokens, pos):
    if pos >= len(tokens):
        raise ExprSyntaxError("unexpected end of expression")
    tok = tokens[pos]
    if tok == "const":
        if pos + 1 >= len(tokens):
            raise ExprSyntaxError("const needs a value")
        return const(tokens[pos + 1]), pos + 2
    m = _VAR.match(tok)
    if m:
        return var(int(m.group(1))), pos + 1
    if tok not in ARITY:
        raise ExprSyntaxError(f"unknown token {tok!r}")
    args = []
    pos += 1
    for _ in range(ARITY[tok]):
        a, pos = _parse(tokens, pos)
        args.append(a)
    return Expr(tok, tuple(args)), pos


def _const_interval(text: str) -> Interval:
    if text in K.CONSTANTS:
        return K.constant(text)
    try:
        return Interval.from_decimal(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ExprSyntaxError(f"bad constant {text!r}") from exc


class _Mode:
    """How constants enter an evaluation: as floats, intervals or jets."""

    def __init__(self, kind, lift=None):
        self.kind = kind
        self.lift = lift

    def const(self, text):
        if self.kind == "float":
            if text in K.CONSTANTS:
                return K.constant(text).mid
            return float(Fraction(text))
        iv = _const_interval(text)
        return iv if self.lift is None else self.lift(iv)

    def t(self):
        return K.t_dod().mid if self.kind == "float" else K.t_dod()

    def m(self):
        return K.m_dod().mid if self.kind == "float" else K.m_dod()


def _eval(e: Expr, env, mode: _Mode):
    op = e.op
    if op == "var":
        return env[e.value]
    if op == "const":
        return mode.const(e.value)
    a = [_eval(x, env, mode) for x in e.args]
    if op == "+":
        return a[0] + a[1]
    if op == "-":
        return a[0] - a[1]
    if op == "*":
        return a[0] * a[1]
    if op == "/":
        return a[0] / a[1]
    if op == "neg":
        return -a[0]
    if op == "sqrt":
        return geom.scalar.sqrt(a[0])
    if op == "atan":
        return geom.scalar.atan(a[0])
    if op == "eta":
        return geom.eta(*a)
    if op == "quo":
        return geom.quo(*a)
    if op in ("phi", "afun"):
        # lambda coefficients are exact data, not variables
        for x in e.args[2:]:
            if x.op != "const":
                raise ExprSyntaxError(f"{op}: lambda coefficients must be constants")
        lam = LambdaPair(float(Fraction(e.args[2].value)), float(Fraction(e.args[3].value)))
        fn = geom.phi if op == "phi" else geom.a_fun
        return fn(a[0], a[1], lam)
    if op == "delta":
        return delta6(*a)
    if op == "azim":
        return geom.dih_y(*a)
    if op == "sol":
        return geom.sol_y(*a)
    if op == "omega":
        return geom.omega_simplex_y(*a, t=mode.t())
    if op == "mu":
        return geom.mu_simplex_y(*a, t=mode.t(), m=mode.m())
    raise ExprSyntaxError(f"unknown operator {op!r}")


def eval_float(e: Expr, point) -> float:
    return _eval(e, [float(x) for x in point], _Mode("float"))


def eval_interval(e: Expr, box) -> Interval:
    """Natural interval extension of ``e`` over ``box`` (a Box or a sequence
    of intervals)."""
    env = [x if isinstance(x, Interval) else Interval.point(x) for x in box]
    out = _eval(e, env, _Mode("interval"))
    return out if isinstance(out, Interval) else Interval.point(out)


def eval_generic(e: Expr, env, lift):
    """Evaluate with caller-supplied variable values (for instance jets);
    ``lift`` turns constant intervals into the same kind."""
    return _eval(e, env, _Mode("interval", lift))
