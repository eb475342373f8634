"""Parser for operator expression text used by the apply subcommand.

Grammar (whitespace-insensitive)::

    expr     := atom | combin
    combin   := "compose" "(" expr ("," expr)+ ")"
              | "add"     "(" expr ("," expr)+ ")"
              | "scale"   "(" scalar "," expr ")"
              | "comm"    "(" expr "," expr ")"
              | "acomm"   "(" expr "," expr ")"
    atom     := NAME [ "(" arg ("," arg)* ")" ]

Signed primitives take a sign and an axis, e.g. ``gamma(+,1)``; family
atoms (``dz``, ``Ez``, ``beta``, ...) take no arguments and are built for
the dimension and convention supplied by the caller.
"""

from __future__ import annotations

import re

from . import dirac, operators
from .scalars import Scalar

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|[(),]|[+-]?[0-9/]+i?|[+-])")


class ExprError(Exception):
    """Unparseable operator expression."""


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprError(f"bad token at {text[pos:pos+10]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


_SIGNED = {
    "gamma": operators.gamma,
    "vartheta": operators.vartheta,
    "xi": operators.xi,
    "upsilon": operators.upsilon,
    "witt": operators.witt,
    "T": operators.shift_op,
    "D": operators.diff_op,
    "M": operators.coord_shift,
}

_AXIS_ONLY = {
    "X": operators.coord_mul,
    "nabla": operators.nabla,
    "nablaTilde": operators.nabla_tilde,
}

_FAMILY = {
    "dplus": "d_plus",
    "dminus": "d_minus",
    "dirac": "dirac",
    "dz": "dz",
    "dzdag": "dzdag",
    "dX": "dX",
    "dXbar": "dXbar",
    "z": "z",
    "zdag": "zdag",
    "Xvar": "X",
    "Xbarvar": "Xbar",
    "Ez": "E_z",
    "Ezdag": "E_zdag",
    "beta": "beta",
    "Gz": "Gamma_z",
    "Gzdag": "Gamma_zdag",
    "EX": "E_X",
    "GX": "Gamma_X",
    "GXbar": "Gamma_Xbar",
}


class _Parser:
    def __init__(self, tokens, n, convention):
        self.tokens = tokens
        self.pos = 0
        self.n = n
        self.convention = convention
        self._family = None

    def family(self):
        if self._family is None:
            self._family = dirac.build_family(self.n, self.convention)
        return self._family

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        if expect is not None and tok != expect:
            raise ExprError(f"expected {expect!r}, got {tok!r}")
        self.pos += 1
        return tok

    def parse(self):
        expr = self.expr()
        if self.peek() is not None:
            raise ExprError(f"trailing input at {self.peek()!r}")
        return expr

    def expr(self):
        name = self.take()
        if name == "compose" or name == "add":
            parts = self.args_exprs()
            if len(parts) < 2:
                raise ExprError(f"{name} needs at least two operands")
            build = operators.compose if name == "compose" else operators.opsum
            return build(*parts)
        if name == "scale":
            self.take("(")
            s = Scalar.from_text(self.take())
            self.take(",")
            op = self.expr()
            self.take(")")
            return op.scaled(s)
        if name in ("comm", "acomm"):
            self.take("(")
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take(")")
            builder = operators.commutator if name == "comm" else operators.anticommutator
            return builder(a, b)
        if name == "id":
            return operators.Operator.identity()
        if name in _SIGNED:
            self.take("(")
            sign_tok = self.take()
            if sign_tok not in ("+", "-"):
                raise ExprError(f"{name} needs a sign, got {sign_tok!r}")
            self.take(",")
            axis = self.axis()
            self.take(")")
            return _SIGNED[name](1 if sign_tok == "+" else -1, axis)
        if name in _AXIS_ONLY:
            self.take("(")
            axis = self.axis()
            self.take(")")
            return _AXIS_ONLY[name](axis)
        if name in _FAMILY:
            return getattr(self.family(), _FAMILY[name])
        raise ExprError(f"unknown operator {name!r}")

    def args_exprs(self):
        self.take("(")
        parts = [self.expr()]
        while self.peek() == ",":
            self.take(",")
            parts.append(self.expr())
        self.take(")")
        return parts

    def axis(self):
        tok = self.take()
        try:
            axis = int(tok)
        except ValueError:
            raise ExprError(f"expected an axis number, got {tok!r}") from None
        if not 1 <= axis <= self.n:
            raise ExprError(f"axis {axis} out of range 1..{self.n}")
        return axis


def parse_expression(text, n, convention=dirac.DEFAULT_CONVENTION):
    """Parse operator text into an Operator for dimension n."""
    return _Parser(_tokenize(text), n, convention).parse()
