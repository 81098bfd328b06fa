"""Expression grammar for series of Laurent elements, and the inverse
formatter.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | IDENT | '(' expr ')'

Identifiers: z0..z9, zb0..zb9, x (and its alias y, the metric quadratic),
the imaginary unit i, and the deformation parameter l.  Division works
whenever the divisor is invertible as a truncated series (scalars, powers
of x, and unit series like 1 + l*x); rational literals such as 1/2 fall
out of that for free.
"""

from __future__ import annotations

import re

from .poly import LaurentElem, VarSpace
from .scalar import GaussianRational
from .series import Series


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            break
        number, ident, op = m.groups()
        start = m.end() - len((number or ident or op))
        if number is not None:
            tokens.append(("num", int(number), start))
        elif ident is not None:
            tokens.append(("ident", ident, start))
        elif op in "+-*/^()":
            tokens.append(("op", op, start))
        elif op.strip():
            raise ParseError(f"unexpected character {op!r}", start)
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, space: VarSpace, order: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.space = space
        self.order = order

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    # ------------------------------------------------------------------
    def const(self, value) -> Series:
        return Series.const(LaurentElem.scalar(self.space, value), self.order)

    def parse(self) -> Series:
        v = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {val!r}", pos)
        return v

    def expr(self) -> Series:
        v = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                v = v + rhs if val == "+" else v - rhs
            else:
                return v

    def term(self) -> Series:
        v = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.unary()
                if val == "*":
                    v = v * rhs
                else:
                    try:
                        v = v * rhs.invert()
                    except (ValueError, ZeroDivisionError) as e:
                        raise ParseError(f"divisor is not invertible: {e}", pos) from None
            else:
                return v

    def unary(self) -> Series:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self) -> Series:
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            sign = 1
            kind, val, pos = self.peek()
            if kind == "op" and val == "-":
                self.next()
                sign = -1
            kind, val, pos = self.next()
            if kind != "num":
                raise ParseError("exponent must be an integer", pos)
            e = sign * val
            if e >= 0:
                return base.pow(e)
            try:
                return base.invert().pow(-e)
            except (ValueError, ZeroDivisionError) as err:
                raise ParseError(
                    f"negative power of a non-invertible expression: {err}", pos
                ) from None
        return base

    def atom(self) -> Series:
        kind, val, pos = self.next()
        if kind == "num":
            return self.const(val)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        if kind == "ident":
            return self.ident(val, pos)
        raise ParseError(f"unexpected token {val!r}", pos)

    def ident(self, name: str, pos: int) -> Series:
        space = self.space
        if name == "i":
            return self.const(GaussianRational(0, 1))
        if name == "l":
            out = Series.const(LaurentElem.zero_of(space), self.order)
            if self.order >= 1:
                out.coeffs[1] = LaurentElem.one_of(space)
            return out
        if name in ("x", "y"):
            # y is the metric quadratic of the active space; with the
            # definite metric it coincides with x, so both names resolve
            # to the same element
            return Series.const(LaurentElem.x_power(space, 1), self.order)
        m = re.fullmatch(r"(zb?)(\d+)", name)
        if m:
            k = int(m.group(2))
            if k > space.n:
                raise ParseError(f"unknown variable {name!r} (n = {space.n})", pos)
            idx = space.iz(k) if m.group(1) == "z" else space.izb(k)
            return Series.const(LaurentElem.variable(space, idx), self.order)
        raise ParseError(f"unknown identifier {name!r}", pos)


def parse_expr(text: str, space: VarSpace, order: int) -> Series:
    """Parse an expression into a series of Laurent elements."""
    return _Parser(text, space, order).parse()


# ----------------------------------------------------------------------
# formatting (round-trips through parse_expr)


def _format_coeff(c: GaussianRational) -> str:
    re_, im = c.re, c.im
    if im == 0:
        return f"{re_}" if re_ >= 0 else f"({re_})"
    if re_ == 0:
        return f"({im}*i)" if im >= 0 else f"(-{-im}*i)"
    sign = "+" if im >= 0 else "-"
    return f"({re_}{sign}{abs(im)}*i)"


def format_elem(e: LaurentElem) -> str:
    space = e.space
    if e.num.is_zero():
        return "0"
    from . import sparse

    parts = []
    for key, c in e.num.sorted_items():
        factors = [_format_coeff(c)]
        exps = sparse.unpack(key, space.nvars)
        for idx, exp in enumerate(exps):
            if exp:
                name = space.var_names[idx]
                factors.append(name if exp == 1 else f"{name}^{exp}")
        parts.append("*".join(factors))
    body = " + ".join(parts)
    if e.mz:
        xp = -e.mz
        body = f"({body})*x^{xp}" if xp != 1 else f"({body})*x"
    if space.two_point and e.mw:
        raise ValueError("two-point elements have no printable grammar")
    return body


def format_series(s: Series) -> str:
    parts = []
    for m, c in enumerate(s.coeffs):
        if hasattr(c, "is_zero") and c.is_zero():
            continue
        body = format_elem(c) if isinstance(c, LaurentElem) else str(c)
        if m == 0:
            parts.append(f"({body})")
        elif m == 1:
            parts.append(f"({body})*l")
        else:
            parts.append(f"({body})*l^{m}")
    return " + ".join(parts) if parts else "0"
