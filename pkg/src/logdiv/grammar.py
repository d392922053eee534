"""ASCII grammar for polynomials and differential operators.

Variables are ``x1..xN`` (aliases ``x,y,z,w`` when N <= 4), derivatives are
``dx1..dxN`` (aliases ``dx,dy,dz,dw``); literals are integers or integer
fractions like ``3/4``; the operators are ``+ - * ^`` with parentheses.
In operator mode ``*`` is composition in the Weyl algebra, so parsed input
comes out normally ordered.  The parser round-trips the printers in
``poly`` and ``weyl``.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial
from .weyl import WeylOperator, compose


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


_OPS = set("+-*^/()")


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, line, col))
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("EOF", "", line, col))
    return tokens


_ALIAS_INDEX = {"x": 0, "y": 1, "z": 2, "w": 3}


def _resolve_name(name, nvars, allow_d, line, col):
    """Return ('var'|'dvar', index)."""
    kind = "var"
    body = name
    if name.startswith("d") and len(name) > 1:
        if allow_d:
            kind, body = "dvar", name[1:]
        # fall through: in polynomial mode 'dx' is just an unknown name
    idx = None
    if body in _ALIAS_INDEX and nvars <= 4:
        idx = _ALIAS_INDEX[body]
    elif body.startswith("x") and body[1:].isdigit():
        idx = int(body[1:]) - 1
    if kind == "var" and idx is None and allow_d is False and name.startswith("d"):
        raise ParseError(f"unknown variable {name!r} (derivatives are not "
                         "allowed in a polynomial)", line, col)
    if idx is None or not 0 <= idx < nvars:
        raise ParseError(f"unknown variable {name!r} in a ring with "
                         f"{nvars} variable(s)", line, col)
    return kind, idx


class _Parser:
    def __init__(self, text, nvars, operator_mode):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.nvars = nvars
        self.operator_mode = operator_mode

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], tok[3])

    # algebra hooks ------------------------------------------------------

    def const(self, c):
        if self.operator_mode:
            return WeylOperator.constant(self.nvars, c)
        return Polynomial.constant(self.nvars, c)

    def atom_var(self, kind, idx):
        if kind == "dvar":
            return WeylOperator.partial(self.nvars, idx)
        if self.operator_mode:
            return WeylOperator.from_polynomial(
                Polynomial.variable(self.nvars, idx))
        return Polynomial.variable(self.nvars, idx)

    def mul(self, a, b):
        if self.operator_mode:
            return compose(a, b)
        return a * b

    # grammar --------------------------------------------------------------

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "EOF":
            self.error(f"unexpected {tok[1]!r}")
        return value

    def expr(self):
        if self.peek()[0] == "-":
            self.next()
            value = -self.term()
        else:
            value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "*":
            self.next()
            value = self.mul(value, self.unary())
        return value

    def unary(self):
        if self.peek()[0] == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.next()
            tok = self.next()
            if tok[0] != "INT":
                self.error("exponent must be a nonnegative integer", tok)
            k = int(tok[1])
            value = self.const(1)
            for _ in range(k):
                value = self.mul(value, base)
            return value
        return base

    def atom(self):
        tok = self.next()
        if tok[0] == "INT":
            num = int(tok[1])
            if self.peek()[0] == "/":
                self.next()
                den = self.next()
                if den[0] != "INT" or int(den[1]) == 0:
                    self.error("expected a nonzero integer denominator", den)
                return self.const(Fraction(num, int(den[1])))
            return self.const(num)
        if tok[0] == "NAME":
            kind, idx = _resolve_name(tok[1], self.nvars,
                                      self.operator_mode, tok[2], tok[3])
            return self.atom_var(kind, idx)
        if tok[0] == "(":
            value = self.expr()
            closing = self.next()
            if closing[0] != ")":
                self.error("expected ')'", closing)
            return value
        self.error(f"unexpected {tok[1]!r}" if tok[0] != "EOF"
                   else "unexpected end of input", tok)


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    return _Parser(text, nvars, operator_mode=False).parse()


def parse_operator(text: str, nvars: int) -> WeylOperator:
    return _Parser(text, nvars, operator_mode=True).parse()
