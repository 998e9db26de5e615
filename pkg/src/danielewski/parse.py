"""Recursive descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' natural)?
    atom   := identifier | integer | '(' expr ')'

Division is only allowed by nonzero constants. Unary minus binds looser
than '^', so -x^2 is -(x^2). There is no implicit multiplication.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .poly import ParamField, Polynomial

__all__ = ["tokenize", "parse_expr", "resolve_name"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text):
    """List of (kind, value, position); kind is 'int', 'name', 'op' or 'end'."""
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", int(num), m.start(1)))
        elif name is not None:
            out.append(("name", name, m.start(2)))
        elif op is not None:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}", text, m.start(3))
            out.append(("op", op, m.start(3)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def resolve_name(name, ring):
    """Polynomial for an identifier: a ring variable, a parameter or a lower-case alias."""
    if name in ring.index:
        return ring.gen(name)
    field = ring.field
    if isinstance(field, ParamField) and name in field.params:
        return ring.constant(field.param(name))
    if name.upper() in ring.index and name.islower():
        return ring.gen(name.upper())
    return None


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok[2])

    def expect(self, op):
        tok = self.peek()
        if tok != ("op", op, tok[2]):
            self.fail(f"expected {op!r}")
        return self.take()

    def parse(self):
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, op, _ = self.peek()
            if kind == "op" and op in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if op == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, op, _ = self.peek()
            if kind == "op" and op in "*/":
                self.take()
                tok = self.peek()
                rhs = self.factor()
                if op == "*":
                    value = value * rhs
                else:
                    if not rhs.is_constant() or rhs.is_zero():
                        self.fail("division is only allowed by a nonzero constant", tok)
                    value = value.scale(self.ring.field.one / rhs.constant_coeff())
            else:
                return value

    def factor(self):
        kind, op, _ = self.peek()
        if kind == "op" and op == "-":
            self.take()
            return -self.factor()
        value = self.atom()
        kind, op, _ = self.peek()
        if kind == "op" and op == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("expected a natural number exponent", tok)
            self.take()
            value = value ** tok[1]
        return value

    def atom(self):
        tok = self.peek()
        kind, val, _ = tok
        if kind == "int":
            self.take()
            return self.ring.constant(val)
        if kind == "name":
            self.take()
            p = resolve_name(val, self.ring)
            if p is None:
                self.fail(f"unknown identifier {val!r}", tok)
            return p
        if kind == "op" and val == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {val!r}", tok)


def parse_expr(text: str, ring) -> Polynomial:
    """Parse ``text`` into a Polynomial of ``ring``."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    return _Parser(text, ring).parse()
