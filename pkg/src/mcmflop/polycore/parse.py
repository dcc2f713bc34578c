"""Text grammar for polynomials.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | <juxtaposition>) unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | IDENT | '(' expr ')'

Division is only allowed by nonzero constants, so ``3/2*x^2`` and ``x/2``
parse but ``x/y`` does not.
"""

from __future__ import annotations

import re
from typing import Sequence

from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}, col {col}: " if col is not None else f"line {line}: "
        elif col is not None:
            where = f"col {col}: "
        super().__init__(where + message)


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("id", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: tuple[str, ...], line: int | None, col0: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.line = line
        self.col0 = col0

    def error(self, msg: str, tok=None):
        tok = tok or self.toks[self.i]
        raise ParseError(msg, self.line, self.col0 + tok[2] + 1)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.unary()
            elif kind == "op" and val == "/":
                tok = self.take()
                q = self.unary()
                if not q.is_constant() or q.is_zero():
                    self.error("division only by nonzero constants", tok)
                p = p.scale(1 / q.constant_term())
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                p = p * self.unary()
            else:
                return p

    def unary(self) -> Poly:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind != "num":
                self.error("exponent must be a non-negative integer")
            self.take()
            return base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            return Poly.const(self.ring, int(val))
        if kind == "id":
            if val not in self.ring:
                self.error(f"unknown variable {val!r} (ring is {' '.join(self.ring)})")
            self.take()
            return Poly.var(self.ring, val)
        if kind == "op" and val == "(":
            self.take()
            p = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return p
        if kind == "end":
            self.error("unexpected end of expression")
        self.error(f"unexpected token {val!r}")


def parse_poly(text: str, ring: Sequence[str], line: int | None = None, col: int = 0) -> Poly:
    """Parse ``text`` as a polynomial in ``ring``.

    ``line``/``col`` locate the text inside a larger document for error messages.
    """
    p = _Parser(text, tuple(ring), line, col)
    if p.peek()[0] == "end":
        p.error("empty expression")
    out = p.expr()
    if p.peek()[0] != "end":
        p.error(f"unexpected token {p.peek()[1]!r}")
    return out
