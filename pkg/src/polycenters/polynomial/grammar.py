"""Text and JSON serialisation of bivariate polynomials.

Grammar (whitespace insensitive)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/")? unary)*      # juxtaposition multiplies
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") INTEGER)?
    atom   := NUMBER | "x" | "y" | "(" expr ")"

Numbers may be integers, decimals (converted exactly, ``0.63 -> 63/100``) or
use an exponent suffix. Division is only allowed by constants.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .bivariate import BiPoly

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<op>\*\*|[-+*/^()])|(?P<var>[xy])|(?P<bad>\S))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            line, col = _position(text, start)
            raise ParseError(f"unexpected character {m.group(kind)!r}", line, col)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok=None):
        tok = tok or self.peek()
        line, col = _position(self.text, tok[2])
        raise ParseError(msg, line, col)

    def parse(self) -> BiPoly:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> BiPoly:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> BiPoly:
        p = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in ("*", "/"):
                self.take()
                q = self.unary()
                if val == "*":
                    p = p * q
                else:
                    if not q.is_constant() or q.is_zero():
                        self.fail("division is only allowed by a nonzero constant",
                                  self.tokens[self.i - 1])
                    p = p / q.constant_term()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                p = p * self.unary()
            else:
                return p

    def unary(self) -> BiPoly:
        kind, val, _ = self.peek()
        if kind == "op" and val in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self) -> BiPoly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val in ("^", "**"):
            self.take()
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                self.fail("exponent must be a non-negative integer", tok)
            return base ** int(tok[1])
        return base

    def atom(self) -> BiPoly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return BiPoly.const(parse_number(val))
        if kind == "var":
            return BiPoly.x() if val == "x" else BiPoly.y()
        if kind == "op" and val == "(":
            p = self.expr()
            if self.peek()[1] != ")":
                self.fail("missing ')'")
            self.take()
            return p
        self.fail(f"unexpected token {val!r}" if val else "unexpected end of input", tok)


def parse_number(text: str) -> Fraction:
    """Exact rational value of a decimal literal."""
    return Fraction(text)


def parse_poly(text: str) -> BiPoly:
    """Parse a polynomial in ``x`` and ``y``.

    Raises
    ------
    ParseError
        With the line and column of the first offending token.
    """
    return _Parser(text).parse()


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_mono(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def format_poly(p: BiPoly) -> str:
    """Render ``p`` in the parser grammar, highest degree first."""
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))
    out = []
    for k, ((i, j), c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        mono = _fmt_mono(i, j)
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def to_json_terms(p: BiPoly) -> list[dict]:
    """JSON term list ``[{"i", "j", "num", "den"}]`` sorted by exponents."""
    return [
        {"i": i, "j": j, "num": str(c.numerator), "den": str(c.denominator)}
        for (i, j), c in p.items()
    ]


def from_json_terms(terms: list[dict]) -> BiPoly:
    """Inverse of :func:`to_json_terms`."""
    acc: dict = {}
    for t in terms:
        try:
            e = (int(t["i"]), int(t["j"]))
            c = Fraction(int(t["num"]), int(t.get("den", 1)))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad JSON term {t!r}: {exc}") from exc
        if e[0] < 0 or e[1] < 0:
            raise ParseError(f"negative exponent in JSON term {t!r}")
        acc[e] = acc.get(e, 0) + c
    return BiPoly(acc)
