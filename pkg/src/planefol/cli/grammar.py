"""Input grammar for foliations and curves.

A document holds one definition line (blank lines and ``#`` comments are
ignored)::

    omega = 3*x^2 dx - 2*y dy
    curve = y^2 - x^3

Coefficients are Gaussian rationals (``3``, ``-1/2``, ``i``, ``(2+3*i)/5``),
``**`` is accepted for ``^`` and juxtaposition means multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra import BiPoly
from ..algebra.numbers import QI, GaussianRational
from ..errors import NonZeroConstantTerm, ParseError
from ..foliation import OneForm

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()=])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            out.append(Token(kind, "^" if tok == "**" else tok, line, pos + 1))
        pos = m.end()
    out.append(Token("end", "", line, len(text) + 1))
    return out


@dataclass(frozen=True)
class _Value:
    """f0 + fa*dx + fb*dy while parsing."""

    f0: BiPoly
    fa: BiPoly
    fb: BiPoly

    @property
    def has_differential(self) -> bool:
        return not (self.fa.is_zero() and self.fb.is_zero())

    def constant(self) -> GaussianRational | None:
        if self.has_differential or any(e != (0, 0) for e in self.f0.terms):
            return None
        return self.f0.constant_term().as_gaussian()


def _poly(p: BiPoly) -> _Value:
    z = BiPoly.zero(QI)
    return _Value(p, z, z)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        t = tok or self.tok
        return ParseError(msg, t.line, t.column)

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            what = self.tok.text or "end of line"
            raise self.error(f"expected {text!r}, found {what!r}")
        return self.advance()

    def expr(self) -> _Value:
        sign = 1
        if self.tok.text in "+-" and self.tok.kind == "op":
            sign = -1 if self.advance().text == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = _Value(-acc.f0, -acc.fa, -acc.fb)
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.advance().text
            rhs = self.term()
            if op == "+":
                acc = _Value(acc.f0 + rhs.f0, acc.fa + rhs.fa, acc.fb + rhs.fb)
            else:
                acc = _Value(acc.f0 - rhs.f0, acc.fa - rhs.fa, acc.fb - rhs.fb)
        return acc

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def term(self) -> _Value:
        acc = self.power()
        while True:
            t = self.tok
            if t.kind == "op" and t.text == "*":
                self.advance()
                acc = self._mul(acc, self.power(), t)
            elif t.kind == "op" and t.text == "/":
                self.advance()
                rhs = self.power()
                c = rhs.constant()
                if c is None:
                    raise self.error("only division by a constant is allowed", t)
                if not c:
                    raise self.error("division by zero", t)
                inv = QI(c).inverse()
                acc = _Value(acc.f0.scale(inv), acc.fa.scale(inv), acc.fb.scale(inv))
            elif self._starts_atom():
                acc = self._mul(acc, self.power(), t)
            else:
                return acc

    def _mul(self, u: _Value, v: _Value, tok: Token) -> _Value:
        if u.has_differential and v.has_differential:
            raise self.error("product of two differentials", tok)
        return _Value(u.f0 * v.f0, u.f0 * v.fa + v.f0 * u.fa, u.f0 * v.fb + v.f0 * u.fb)

    def power(self) -> _Value:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            t = self.advance()
            if self.tok.kind != "num":
                raise self.error("exponent must be a nonnegative integer")
            n = int(self.advance().text)
            if base.has_differential and n != 1:
                raise self.error("powers of differentials are not allowed", t)
            if n != 1:
                base = _poly(base.f0 ** n)
        return base

    def atom(self) -> _Value:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return _poly(BiPoly.const(int(t.text), QI))
        if t.kind == "name":
            self.advance()
            z = BiPoly.zero(QI)
            one = BiPoly.const(1, QI)
            if t.text == "x":
                return _poly(BiPoly.x(QI))
            if t.text == "y":
                return _poly(BiPoly.y(QI))
            if t.text == "i":
                return _poly(BiPoly.const(GaussianRational(0, 1), QI))
            if t.text == "dx":
                return _Value(z, one, z)
            if t.text == "dy":
                return _Value(z, z, one)
            raise self.error(f"unknown symbol {t.text!r}", t)
        if t.kind == "op" and t.text == "(":
            self.advance()
            v = self.expr()
            self.expect(")")
            return v
        raise self.error(f"unexpected {t.text or 'end of line'!r}", t)


@dataclass
class InputDocument:
    kind: str  # "foliation" or "curve"
    name: str
    text: str
    payload: object  # OneForm or BiPoly
    raw: object = None  # unsaturated form, if saturation changed it
    warnings: list = field(default_factory=list)

    def serialize(self) -> str:
        if self.kind == "curve":
            return f"{self.name} = {self.payload}"
        return f"{self.name} = {format_form(self.payload)}"


def format_form(omega: OneForm) -> str:
    parts = []
    if not omega.a.is_zero():
        parts.append(f"({omega.a}) dx")
    if not omega.b.is_zero():
        parts.append(f"({omega.b}) dy")
    return " + ".join(parts)


def _definition_line(text: str) -> tuple[int, str]:
    found = None
    for n, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        if found is not None:
            raise ParseError("only one definition per document", n, 1)
        found = (n, body)
    if found is None:
        raise ParseError("empty document", 1, 1)
    return found


def parse_input(text: str) -> InputDocument:
    """Parse ``omega = ...`` or ``curve = ...`` into an exact payload."""
    lineno, line = _definition_line(text)
    toks = tokenize(line, lineno)
    p = _Parser(toks)
    head = p.tok
    if head.kind != "name":
        raise p.error("a definition starts with a name, e.g. 'omega =' or 'curve ='")
    p.advance()
    p.expect("=")
    value = p.expr()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    if value.has_differential:
        if not value.f0.is_zero():
            raise ParseError("every term of a 1-form needs dx or dy", lineno, head.column)
        a, b = value.fa, value.fb
        if not (a.constant_term().is_zero() and b.constant_term().is_zero()):
            raise NonZeroConstantTerm("the form does not vanish at the origin", lineno, head.column)
        omega, g = OneForm.make_with_divisor(a, b)
        doc = InputDocument("foliation", head.text, line.strip(), omega)
        if not g.is_constant():
            doc.raw = OneForm(a, b)
            doc.warnings.append(f"saturated: removed common factor {g}")
        return doc
    f = value.f0
    if f.is_zero():
        raise ParseError("the curve equation is identically zero", lineno, head.column)
    if not f.constant_term().is_zero():
        raise NonZeroConstantTerm("the curve does not pass through the origin", lineno, head.column)
    return InputDocument("curve", head.text, line.strip(), f)
