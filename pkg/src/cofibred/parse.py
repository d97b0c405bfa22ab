"""Text syntax for rational functions and coefficient fields.

Grammar (whitespace is ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ['^' integer]
    base   := integer | 'z' | 'w' | '(' expr ')'

Rational constants are written as quotients of integers, e.g. ``3/4*z``.
The symbol ``w`` denotes the generator of an extension field.

Field specs are ``"Q"``, ``"Q(zeta_N)"`` and ``"Q[w]/(<poly in w>)"``.
"""

from __future__ import annotations

import re

from .algebra import QQ, Poly, cyclotomic_field, extension_field
from .algebra.fields import ExtensionField
from .errors import InvalidSpec, ParseError, UnknownSymbol
from .ratfun import FiberPoly, RatFun

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or not text[pos:].strip():
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, "an operator, number, symbol or '('")
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, field, symbols):
        self.text = text
        self.field = field
        self.symbols = symbols
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value or kind not in ("op",):
            raise ParseError(f"unexpected {v or 'end of input'!r}", pos, repr(value))

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, "an expression")
        value = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos, "an operator or end of input")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op, pos = self.take()[1:]
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_constant() and rhs.constant_value() == 0:
                    raise ParseError("division by zero", pos)
                value = value / rhs
        return value

    def factor(self):
        kind, v, pos = self.peek()
        if kind == "op" and v == "-":
            self.take()
            return -self.factor()
        value = self.base()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            kind, v, pos = self.take()
            if kind != "int":
                raise ParseError(f"unexpected {v or 'end of input'!r}", pos, "a non-negative integer exponent")
            value = value ** int(v)
        return value

    def base(self):
        kind, v, pos = self.take()
        if kind == "int":
            return RatFun.const(int(v), self.field)
        if kind == "name":
            if v not in self.symbols:
                raise UnknownSymbol(f"unknown symbol {v!r}", pos, " or ".join(map(repr, self.symbols)) or None)
            return self.symbols[v]
        if kind == "op" and v == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos, "a number, symbol or '('")


def _symbols(field, var="z"):
    syms = {var: RatFun.z(field)}
    if isinstance(field, ExtensionField):
        syms[field.name] = RatFun.const(field.gen, field)
    return syms


def parse_ratfun(text: str, field=QQ) -> RatFun:
    """Parse ``text`` into a normalized :class:`RatFun` over ``field``."""
    if isinstance(field, str):
        field = parse_field(field)
    if not isinstance(text, str):
        raise ParseError("expression must be a string", 0)
    return _Parser(text, field, _symbols(field)).parse()


def parse_poly(text: str, var: str = "z", field=QQ) -> Poly:
    """Parse a polynomial in ``var``."""
    p = _Parser(text, field, {var: RatFun.z(field)}).parse()
    if not p.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial in {var}", 0)
    return p.num


_CYCLO = re.compile(r"^Q\(\s*zeta_(\d+)\s*\)$")
_EXT = re.compile(r"^Q\[\s*([A-Za-z_]\w*)\s*\]\s*/\s*\((.*)\)$")


def parse_field(spec: str):
    """Field from a spec string; ``None`` and ``"Q"`` give the rationals."""
    if spec is None:
        return QQ
    s = spec.strip()
    if s in ("Q", "QQ"):
        return QQ
    m = _CYCLO.match(s)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise InvalidSpec(f"cyclotomic order must be positive in {spec!r}")
        return cyclotomic_field(n)
    m = _EXT.match(s)
    if m:
        name, body = m.group(1), m.group(2)
        try:
            modulus = parse_poly(body, name, QQ)
        except ParseError as exc:
            raise InvalidSpec(f"bad modulus in {spec!r}: {exc}") from exc
        return extension_field(modulus, name=name)
    raise InvalidSpec(f"unrecognized field spec {spec!r}; use Q, Q(zeta_N) or Q[w]/(poly)")


def format_ratfun(F: RatFun) -> str:
    """Canonical text of ``F``; :func:`parse_ratfun` inverts it."""
    return F.to_str("z")


def format_field(field) -> str:
    return field.spec


def format_fiber(N: FiberPoly) -> str:
    """``N(t, z)`` as a bivariate polynomial, ``t`` first, highest degree first."""
    terms = N.terms()
    if not terms:
        return "0"
    out = []
    for (i, j) in sorted(terms, key=lambda ij: (-ij[0], -ij[1])):
        mono = "*".join(m for m in (_mono("t", i), _mono("z", j)) if m)
        cs = Poly((terms[(i, j)],), N.base).to_str("w" if not isinstance(N.base, ExtensionField) else N.base.name)
        if not mono:
            out.append(cs)
        elif cs == "1":
            out.append(mono)
        elif cs == "-1":
            out.append("-" + mono)
        else:
            if any(ch in cs[1:] for ch in "+-"):
                cs = f"({cs})"
            out.append(f"{cs}*{mono}")
    text = out[0]
    for t in out[1:]:
        text += " - " + t[1:] if t.startswith("-") else " + " + t
    return text


def _mono(var, k):
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"
