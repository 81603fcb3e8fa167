"""Polynomial expressions and session files.

Polynomials use ``+ - * ^``, parentheses, integer literals and division by
an integer literal.  Juxtaposition (``2x``, ``x y``) is rejected.
"""

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import CoefficientError, ChiwbError, ParseError
from .field import Field, QQ
from .poly import Polynomial, RingContext

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()\[\],;=:])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - start + 1))
    return tokens


class _Stream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    @property
    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text):
        return self.peek.text == text and self.peek.kind in ("op", "name")

    def error(self, message, tok=None):
        tok = tok or self.peek
        shown = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message}, found {shown}", tok.line, tok.column)

    def expect(self, text):
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self.next()

    def expect_kind(self, kind, what):
        if self.peek.kind != kind:
            raise self.error(f"expected {what}")
        return self.next()


def _field_const(ring, tok, value):
    try:
        return ring.const(ring.field(value))
    except CoefficientError as exc:
        raise ParseError(str(exc), tok.line, tok.column) from None


def _expr(s, ring):
    sign = None
    if s.at("+") or s.at("-"):
        sign = s.next().text
    acc = _term(s, ring)
    if sign == "-":
        acc = -acc
    while s.at("+") or s.at("-"):
        op = s.next().text
        t = _term(s, ring)
        acc = acc + t if op == "+" else acc - t
    return acc


def _term(s, ring):
    acc = _factor(s, ring)
    while s.at("*") or s.at("/"):
        op = s.next().text
        if op == "*":
            acc = acc * _factor(s, ring)
            continue
        tok = s.expect_kind("num", "an integer divisor")
        d = int(tok.text)
        if d == 0:
            raise ParseError("division by zero", tok.line, tok.column)
        acc = acc * _field_const(ring, tok, Fraction(1, d))
    return acc


def _factor(s, ring):
    base = _atom(s, ring)
    if s.at("^"):
        s.next()
        tok = s.expect_kind("num", "a non-negative integer exponent")
        base = base ** int(tok.text)
    return base


def _atom(s, ring):
    tok = s.peek
    if tok.kind == "num":
        s.next()
        return _field_const(ring, tok, int(tok.text))
    if tok.kind == "name":
        s.next()
        if tok.text not in ring.variables:
            raise ParseError(f"unknown variable {tok.text!r}", tok.line, tok.column)
        return ring.gen(tok.text)
    if s.at("("):
        s.next()
        inner = _expr(s, ring)
        s.expect(")")
        return inner
    raise s.error("expected a number, variable or '('")


def parse_polynomial(text, ring):
    s = _Stream(tokenize(text))
    p = _expr(s, ring)
    if s.peek.kind != "eof":
        raise s.error("expected an operator")
    return p


def parse_polynomial_list(text, ring):
    s = _Stream(tokenize(text))
    out = [_expr(s, ring)]
    while s.at(","):
        s.next()
        out.append(_expr(s, ring))
    if s.peek.kind != "eof":
        raise s.error("expected ',' or an operator")
    return out


# -- sessions -------------------------------------------------------------

COMMANDS = {
    "chi": 2,
    "tor": 3,
    "resolution": 1,
    "multiplicity": 1,
    "tangentcone": 1,
    "transversal": 2,
    "diagonal": 2,
    "flatcheck": 1,
    "blowupchi": 2,
    "fulton": 2,
    "corollaryd": 2,
    "scan": 1,
}
POINT_COMMANDS = ("blowupchi", "fulton", "corollaryd")
SCAN_KINDS = ("decency", "vanishing", "positivity", "lowerbound", "tennison")


@dataclass
class RingDecl:
    name: str
    ring: RingContext
    line: int
    column: int


@dataclass
class IdealDecl:
    name: str
    ring_name: str
    generators: list
    line: int
    column: int


@dataclass
class Command:
    name: str
    args: list
    options: dict = dc_field(default_factory=dict)
    points: list = None
    line: int = 0
    column: int = 0
    text: str = ""


@dataclass
class Session:
    statements: list

    @property
    def commands(self):
        return [s for s in self.statements if isinstance(s, Command)]


def _parse_field(s):
    tok = s.expect_kind("name", "a field (QQ or FF(p))")
    if tok.text == "QQ":
        return QQ
    if tok.text != "FF":
        raise ParseError(f"unknown field {tok.text!r}", tok.line, tok.column)
    s.expect("(")
    ptok = s.expect_kind("num", "a prime")
    s.expect(")")
    try:
        return Field(int(ptok.text))
    except CoefficientError as exc:
        raise ParseError(str(exc), ptok.line, ptok.column) from None


def _names(s, what):
    out = [s.expect_kind("name", what).text]
    while s.at(","):
        s.next()
        out.append(s.expect_kind("name", what).text)
    return out


def _rational(s):
    neg = False
    if s.at("-") or s.at("+"):
        neg = s.next().text == "-"
    tok = s.expect_kind("num", "a rational coordinate")
    value = Fraction(int(tok.text))
    if s.at("/"):
        s.next()
        d = s.expect_kind("num", "a denominator")
        if int(d.text) == 0:
            raise ParseError("division by zero", d.line, d.column)
        value /= int(d.text)
    return -value if neg else value


def _parse_points(s):
    s.expect("points")
    s.expect("=")
    s.expect("[")
    points = []
    while s.at("("):
        s.next()
        tok = s.peek
        if tok.kind not in ("name", "num"):
            raise s.error("expected a chart (variable name or index)")
        s.next()
        chart = int(tok.text) if tok.kind == "num" else tok.text
        s.expect(":")
        coords = [_rational(s)]
        while s.at(","):
            s.next()
            coords.append(_rational(s))
        s.expect(")")
        points.append((chart, coords))
        if s.at(","):
            s.next()
    s.expect("]")
    return points


def _source_span(text, start, end):
    lines = text.split("\n")
    a = lines[start.line - 1][start.column - 1:] if start.line == end.line else None
    if a is not None:
        return a[: end.column - start.column].strip()
    chunk = [lines[start.line - 1][start.column - 1:]]
    chunk += lines[start.line: end.line - 1]
    chunk.append(lines[end.line - 1][: end.column - 1])
    return " ".join(c.strip() for c in chunk if c.strip())


def parse_session(text, field_override=None):
    """Parse a session file into ring, ideal and command statements.

    ``field_override`` replaces the field of every declared ring, so that
    coefficients are validated against the field actually used.
    """
    s = _Stream(tokenize(text))
    statements = []
    rings = {}
    current = None
    while s.peek.kind != "eof":
        if s.at(";"):
            s.next()
            continue
        head = s.expect_kind("name", "a statement keyword")
        if head.text == "ring":
            name = s.expect_kind("name", "a ring name").text
            s.expect("=")
            fld = _parse_field(s)
            if field_override is not None:
                fld = field_override
            s.expect("[")
            variables = _names(s, "a variable name")
            s.expect("]")
            base = ()
            if s.at("base"):
                s.next()
                s.expect("=")
                base = tuple(_names(s, "a base variable"))
            try:
                r = RingContext(fld, tuple(variables), base_vars=base)
            except ChiwbError as exc:
                raise ParseError(str(exc), head.line, head.column) from None
            rings[name] = r
            current = name
            statements.append(RingDecl(name, r, head.line, head.column))
        elif head.text == "ideal":
            if current is None:
                raise ParseError("ideal declared before any ring", head.line, head.column)
            name = s.expect_kind("name", "an ideal name").text
            s.expect("=")
            r = rings[current]
            gens = [_expr(s, r)]
            while s.at(","):
                s.next()
                gens.append(_expr(s, r))
            statements.append(IdealDecl(name, current, gens, head.line, head.column))
        elif head.text in COMMANDS:
            args, options, points = [], {}, None
            while s.peek.kind in ("name", "num") and not s.at("points"):
                tok = s.next()
                if s.at("="):
                    s.next()
                    val = s.expect_kind("num", f"an integer value for {tok.text}")
                    options[tok.text] = int(val.text)
                else:
                    args.append(int(tok.text) if tok.kind == "num" else tok.text)
            if s.at("points"):
                if head.text not in POINT_COMMANDS:
                    raise s.error(f"{head.text} takes no points")
                points = _parse_points(s)
                while s.peek.kind == "name":
                    tok = s.next()
                    s.expect("=")
                    val = s.expect_kind("num", f"an integer value for {tok.text}")
                    options[tok.text] = int(val.text)
            elif head.text in POINT_COMMANDS:
                raise s.error("expected 'points = [...]'")
            if len(args) != COMMANDS[head.text]:
                raise ParseError(
                    f"{head.text} expects {COMMANDS[head.text]} argument(s), got {len(args)}",
                    head.line,
                    head.column,
                )
            if head.text == "scan" and args[0] not in SCAN_KINDS:
                raise ParseError(f"unknown scan kind {args[0]!r}", head.line, head.column)
            end = s.peek
            cmd = Command(head.text, args, options, points, head.line, head.column)
            cmd.text = _source_span(text, head, end)
            statements.append(cmd)
        else:
            raise ParseError(f"unknown statement {head.text!r}", head.line, head.column)
        s.expect(";")
    return Session(statements)
