"""Pratt parser for coefficient expressions in x and y.

Grammar: decimal literals, the imaginary unit `i`, variables `x`/`y`,
identifiers (parameters), `+ - * / ^`, unary minus and parentheses.  `*` may
be left implicit between a literal or closing paren and a variable/paren,
e.g. "2x", "lam*(lam+1)x^2", "(1-x)(1+x)".  Precedence, tightest first:
`^` (right-associative, nonnegative integer exponents) > unary minus >
`* /` > `+ -`.

ASTs are plain tuples:
    ("num", float) ("i",) ("var", "x"|"y") ("param", name)
    ("add"|"sub"|"mul"|"div", lhs, rhs) ("neg", e) ("pow", base, int)
"""

import re

from .errors import DivisionBySeriesWithZeroConstantTerm, ExprSyntaxError, UnboundParameter, ZeroConstantTerm
from .multiseries import CSeries2, cauchy_mul, reciprocal

_NUM_RE = re.compile(r"(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")

# binding powers
_BP_ADD = 10
_BP_MUL = 20
_BP_NEG = 30
_BP_POW = 40


class _Token:
    __slots__ = ("kind", "text", "offset")

    def __init__(self, kind, text, offset):
        self.kind = kind
        self.text = text
        self.offset = offset


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    last_nl = text.rfind("\n", 0, offset)
    return line, offset - last_nl  # 1-based column


def _err(text, offset, message, expected=()):
    line, col = _line_col(text, offset)
    raise ExprSyntaxError(message, offset, line, col, expected)


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _NUM_RE.match(text, pos)
        if m:
            tokens.append(_Token("number", m.group(0), pos))
            pos = m.end()
            continue
        m = _IDENT_RE.match(text, pos)
        if m:
            tokens.append(_Token("ident", m.group(0), pos))
            pos = m.end()
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, pos))
            pos += 1
            continue
        _err(text, pos, f"unexpected character {ch!r}")
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok.kind != kind:
            _err(self.text, tok.offset, f"expected {kind!r}, found {tok.text or 'end of input'!r}", {kind})
        return self.advance()

    def parse_expression(self, min_bp=0):
        node = self.parse_prefix()
        while True:
            tok = self.peek()
            if tok.kind == "^" and _BP_POW > min_bp:
                self.advance()
                node = ("pow", node, self.parse_exponent())
            elif tok.kind in ("*", "/") and _BP_MUL > min_bp:
                self.advance()
                rhs = self.parse_expression(_BP_MUL)
                node = ("mul" if tok.kind == "*" else "div", node, rhs)
            elif tok.kind in ("ident", "(") and _BP_MUL > min_bp:
                # implicit multiplication: "2x", "(1-x)(1+x)", "lam(lam+1)"
                rhs = self.parse_expression(_BP_MUL)
                node = ("mul", node, rhs)
            elif tok.kind in ("+", "-") and _BP_ADD > min_bp:
                self.advance()
                rhs = self.parse_expression(_BP_ADD)
                node = ("add" if tok.kind == "+" else "sub", node, rhs)
            else:
                return node

    def parse_exponent(self):
        tok = self.peek()
        if tok.kind != "number":
            _err(self.text, tok.offset, "exponent must be a nonnegative integer literal", {"number"})
        value = float(tok.text)
        if value != int(value):
            _err(self.text, tok.offset, "exponent must be a nonnegative integer literal", {"number"})
        self.advance()
        value = int(value)
        if self.peek().kind == "^":  # right-associative exponent tower
            self.advance()
            value = value ** self.parse_exponent()
        return value

    def parse_prefix(self):
        tok = self.advance()
        if tok.kind == "number":
            return ("num", float(tok.text))
        if tok.kind == "ident":
            if tok.text == "i":
                return ("i",)
            if tok.text in ("x", "y"):
                return ("var", tok.text)
            return ("param", tok.text)
        if tok.kind == "-":
            return ("neg", self.parse_expression(_BP_NEG))
        if tok.kind == "(":
            node = self.parse_expression(0)
            self.expect(")")
            return node
        _err(
            self.text,
            tok.offset,
            f"expected a value, found {tok.text or 'end of input'!r}",
            {"number", "ident", "-", "("},
        )


def parse_expr(text):
    """Parse an expression into an AST tuple."""
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0, 1, 1, {"number", "ident", "-", "("})
    parser = _Parser(text)
    node = parser.parse_expression(0)
    tok = parser.peek()
    if tok.kind != "end":
        _err(text, tok.offset, f"unexpected trailing input {tok.text!r}", {"end"})
    return node


def pretty(ast):
    """Render an AST back to text; parse_expr(pretty(t)) == t."""

    def render(node, parent_bp):
        kind = node[0]
        if kind == "num":
            v = node[1]
            return repr(int(v)) if v == int(v) and abs(v) < 1e15 else repr(v)
        if kind == "i":
            return "i"
        if kind in ("var", "param"):
            return node[1]
        if kind in ("add", "sub"):
            op = " + " if kind == "add" else " - "
            text = render(node[1], _BP_ADD - 1) + op + render(node[2], _BP_ADD)
            return f"({text})" if parent_bp >= _BP_ADD else text
        if kind in ("mul", "div"):
            op = "*" if kind == "mul" else "/"
            text = render(node[1], _BP_MUL - 1) + op + render(node[2], _BP_MUL)
            return f"({text})" if parent_bp >= _BP_MUL else text
        if kind == "neg":
            text = "-" + render(node[1], _BP_NEG)
            return f"({text})" if parent_bp >= _BP_NEG else text
        if kind == "pow":
            base = render(node[1], _BP_POW)
            if node[1][0] == "pow":  # avoid re-reading (b^m)^n as a b^(m^n) tower
                base = f"({base})"
            return base + "^" + str(node[2])
        raise ValueError(f"unknown node kind {kind!r}")

    return render(ast, 0)


def to_series(ast, params, order):
    """Evaluate an AST to a CSeries2, binding parameters to complex values."""
    kind = ast[0]
    if kind == "num":
        return CSeries2.constant(ast[1], order)
    if kind == "i":
        return CSeries2.constant(1j, order)
    if kind == "var":
        return CSeries2.variable(ast[1], order)
    if kind == "param":
        name = ast[1]
        if name not in params:
            raise UnboundParameter(f"parameter {name!r} is not bound")
        return CSeries2.constant(params[name], order)
    if kind == "add":
        return to_series(ast[1], params, order) + to_series(ast[2], params, order)
    if kind == "sub":
        return to_series(ast[1], params, order) - to_series(ast[2], params, order)
    if kind == "mul":
        return cauchy_mul(to_series(ast[1], params, order), to_series(ast[2], params, order))
    if kind == "div":
        divisor = to_series(ast[2], params, order)
        try:
            inv = reciprocal(divisor)
        except ZeroConstantTerm as exc:
            raise DivisionBySeriesWithZeroConstantTerm(
                "division by a series with zero constant term"
            ) from exc
        return cauchy_mul(to_series(ast[1], params, order), inv)
    if kind == "neg":
        return -to_series(ast[1], params, order)
    if kind == "pow":
        base = to_series(ast[1], params, order)
        result = CSeries2.one(order)
        for _ in range(ast[2]):
            result = cauchy_mul(result, base)
        return result
    raise ValueError(f"unknown node kind {kind!r}")
