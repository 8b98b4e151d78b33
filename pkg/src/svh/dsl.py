"""Line-oriented rule DSL for describing graded algebras.

Example::

    algebra twisted-sv
    families L Y M
    closure antisymmetric
    bracket L L -> (m - n) L
    bracket L Y -> (m - n/2) Y
    bracket L M -> m M
    bracket Y Y -> (m - n) M

Coefficients are polynomials in the left index ``n`` and right index ``m``
with rational literals and the operators ``+ - * / ^`` (division only by a
nonzero constant).  A compound coefficient must be parenthesized so that the
top-level ``+``/``-`` can separate the summands of a multi-target rule.
``#`` starts a comment; omitted ordered family pairs bracket to zero.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .algebra import AlgebraSpec, BracketRule, CoeffPoly, RESERVED_NAMES
from .errors import DuplicateRule, ParseError, UnknownFamily

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<arrow>->)"
    r"|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[+\-*/^()])"
    r"|(?P<bad>.)"
)

_NAME_RE = re.compile(r"[A-Za-z0-9_.\-]+$")


class _Token(NamedTuple):
    kind: str  # 'arrow' | 'int' | 'ident' | 'sym' | 'end'
    value: str
    line: int
    col: int


def _scan_line(text: str, line: int) -> list[_Token]:
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {match.group()!r}", line, match.start() + 1)
        tokens.append(_Token(kind, match.group(), line, match.start() + 1))
    tokens.append(_Token("end", "", line, len(text) + 1))
    return tokens


class _LineParser:
    """Recursive-descent parser over the tokens of one bracket line."""

    def __init__(self, tokens: list[_Token], families: set[str]):
        self.tokens = tokens
        self.pos = 0
        self.families = families

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect_ident(self, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != "ident":
            self.fail(f"expected {what}")
        return self.advance()

    # Expression grammar.  At the top level of a rule term, '+' and '-'
    # separate summands, so the coefficient is a product chain; a full
    # polynomial must be parenthesized.
    def parse_rhs(self) -> list[tuple[CoeffPoly, str]]:
        terms = []
        sign = 1
        while True:
            poly = self.parse_product()
            fam_tok = self.expect_ident("target family after the coefficient")
            if fam_tok.value not in self.families:
                raise UnknownFamily(
                    f"line {fam_tok.line}, col {fam_tok.col}: "
                    f"family {fam_tok.value!r} is not declared"
                )
            terms.append((poly * sign, fam_tok.value))
            tok = self.peek()
            if tok.kind == "end":
                return terms
            if tok.kind == "sym" and tok.value in "+-":
                sign = 1 if tok.value == "+" else -1
                self.advance()
                continue
            self.fail("expected '+', '-' or end of line after a rule term")

    def parse_product(self) -> CoeffPoly:
        sign = 1
        while self.peek().kind == "sym" and self.peek().value == "-":
            self.advance()
            sign = -sign
        poly = self.parse_power()
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.value == "*":
                self.advance()
                poly = poly * self.parse_power()
            elif tok.kind == "sym" and tok.value == "/":
                self.advance()
                divisor = self.parse_power()
                const = divisor.coeffs.get((0, 0))
                if divisor.coeffs and set(divisor.coeffs) != {(0, 0)}:
                    self.fail("division is only allowed by a nonzero constant", tok)
                if not const:
                    self.fail("division by zero", tok)
                poly = poly * (1 / const)
            else:
                return poly * sign

    def parse_power(self) -> CoeffPoly:
        base = self.parse_atom()
        while self.peek().kind == "sym" and self.peek().value == "^":
            caret = self.advance()
            exp_tok = self.peek()
            if exp_tok.kind != "int":
                self.fail("expected a non-negative integer exponent after '^'", caret)
            self.advance()
            base = base ** int(exp_tok.value)
        return base

    def parse_atom(self) -> CoeffPoly:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return CoeffPoly.const(int(tok.value))
        if tok.kind == "ident":
            if tok.value == "n":
                self.advance()
                return CoeffPoly.var_n()
            if tok.value == "m":
                self.advance()
                return CoeffPoly.var_m()
            self.fail(f"unexpected identifier {tok.value!r} in a coefficient", tok)
        if tok.kind == "sym" and tok.value == "(":
            self.advance()
            poly = self.parse_expr()
            closing = self.peek()
            if closing.kind != "sym" or closing.value != ")":
                self.fail("expected ')'")
            self.advance()
            return poly
        self.fail("expected a coefficient")

    def parse_expr(self) -> CoeffPoly:
        poly = self.parse_product()
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.value in "+-":
                self.advance()
                rhs = self.parse_product()
                poly = poly + rhs if tok.value == "+" else poly - rhs
            else:
                return poly


def parse_algebra(text: str) -> AlgebraSpec:
    """Parse rule-DSL source into an AlgebraSpec.

    Raises ParseError (with line/column) on malformed input, DuplicateRule on
    a repeated ordered family pair and UnknownFamily on undeclared names.
    """
    name: str | None = None
    families: list[str] | None = None
    closure = False
    closure_seen = False
    rules: list[BracketRule] = []
    seen_pairs: set[tuple[str, str]] = set()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = _scan_line(line, lineno)
        head = tokens[0]
        if head.kind != "ident":
            raise ParseError("expected a directive", lineno, head.col)

        if head.value == "algebra":
            if name is not None:
                raise ParseError("duplicate 'algebra' directive", lineno, head.col)
            rest = line[head.col + len("algebra") - 1 :].strip()
            if not rest or not _NAME_RE.match(rest):
                raise ParseError("expected an algebra name", lineno, head.col + len("algebra"))
            name = rest

        elif head.value == "families":
            if families is not None:
                raise ParseError("duplicate 'families' directive", lineno, head.col)
            families = []
            for tok in tokens[1:-1]:
                if tok.kind != "ident":
                    raise ParseError("family names must be identifiers", tok.line, tok.col)
                if tok.value in RESERVED_NAMES:
                    raise ParseError(
                        f"{tok.value!r} is reserved for index variables", tok.line, tok.col
                    )
                if tok.value in families:
                    raise ParseError(f"family {tok.value!r} listed twice", tok.line, tok.col)
                families.append(tok.value)
            if not families:
                raise ParseError("at least one family is required", lineno, head.col)

        elif head.value == "closure":
            if closure_seen:
                raise ParseError("duplicate 'closure' directive", lineno, head.col)
            closure_seen = True
            if len(tokens) != 3 or tokens[1].kind != "ident":
                raise ParseError("expected 'closure antisymmetric' or 'closure none'", lineno, head.col)
            if tokens[1].value == "antisymmetric":
                closure = True
            elif tokens[1].value == "none":
                closure = False
            else:
                raise ParseError(
                    f"unknown closure mode {tokens[1].value!r}", tokens[1].line, tokens[1].col
                )

        elif head.value == "bracket":
            if families is None:
                raise ParseError("'families' must come before bracket rules", lineno, head.col)
            parser = _LineParser(tokens[1:], set(families))
            left = parser.expect_ident("left family")
            right = parser.expect_ident("right family")
            for tok in (left, right):
                if tok.value not in families:
                    raise UnknownFamily(
                        f"line {tok.line}, col {tok.col}: family {tok.value!r} is not declared"
                    )
            arrow = parser.peek()
            if arrow.kind != "arrow":
                parser.fail("expected '->' after the family pair")
            parser.advance()
            terms = parser.parse_rhs()
            pair = (left.value, right.value)
            if pair in seen_pairs:
                raise DuplicateRule(
                    f"duplicate bracket rule for {left.value} {right.value}", lineno, head.col
                )
            seen_pairs.add(pair)
            rules.append(BracketRule(left.value, right.value, tuple(terms)))

        else:
            raise ParseError(f"unknown directive {head.value!r}", lineno, head.col)

    if name is None:
        raise ParseError("missing 'algebra' directive", 1, 1)
    if families is None:
        raise ParseError("missing 'families' directive", 1, 1)
    return AlgebraSpec(name, families, rules, closure_antisymmetric=closure)


def format_algebra(spec: AlgebraSpec) -> str:
    """Serialize a spec back to DSL text; parse(format(spec)) equals spec."""
    lines = [f"algebra {spec.name}", "families " + " ".join(spec.families)]
    if spec.closure_antisymmetric:
        lines.append("closure antisymmetric")
    for left in spec.families:
        for right in spec.families:
            terms = spec.rules.get((left, right))
            if terms is None:
                continue
            rendered = " + ".join(f"({poly.text()}) {target}" for poly, target in terms)
            if not terms:
                rendered = "(0) " + left  # zero rule: bracket explicitly vanishes
            lines.append(f"bracket {left} {right} -> {rendered}")
    return "\n".join(lines) + "\n"
