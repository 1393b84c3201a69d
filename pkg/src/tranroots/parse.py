"""Parsing and formatting of polynomial expressions in the variable z.

The accepted grammar (whitespace insignificant):

    expression = ["+"|"-"] term { ("+"|"-") term }
    term       = factor { ["*"] factor }          # implicit multiplication
    factor     = atom [ "^" nonnegative-integer ]
    atom       = number | "z" | "(" expression ")"

Integer literals produce an exact IntPoly; any decimal or scientific literal
switches the whole expression to the complex-float domain.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .poly import ComplexPoly, IntPoly

MAX_PARSE_DEGREE = 10_000

_TOKEN_RE = re.compile(
    r"""
    (?P<number>\d+\.\d*(?:[eE][+-]?\d+)?   # 1.5, 2.0e3
      |\.\d+(?:[eE][+-]?\d+)?              # .5
      |\d+[eE][+-]?\d+                     # 1e3
      |\d+)                                # 42
    |(?P<variable>z)
    |(?P<plus>\+)
    |(?P<minus>-)
    |(?P<star>\*)
    |(?P<caret>\^)
    |(?P<lparen>\()
    |(?P<rparen>\))
    """,
    re.VERBOSE,
)

_INT_RE = re.compile(r"\d+$")


class ParseError(ValueError):
    """Syntax error with the byte offset where parsing failed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class ExponentError(ParseError):
    """Exponent is not a nonnegative integer literal."""


class ExpansionLimitError(ParseError):
    """Expanded degree would exceed MAX_PARSE_DEGREE."""


@dataclass(frozen=True)
class Token:
    kind: str  # number | variable | plus | minus | star | caret | lparen | rparen | end
    lexeme: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", n))
    return tokens


class _Parser:
    """Recursive-descent parser producing dense coefficient vectors."""

    def __init__(self, tokens: list[Token], exact: bool):
        self.tokens = tokens
        self.index = 0
        self.exact = exact
        # Domain constants so one parser body covers both coefficient domains.
        if exact:
            self.make = IntPoly
            self.literal = lambda s: IntPoly([int(s)])
        else:
            self.make = ComplexPoly
            self.literal = lambda s: ComplexPoly([float(s)])

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        if self.token.kind != kind:
            raise ParseError(
                f"expected {what}, found {self.token.lexeme or 'end of input'!r}",
                self.token.position,
            )
        return self.advance()

    def parse(self):
        result = self.expression()
        if self.token.kind != "end":
            raise ParseError(
                f"expected operator or end of input, found {self.token.lexeme!r}",
                self.token.position,
            )
        return result

    def expression(self):
        result = self.term()
        while self.token.kind in ("plus", "minus"):
            op = self.advance()
            rhs = self.term()
            result = result + rhs if op.kind == "plus" else result - rhs
        return result

    def term(self):
        sign = 1
        while self.token.kind in ("plus", "minus"):
            if self.token.kind == "minus":
                sign = -sign
            self.advance()
        result = self.factor()
        while True:
            if self.token.kind == "star":
                self.advance()
                rhs = self.factor()
            elif self.token.kind in ("number", "variable", "lparen"):
                rhs = self.factor()  # implicit multiplication, e.g. "2z"
            else:
                break
            self._guard_degree(result.degree + rhs.degree)
            result = result * rhs
        return result if sign == 1 else result.scale(sign if self.exact else float(sign))

    def factor(self):
        base = self.atom()
        if self.token.kind != "caret":
            return base
        self.advance()
        tok = self.token
        if tok.kind != "number" or not _INT_RE.match(tok.lexeme):
            raise ExponentError(
                f"exponent must be a nonnegative integer literal, found "
                f"{tok.lexeme or 'end of input'!r}",
                tok.position,
            )
        self.advance()
        exponent = int(tok.lexeme)
        self._guard_degree(max(base.degree, 0) * exponent)
        return base ** exponent

    def atom(self):
        tok = self.token
        if tok.kind == "number":
            self.advance()
            return self.literal(tok.lexeme)
        if tok.kind == "variable":
            self.advance()
            return self.make([0, 1])
        if tok.kind == "lparen":
            self.advance()
            inner = self.expression()
            self.expect("rparen", "')'")
            return inner
        raise ParseError(
            f"expected number, 'z' or '(', found {tok.lexeme or 'end of input'!r}",
            tok.position,
        )

    @staticmethod
    def _guard_degree(degree: int) -> None:
        if degree > MAX_PARSE_DEGREE:
            raise ExpansionLimitError(
                f"expanded degree {degree} exceeds limit {MAX_PARSE_DEGREE}", 0
            )


def parse_poly(text: str) -> IntPoly | ComplexPoly:
    """Parse an expression in z into a dense polynomial.

    Returns an IntPoly when every numeric literal is a plain integer,
    otherwise a ComplexPoly.  Raises ParseError (with offset) on bad syntax,
    ExponentError on non-integer exponents, and ExpansionLimitError when the
    expanded degree would exceed 10^4.
    """
    if not text.strip():
        raise ParseError("empty polynomial expression", 0)
    tokens = tokenize(text)
    exact = all(
        _INT_RE.match(tok.lexeme) for tok in tokens if tok.kind == "number"
    )
    return _Parser(tokens, exact).parse()


def _format_coeff(c) -> str:
    if isinstance(c, int):
        return str(c)
    if isinstance(c, complex):
        if c.imag == 0:
            return repr(c.real)
        return f"({c.real!r}{c.imag:+}j)"
    return repr(c)


def format_poly(p: IntPoly | ComplexPoly) -> str:
    """Canonical descending-power rendering; inverse of parse_poly on IntPoly."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for power in range(p.degree, -1, -1):
        c = p.coeffs[power]
        if not c:
            continue
        if isinstance(c, complex) and c.imag != 0:
            negative = False
            body = _format_coeff(c)
        else:
            value = c if isinstance(c, int) else c.real
            negative = value < 0
            magnitude = -value if negative else value
            if power > 0 and magnitude == 1:
                body = ""
            else:
                body = _format_coeff(magnitude if isinstance(c, int) else complex(magnitude).real)
        if power == 0:
            term = body or "1"
        elif power == 1:
            term = f"{body}z"
        else:
            term = f"{body}z^{power}"
        if not parts:
            parts.append(f"-{term}" if negative else term)
        else:
            parts.append(f"- {term}" if negative else f"+ {term}")
    return " ".join(parts)
