import re
from dataclasses import dataclass
from fractions import Fraction as ExactRational
from typing import List, Optional, Tuple

from errors import InputError
from poly_core import Polynomial, PolynomialRing


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


class PolynomialParser:
    """Parse polynomial text such as ``y^2 - x^3`` or ``t^2 + x^2*(x^2 - 1)``.

    Grammar::

        expr    := ['+' | '-'] term (('+' | '-') term)*
        term    := factor ('*' factor)*
        factor  := primary ['^' INT]
        primary := NUMBER ['/' NUMBER] | IDENT | '(' expr ')'

    ``a/b`` between two integer literals is a rational literal; any other ``/`` is only
    accepted by :meth:`parse_fraction`, where it separates numerator and denominator.
    Juxtaposition (``2x``, ``x y``) is rejected.
    """

    TOKEN_PATTERN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))")

    def __init__(self, ring: PolynomialRing):
        self.ring = ring
        self.tokens: List[Token] = []
        self.pos = 0

    def _tokenize(self, text: str) -> List[Token]:
        tokens = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            match = self.TOKEN_PATTERN.match(text, i)
            if not match:
                raise InputError(f"unexpected character {text[i]!r}", column=i + 1)
            kind = match.lastgroup
            start = match.start(kind)
            tokens.append(Token(kind, match.group(kind), start + 1))
            i = match.end()
        tokens.append(Token("end", "", len(text) + 1))
        return tokens

    def _peek(self) -> Token:
        return self.tokens[self.pos]

    def _next(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _expect(self, text: str) -> Token:
        token = self._next()
        if token.text != text:
            raise InputError(f"expected {text!r}, found {token.text or 'end of input'!r}", column=token.column)
        return token

    def _start(self, text: str) -> None:
        if not text.strip():
            raise InputError("empty polynomial")
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _finish(self) -> None:
        token = self._peek()
        if token.kind == "end":
            return
        if token.kind in ("number", "ident") or token.text == "(":
            raise InputError("implicit multiplication is not allowed; use '*'", column=token.column)
        raise InputError(f"unexpected {token.text!r}", column=token.column)

    def parse(self, text: str) -> Polynomial:
        self._start(text)
        poly = self._expr()
        self._finish()
        return poly

    def parse_fraction(self, text: str) -> Tuple[Polynomial, Polynomial]:
        """Parse ``p / q`` (or a bare polynomial, read as ``p / 1``)."""
        self._start(text)
        numerator = self._expr()
        denominator = self.ring.one()
        if self._peek().text == "/":
            slash = self._next()
            denominator = self._expr()
            if denominator.is_zero():
                raise InputError("denominator is zero", column=slash.column)
        self._finish()
        return numerator, denominator

    def _expr(self) -> Polynomial:
        sign = 1
        if self._peek().text in ("+", "-"):
            sign = -1 if self._next().text == "-" else 1
        result = self._term()
        if sign < 0:
            result = -result
        while self._peek().text in ("+", "-"):
            op = self._next().text
            term = self._term()
            result = result + term if op == "+" else result - term
        return result

    def _term(self) -> Polynomial:
        result = self._factor()
        while self._peek().text == "*":
            self._next()
            result = result * self._factor()
        return result

    def _factor(self) -> Polynomial:
        base = self._primary()
        if self._peek().text == "^":
            self._next()
            token = self._next()
            if token.kind != "number":
                raise InputError("exponent must be a non-negative integer literal", column=token.column)
            base = base ** int(token.text)
        return base

    def _primary(self) -> Polynomial:
        token = self._next()
        if token.kind == "number":
            value = ExactRational(int(token.text))
            if self._peek().text == "/" and self.tokens[self.pos + 1].kind == "number":
                self._next()
                denominator = self._next()
                if int(denominator.text) == 0:
                    raise InputError("division by zero in rational literal", column=denominator.column)
                value = ExactRational(int(token.text), int(denominator.text))
            return self.ring.constant(value)
        if token.kind == "ident":
            if not self.ring.has_variable(token.text):
                raise InputError(f"undeclared variable {token.text!r}", column=token.column)
            return self.ring.var(token.text)
        if token.text == "(":
            inner = self._expr()
            self._expect(")")
            return inner
        raise InputError(f"unexpected {token.text or 'end of input'!r}", column=token.column)


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    return PolynomialParser(ring).parse(text)


def parse_fraction(text: str, ring: PolynomialRing) -> Tuple[Polynomial, Polynomial]:
    return PolynomialParser(ring).parse_fraction(text)


def parse_polynomials(texts: List[str], ring: PolynomialRing, first_line: Optional[int] = None) -> List[Polynomial]:
    """Parse one polynomial per entry; errors carry ``first_line + index`` when given."""
    polys = []
    for offset, text in enumerate(texts):
        try:
            polys.append(parse_polynomial(text, ring))
        except InputError as exc:
            if first_line is None:
                raise
            raise exc.at_line(first_line + offset) from exc
    return polys
