##########################################################################
# Copyright (c) 2010-2022 Robert Bosch GmbH
# This program and the accompanying materials are made available under the
# terms of the Eclipse Public License 2.0 which is available at
# http://www.eclipse.org/legal/epl-2.0.
#
# SPDX-License-Identifier: EPL-2.0
##########################################################################

"""
Expression reader
*****************

:module: expression

:synopsis: Tokenizer and recursive descent parser for the arithmetic
    expressions used to write Laurent polynomials and rational
    functions.

Grammar (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | power
    power  := base (('^' | '**') exponent)?
    exponent := ('+' | '-')? integer | '(' ('+' | '-')? integer ')'
    base   := integer | identifier | '(' expr ')'

Rational literals such as ``3/4`` are read as a division of integers.
The parser does not build a tree, it evaluates directly with the
arithmetic of the values bound to the identifiers.

.. currentmodule:: expression

"""
import re
from typing import Callable, Generic, List, Mapping, NamedTuple, TypeVar

from ..exceptions import ExpressionSyntaxError, UnknownVariableError
from .laurent import check_exponent

T = TypeVar("T")

TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))"
)


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into tokens, the last one is an ``end`` marker.

    :param text: expression text
    :return: list of tokens
    :raises ExpressionSyntaxError: on a character that starts no token
    """
    tokens = []
    position = 0
    stripped_end = len(text.rstrip())
    while position < stripped_end:
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise ExpressionSyntaxError(
                text, offset, f"unexpected character '{text[offset]}'"
            )
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class ExpressionParser(Generic[T]):
    """Evaluate an expression over the values bound to its identifiers."""

    def __init__(
        self,
        symbols: Mapping[str, T],
        constant: Callable[[int], T],
        divide: Callable[[T, T], T] = lambda a, b: a / b,
    ) -> None:
        """Initialize attributes.

        :param symbols: value of each accepted identifier
        :param constant: builds a value from an integer literal
        :param divide: division of two values
        """
        self.symbols = dict(symbols)
        self.constant = constant
        self.divide = divide
        self._text = ""
        self._tokens: List[Token] = []
        self._index = 0

    def parse(self, text: str) -> T:
        """Evaluate ``text``.

        :param text: expression text
        :return: the value of the expression
        :raises ExpressionSyntaxError: if the text does not follow the grammar
        :raises UnknownVariableError: if an identifier is not bound
        """
        self._text = text
        self._tokens = tokenize(text)
        self._index = 0
        if self._peek().kind == "end":
            raise ExpressionSyntaxError(text, 0, "empty expression")
        value = self._expr()
        token = self._peek()
        if token.kind != "end":
            raise ExpressionSyntaxError(
                text, token.position, f"unexpected '{token.text}'"
            )
        return value

    def _peek(self) -> Token:
        return self._tokens[self._index]

    def _advance(self) -> Token:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _accept(self, *texts: str) -> bool:
        token = self._peek()
        if token.kind == "op" and token.text in texts:
            self._index += 1
            return True
        return False

    def _expect(self, text: str) -> None:
        token = self._peek()
        if not (token.kind == "op" and token.text == text):
            raise ExpressionSyntaxError(
                self._text, token.position, f"expected '{text}'"
            )
        self._index += 1

    def _expr(self) -> T:
        value = self._term()
        while True:
            if self._accept("+"):
                value = value + self._term()
            elif self._accept("-"):
                value = value - self._term()
            else:
                return value

    def _term(self) -> T:
        value = self._factor()
        while True:
            token = self._peek()
            if self._accept("*"):
                value = value * self._factor()
            elif self._accept("/"):
                divisor = self._factor()
                try:
                    value = self.divide(value, divisor)
                except ZeroDivisionError:
                    raise ExpressionSyntaxError(
                        self._text, token.position, "division by zero"
                    )
            else:
                return value

    def _factor(self) -> T:
        if self._accept("-"):
            return -self._factor()
        if self._accept("+"):
            return self._factor()
        return self._power()

    def _power(self) -> T:
        base = self._base()
        token = self._peek()
        if not self._accept("^", "**"):
            return base
        exponent = self._exponent()
        check_exponent(exponent)
        if exponent >= 0:
            return base**exponent
        try:
            return self.divide(self.constant(1), base ** (-exponent))
        except ZeroDivisionError:
            raise ExpressionSyntaxError(
                self._text, token.position, "negative power of zero"
            )

    def _exponent(self) -> int:
        if self._accept("("):
            value = self._signed_integer()
            self._expect(")")
            return value
        return self._signed_integer()

    def _signed_integer(self) -> int:
        sign = 1
        if self._accept("-"):
            sign = -1
        else:
            self._accept("+")
        token = self._advance()
        if token.kind != "number":
            raise ExpressionSyntaxError(
                self._text, token.position, "expected an integer exponent"
            )
        return sign * int(token.text)

    def _base(self) -> T:
        token = self._advance()
        if token.kind == "number":
            return self.constant(int(token.text))
        if token.kind == "name":
            try:
                return self.symbols[token.text]
            except KeyError:
                raise UnknownVariableError(
                    token.text, token.position, self.symbols.keys()
                )
        if token.kind == "op" and token.text == "(":
            value = self._expr()
            self._expect(")")
            return value
        reason = "unexpected end of expression" if token.kind == "end" else (
            f"unexpected '{token.text}'"
        )
        raise ExpressionSyntaxError(self._text, token.position, reason)
