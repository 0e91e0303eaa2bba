"""Concrete syntax for nonassociative expressions and canonical printing.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := atom ('^' int)*
    atom   := rational | 'x' int | '(' expr ')'
    rational := int ['/' int]

Juxtaposition (``x1 x2``, ``x1(x2 x3)``) is the same product as ``*``.  A term
may contain at most two non-scalar factors: the product does not associate, so
``x1*x2*x3`` is rejected instead of being silently bracketed.  Rational factors
act as scalars.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .expr import ExprTree, Generator, Power, Product, Scalar, Sum
from .freealg import Element, Word


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.message = message
        super().__init__(f"line {self.line}, column {self.column}: {message}")


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<gen>x(?P<idx>\d+))
  | (?P<int>\d+)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.group("gen"):
            tokens.append(_Token("gen", m.group("idx"), pos))
        elif m.group("int"):
            tokens.append(_Token("int", m.group("int"), pos))
        elif m.group("op"):
            tokens.append(_Token(m.group("op"), m.group("op"), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


# During parsing a subexpression is either a pure scalar or a tree.
_Value = Union[Fraction, ExprTree]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: _Token | None = None) -> ParseError:
        return ParseError(message, self.text, (tok or self.tok).pos)

    def take(self, kind: str) -> _Token:
        if self.tok.kind != kind:
            found = self.tok.value or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def parse(self) -> ExprTree:
        start = self.tok
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.value!r}")
        if isinstance(value, Fraction):
            if value:
                raise self.error("a nonzero constant is not an element of the algebra", start)
            return Sum(())
        return value

    def expr(self) -> _Value:
        terms: list[_Value] = []
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.take(self.tok.kind).kind == "-" else 1
        starts: list[_Token] = []
        while True:
            starts.append(self.tok)
            t = self.term()
            terms.append(t if sign == 1 else _scale(Fraction(-1), t))
            if self.tok.kind not in ("+", "-"):
                break
            sign = -1 if self.take(self.tok.kind).kind == "-" else 1
        trees = [t for t in terms if not isinstance(t, Fraction)]
        if not trees:
            return sum(terms, Fraction(0))
        for t, start in zip(terms, starts):
            if isinstance(t, Fraction) and t:
                raise self.error("constant terms are not elements of the algebra", start)
        return trees[0] if len(trees) == 1 else Sum(tuple(trees))

    def term(self) -> _Value:
        coef = Fraction(1)
        trees: list[ExprTree] = []
        while True:
            start = self.tok
            f = self.factor()
            if isinstance(f, Fraction):
                coef *= f
            else:
                if len(trees) == 2:
                    raise self.error(
                        "ambiguous nonassociative product; add parentheses", start
                    )
                trees.append(f)
            if self.tok.kind == "*":
                self.take("*")
            elif self.tok.kind not in ("gen", "("):
                break
        if not trees:
            return coef
        tree = trees[0] if len(trees) == 1 else Product(trees[0], trees[1])
        return tree if coef == 1 else Scalar(coef, tree)

    def factor(self) -> _Value:
        value = self.atom()
        while self.tok.kind == "^":
            self.take("^")
            t = self.take("int")
            exponent = int(t.value)
            if exponent == 0:
                raise self.error("exponent must be at least 1", t)
            value = value**exponent if isinstance(value, Fraction) else Power(value, exponent)
        return value

    def atom(self) -> _Value:
        t = self.tok
        if t.kind == "gen":
            self.i += 1
            index = int(t.value)
            if index == 0:
                raise self.error("generator indices start at 1", t)
            return Generator(index)
        if t.kind == "int":
            self.i += 1
            num = int(t.value)
            if self.tok.kind == "/":
                self.take("/")
                d = self.take("int")
                if int(d.value) == 0:
                    raise self.error("zero denominator", d)
                return Fraction(num, int(d.value))
            return Fraction(num)
        if t.kind == "(":
            self.i += 1
            value = self.expr()
            self.take(")")
            return value
        raise self.error(f"unexpected {t.value or 'end of input'!r}")


def _scale(c: Fraction, v: _Value) -> _Value:
    if isinstance(v, Fraction):
        return c * v
    if isinstance(v, Scalar):
        return Scalar(c * v.coefficient, v.child)
    return Scalar(c, v)


def parse(text: str) -> ExprTree:
    """Parse ``text`` into an expression tree.

    >>> parse("3/4 * x1^2")
    Scalar(coefficient=Fraction(3, 4), child=Power(base=Generator(index=1), exponent=2))
    """
    return _Parser(text).parse()


def format_word(word: Word) -> str:
    """``(1, 2, 3, 4)`` -> ``x1(x2(x3 x4))``."""
    if len(word) == 1:
        return f"x{word[0]}"
    if len(word) == 2:
        return f"x{word[0]} x{word[1]}"
    return f"x{word[0]}({format_word(word[1:])})"


def format_element(f: Element) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for k, (word, c) in enumerate(f):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = format_word(word) if mag == 1 else f"{mag}*{format_word(word)}"
        if k == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def element_to_json(f: Element) -> dict:
    return {
        "terms": [
            {"word": list(w), "num": str(c.numerator), "den": str(c.denominator)}
            for w, c in f
        ]
    }


def element_from_json(data: dict | str) -> Element:
    if isinstance(data, str):
        data = json.loads(data)
    return Element({tuple(t["word"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]})
