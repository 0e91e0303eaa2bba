"""Exact arithmetic in the free Zinbiel (dual Leibniz) algebra over the rationals.

A basis of the free algebra is given by left-normed words
``x_{i1}(x_{i2}(...(x_{i(n-1)} x_{in})...))``; a word is stored as the tuple
``(i1, ..., in)`` of generator indices.  The product of two basis words is the
half-shuffle ``u * v = u1 . (u' sh v)`` where ``u = (u1, u')``.
"""

from __future__ import annotations

import numbers
from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Tuple

Word = Tuple[int, ...]


def make_word(letters: Iterable[int]) -> Word:
    """Validate ``letters`` and return them as a word tuple."""
    word = tuple(letters)
    if not word:
        raise ValueError("a word must contain at least one letter")
    for letter in word:
        if isinstance(letter, bool) or not isinstance(letter, numbers.Integral):
            raise TypeError(f"generator index must be an integer, got {letter!r}")
        if letter < 1:
            raise ValueError(f"generator index must be >= 1, got {letter}")
    return tuple(int(letter) for letter in word)


def word_key(word: Word) -> tuple[int, Word]:
    # canonical term order: degree, then lexicographic
    return (len(word), word)


def as_coefficient(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, numbers.Rational):
        raise TypeError(f"coefficients must be exact rationals, got {value!r}")
    return Fraction(value)


@lru_cache(maxsize=1 << 16)
def _shuffle(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[Word, int] = defaultdict(int)
    head = (u[0],)
    for w, m in _shuffle(u[1:], v):
        acc[head + w] += m
    head = (v[0],)
    for w, m in _shuffle(u, v[1:]):
        acc[head + w] += m
    return tuple(acc.items())


def shuffle(u: Iterable[int], v: Iterable[int]) -> Counter:
    """All interleavings of ``u`` and ``v`` with their multiplicities.

    >>> dict(shuffle([1], [1]))
    {(1, 1): 2}
    """
    return Counter(dict(_shuffle(tuple(u), tuple(v))))


@lru_cache(maxsize=1 << 16)
def _mul_words(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    head = (u[0],)
    return tuple((head + w, m) for w, m in _shuffle(u[1:], v))


class Element:
    """A finite rational combination of basis words, kept in canonical form.

    Zero coefficients are never stored and iteration follows degree, then
    lexicographic order on letters.  Instances are immutable.

    ``*`` is the Zinbiel product between elements and scalar multiplication
    when one side is a rational; ``**`` is the left power ``a^(i+1) = a a^i``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Iterable[int], object] | None = None):
        clean: dict[Word, Fraction] = {}
        if terms:
            for word, coef in terms.items():
                w = make_word(word)
                c = as_coefficient(coef)
                clean[w] = clean.get(w, Fraction(0)) + c
        self._terms = {w: c for w, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict[Word, Fraction]) -> Element:
        # trusted constructor: keys already valid words
        obj = cls.__new__(cls)
        obj._terms = {w: c for w, c in terms.items() if c}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> Element:
        return cls._from_clean({})

    @classmethod
    def generator(cls, index: int) -> Element:
        return cls._from_clean({make_word((index,)): Fraction(1)})

    @classmethod
    def word(cls, letters: Iterable[int], coefficient=1) -> Element:
        return cls._from_clean({make_word(letters): as_coefficient(coefficient)})

    @property
    def terms(self) -> dict[Word, Fraction]:
        """Copy of the word -> coefficient map in canonical order."""
        return dict(self)

    def __iter__(self) -> Iterator[tuple[Word, Fraction]]:
        for w in sorted(self._terms, key=word_key):
            yield w, self._terms[w]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, word: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def degrees(self) -> set[int]:
        return {len(w) for w in self._terms}

    def letters(self) -> set[int]:
        return {letter for w in self._terms for letter in w}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self._terms == other._terms
        if isinstance(other, numbers.Number) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, Fraction(0)) + c
        return Element._from_clean(acc)

    def __neg__(self) -> Element:
        return Element._from_clean({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar) -> Element:
        s = as_coefficient(scalar)
        return Element._from_clean({w: s * c for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if isinstance(other, numbers.Rational):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Rational):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> Element:
        return power(self, exponent)

    def __repr__(self) -> str:
        if not self._terms:
            return "Element(0)"
        inner = ", ".join(f"{w}: {c}" for w, c in self)
        return f"Element({{{inner}}})"


def mul_basis(u: Iterable[int], v: Iterable[int]) -> Element:
    """Product of two basis words, ``u1 . (u' sh v)``."""
    u, v = make_word(u), make_word(v)
    return Element._from_clean({w: Fraction(m) for w, m in _mul_words(u, v)})


def mul(f: Element, g: Element) -> Element:
    """Bilinear Zinbiel product of two elements."""
    # integral coefficient products are accumulated as ints, the rest as Fractions
    ints: dict[Word, int] = defaultdict(int)
    fracs: dict[Word, Fraction] = defaultdict(Fraction)
    for u, a in f._terms.items():
        for v, b in g._terms.items():
            ab = a * b
            if ab.denominator == 1:
                n = ab.numerator
                for w, m in _mul_words(u, v):
                    ints[w] += n * m
            else:
                for w, m in _mul_words(u, v):
                    fracs[w] += ab * m
    for w, n in ints.items():
        if w in fracs:
            fracs[w] += n
        elif n:
            fracs[w] = Fraction(n)
    return Element._from_clean(fracs)


def power(f: Element, exponent: int) -> Element:
    """Left power: ``f^1 = f`` and ``f^(i+1) = f f^i``.

    The algebra has no unit, so ``exponent`` must be at least 1.
    """
    if isinstance(exponent, bool) or not isinstance(exponent, numbers.Integral):
        raise TypeError("exponent must be an integer")
    if exponent < 1:
        raise ValueError(f"power exponent must be >= 1, got {exponent}")
    result = f
    for _ in range(exponent - 1):
        result = mul(f, result)
    return result


def star(f: Element, g: Element) -> Element:
    """Symmetrized product ``fg + gf``; commutative and associative."""
    return mul(f, g) + mul(g, f)


def power_product_coefficient(i: int, j: int) -> Fraction:
    """The scalar ``c`` with ``x^i x^j = c x^(i+j)``, found by explicit multiplication."""
    if i < 1 or j < 1:
        raise ValueError("exponents must be >= 1")
    x = Element.generator(1)
    product = mul(power(x, i), power(x, j))
    target = (1,) * (i + j)
    if set(product._terms) != {target}:
        raise RuntimeError(
            f"x^{i} x^{j} is not a multiple of x^{i + j}: {product!r}"
        )
    return product._terms[target]


def substitute(f: Element, images: Mapping[int, Element]) -> Element:
    """Apply the homomorphism sending generator ``i`` to ``images[i]``.

    A word ``(a1, ..., an)`` maps to ``g_a1 (g_a2 (... g_an))``.
    """
    acc: dict[Word, Fraction] = defaultdict(Fraction)
    cache: dict[Word, Element] = {}

    def image_of(word: Word) -> Element:
        if word in cache:
            return cache[word]
        try:
            head = images[word[0]]
        except KeyError:
            raise KeyError(f"no image given for generator x{word[0]}") from None
        value = head if len(word) == 1 else mul(head, image_of(word[1:]))
        cache[word] = value
        return value

    for w, c in f._terms.items():
        for u, a in image_of(w)._terms.items():
            acc[u] += c * a
    return Element._from_clean(acc)
