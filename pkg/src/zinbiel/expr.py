"""Expression trees for arbitrary nonassociative expressions and their reduction.

Two independent routes from a tree to an :class:`~zinbiel.freealg.Element`:

* :func:`normal_form` expands the tree into bracketed monomials and rewrites
  them with ``(uv)w -> u(wv) + u(vw)`` until every monomial is left-normed;
* :func:`evaluate` folds the tree bottom-up with the half-shuffle product.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .freealg import Element, as_coefficient, mul, power


@dataclass(frozen=True)
class Generator:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class Sum:
    # an empty sum is the zero expression
    terms: tuple


@dataclass(frozen=True)
class Scalar:
    coefficient: Fraction
    child: "ExprTree"

    def __post_init__(self):
        object.__setattr__(self, "coefficient", as_coefficient(self.coefficient))


@dataclass(frozen=True)
class Product:
    left: "ExprTree"
    right: "ExprTree"


@dataclass(frozen=True)
class Power:
    base: "ExprTree"
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError(f"exponent must be >= 1, got {self.exponent}")


ExprTree = Union[Generator, Sum, Scalar, Product, Power]

# Bracketed monomial: an int (generator) or a pair (left, right).
Monomial = Union[int, tuple]


def degree_bound(e: ExprTree) -> int:
    """Largest degree of a monomial the tree can produce."""
    if isinstance(e, Generator):
        return 1
    if isinstance(e, Sum):
        return max((degree_bound(t) for t in e.terms), default=0)
    if isinstance(e, Scalar):
        return degree_bound(e.child)
    if isinstance(e, Product):
        return degree_bound(e.left) + degree_bound(e.right)
    if isinstance(e, Power):
        return degree_bound(e.base) * e.exponent
    raise TypeError(f"not an expression tree: {e!r}")


def expand(e: ExprTree) -> dict[Monomial, Fraction]:
    """Distribute sums and scalars, giving a combination of bracketed monomials."""
    if isinstance(e, Generator):
        return {e.index: Fraction(1)}
    if isinstance(e, Sum):
        acc: dict = defaultdict(Fraction)
        for t in e.terms:
            for m, c in expand(t).items():
                acc[m] += c
        return {m: c for m, c in acc.items() if c}
    if isinstance(e, Scalar):
        if not e.coefficient:
            return {}
        return {m: e.coefficient * c for m, c in expand(e.child).items()}
    if isinstance(e, Product):
        return _expand_product(expand(e.left), expand(e.right))
    if isinstance(e, Power):
        base = expand(e.base)
        result = base
        for _ in range(e.exponent - 1):
            result = _expand_product(base, result)
        return result
    raise TypeError(f"not an expression tree: {e!r}")


def _expand_product(left: dict, right: dict) -> dict:
    acc: dict = defaultdict(Fraction)
    for a, c in left.items():
        for b, d in right.items():
            acc[(a, b)] += c * d
    return {m: c for m, c in acc.items() if c}


def _rewrite_step(t: Monomial):
    """One innermost-leftmost application of ``(uv)w -> u(wv) + u(vw)``.

    Returns ``None`` when ``t`` is already left-normed.
    """
    if isinstance(t, int):
        return None
    left, right = t
    step = _rewrite_step(left)
    if step is not None:
        return [(s, right) for s in step]
    step = _rewrite_step(right)
    if step is not None:
        return [(left, s) for s in step]
    if isinstance(left, tuple):
        u, v = left
        return [(u, (right, v)), (u, (v, right))]
    return None


def _as_word(t: Monomial) -> tuple[int, ...]:
    letters = []
    while isinstance(t, tuple):
        letters.append(t[0])
        t = t[1]
    letters.append(t)
    return tuple(letters)


def normal_form(e: ExprTree) -> Element:
    """Reduce ``e`` to a combination of left-normed words by term rewriting.

    >>> normal_form(Product(Product(Generator(1), Generator(2)), Generator(3)))
    Element({(1, 2, 3): 1, (1, 3, 2): 1})
    """
    pending: dict = dict(expand(e))
    done: dict = defaultdict(Fraction)
    while pending:
        t, c = pending.popitem()
        step = _rewrite_step(t)
        if step is None:
            done[_as_word(t)] += c
            continue
        for s in step:
            pending[s] = pending.get(s, Fraction(0)) + c
            if not pending[s]:
                del pending[s]
    return Element(done)


def evaluate(e: ExprTree) -> Element:
    """Evaluate ``e`` bottom-up with the half-shuffle product."""
    if isinstance(e, Generator):
        return Element.generator(e.index)
    if isinstance(e, Sum):
        acc = Element.zero()
        for t in e.terms:
            acc = acc + evaluate(t)
        return acc
    if isinstance(e, Scalar):
        return evaluate(e.child).scale(e.coefficient)
    if isinstance(e, Product):
        return mul(evaluate(e.left), evaluate(e.right))
    if isinstance(e, Power):
        return power(evaluate(e.base), e.exponent)
    raise TypeError(f"not an expression tree: {e!r}")


def from_element(f: Element) -> ExprTree:
    """An expression tree whose value is ``f``, with right-nested products."""
    terms = []
    for word, c in f:
        node: ExprTree = Generator(word[-1])
        for letter in reversed(word[:-1]):
            node = Product(Generator(letter), node)
        terms.append(node if c == 1 else Scalar(c, node))
    return Sum(tuple(terms))
