"""Identities of Zinbiel algebras: multilinearization, identity tests, T-ideals.

In characteristic zero every identity is equivalent to its multilinear
components, and a multilinear identity of degree ``n`` is a combination
``sum_sigma alpha_sigma x_sigma1(x_sigma2(...x_sigman))``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .evaluation import Witness, permutations, witness_search
from .expr import ExprTree, evaluate, normal_form
from .freealg import Element, Word, as_coefficient, mul, star, substitute
from .linalg import EchelonBasis


class MultilinearElement:
    """Degree-``n`` element multilinear in ``x_1..x_n``, keyed by permutation."""

    __slots__ = ("degree", "_coefficients")

    def __init__(self, degree: int, coefficients: Mapping[Sequence[int], object] | None = None):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.degree = degree
        full = set(range(1, degree + 1))
        clean: dict[tuple[int, ...], Fraction] = {}
        for sigma, c in (coefficients or {}).items():
            sigma = tuple(sigma)
            if len(sigma) != degree or set(sigma) != full:
                raise ValueError(f"{sigma} is not a permutation of 1..{degree}")
            c = as_coefficient(c)
            if c:
                clean[sigma] = c
        self._coefficients = clean

    @property
    def coefficients(self) -> dict[tuple[int, ...], Fraction]:
        return {s: self._coefficients[s] for s in sorted(self._coefficients)}

    @classmethod
    def from_element(cls, f: Element, degree: int | None = None) -> MultilinearElement:
        if degree is None:
            degrees = f.degrees()
            if len(degrees) != 1:
                raise ValueError("cannot infer the degree of a zero or inhomogeneous element")
            (degree,) = degrees
        return cls(degree, f.terms)

    def to_element(self) -> Element:
        return Element(self._coefficients)

    def is_zero(self) -> bool:
        return not self._coefficients

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultilinearElement):
            return NotImplemented
        return self.degree == other.degree and self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self._coefficients.items())))

    def __repr__(self) -> str:
        return f"MultilinearElement({self.degree}, {self.coefficients})"


def multidegree(word: Word) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(Counter(word).items()))


def multihomogeneous_components(f: Element) -> dict[tuple, Element]:
    parts: dict[tuple, dict] = defaultdict(dict)
    for w, c in f:
        parts[multidegree(w)][w] = c
    keys = sorted(parts, key=lambda k: (sum(d for _, d in k), k))
    return {k: Element(parts[k]) for k in keys}


def _slots(mdeg: tuple[tuple[int, int], ...]) -> dict[int, list[int]]:
    # fresh variables are numbered consecutively, variable by variable
    out, nxt = {}, 1
    for var, d in mdeg:
        out[var] = list(range(nxt, nxt + d))
        nxt += d
    return out


def _nonempty_subsets(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    for r in range(1, len(items) + 1):
        yield from itertools.combinations(items, r)


def polarize(component: Element, mdeg: tuple[tuple[int, int], ...]) -> MultilinearElement:
    """Full linearization of a multihomogeneous element by inclusion-exclusion.

    Each variable of degree ``d`` is replaced by ``y_1 + ... + y_d`` restricted
    to nonempty subsets ``S`` with sign ``(-1)^(d - |S|)``; what survives is
    exactly the part multilinear in all fresh variables.
    """
    slots = _slots(mdeg)
    variables = [v for v, _ in mdeg]
    n = sum(d for _, d in mdeg)
    acc = Element.zero()
    for choice in itertools.product(*(_nonempty_subsets(slots[v]) for v in variables)):
        sign = 1
        images = {}
        for v, subset in zip(variables, choice):
            if (len(slots[v]) - len(subset)) % 2:
                sign = -sign
            images[v] = Element({(s,): 1 for s in subset})
        acc = acc + substitute(component, images).scale(sign)
    return MultilinearElement.from_element(acc, degree=n)


def multilinearize(f: Element) -> list[MultilinearElement]:
    """Multilinear components of ``f``, one per multihomogeneous component.

    For ``f`` of degree ``n`` in a single variable the result ``M`` satisfies
    ``M(x, ..., x) = n! f``.  The zero element has no components.
    """
    return [polarize(comp, mdeg) for mdeg, comp in multihomogeneous_components(f).items()]


def is_identity_variety(e: ExprTree) -> bool:
    """True iff ``e`` vanishes in every Zinbiel algebra."""
    return normal_form(e).is_zero()


class InconclusiveEvaluation(RuntimeError):
    """No evaluation witness was found for a structurally nonzero component."""

    def __init__(self, component: MultilinearElement, max_weight: int):
        super().__init__(
            f"inconclusive-evaluation: no witness with weights <= {max_weight} "
            f"for a nonzero component of degree {component.degree}"
        )
        self.component = component
        self.max_weight = max_weight


@dataclass
class IdentityVerdict:
    holds: bool
    witness: Witness | None = None
    component: MultilinearElement | None = None


def is_identity_one_generated(e: ExprTree, max_weight: int = 6) -> IdentityVerdict:
    """Decide whether ``e`` is an identity of the free algebra on one generator.

    The structural verdict comes from the rewriting normal form.  Independently,
    ``e`` is evaluated with the half-shuffle product, multilinearized, and each
    component is searched for a weight tuple where it does not vanish.
    """
    holds = normal_form(e).is_zero()
    found = None
    unwitnessed = None
    for comp in multilinearize(evaluate(e)):
        w = witness_search(comp, max_weight)
        if w is not None:
            found = (w, comp)
            break
        if unwitnessed is None:
            unwitnessed = comp
    if holds:
        if found is not None:
            raise AssertionError(f"normal form is zero but {found[0]} evaluates nonzero")
        return IdentityVerdict(True)
    if found is None:
        raise InconclusiveEvaluation(unwitnessed, max_weight)
    return IdentityVerdict(False, witness=found[0], component=found[1])


def relabel(f: Element, labels: Sequence[int]) -> Element:
    """Rename generator ``i`` to ``labels[i - 1]``."""
    return Element({tuple(labels[l - 1] for l in w): c for w, c in f})


def ordered_set_partitions(n: int, blocks: int) -> Iterator[list[tuple[int, ...]]]:
    """Ordered partitions of ``{1..n}`` into ``blocks`` nonempty blocks."""
    for labels in itertools.product(range(blocks), repeat=n):
        parts: list[list[int]] = [[] for _ in range(blocks)]
        for i, b in enumerate(labels, start=1):
            parts[b].append(i)
        if all(parts):
            yield [tuple(p) for p in parts]


@dataclass
class SpanRecord:
    degree: int
    dimension: int
    full_dimension: int
    basis: list[Element] = field(default_factory=list, repr=False)

    @property
    def full(self) -> bool:
        return self.dimension == self.full_dimension


class ConsequenceEngine:
    """Multilinear components of the T-ideal generated by a set of identities.

    The degree-``d`` component is spanned by

    * substitution instances ``M(w_1, ..., w_m)`` of each multilinearized
      generator ``M``, where ``w_i`` are basis words on the blocks of an ordered
      set partition of ``{1..d}``;
    * products ``b c`` and ``c b`` with ``b`` in a lower component, relabelled
      onto a subset ``S``, and ``c`` a basis word on the complement of ``S``.

    A T-ideal is multigraded and two-sided, so these two families exhaust it;
    lower components are computed first and reused.
    """

    def __init__(self, generators: Iterable[Element]):
        self.kernels: list[MultilinearElement] = []
        for g in generators:
            self.kernels.extend(multilinearize(g))
        self._records: dict[int, SpanRecord] = {}

    def record(self, d: int) -> SpanRecord:
        if d < 1:
            raise ValueError("degree must be >= 1")
        if d not in self._records:
            for k in range(1, d):
                self.record(k)
            self._records[d] = self._compute(d)
        return self._records[d]

    def _candidates(self, d: int) -> Iterator[Element]:
        everything = range(1, d + 1)
        for k in range(d - 1, 0, -1):
            lower = self._records[k].basis
            if not lower:
                continue
            for subset in itertools.combinations(everything, k):
                rest = [i for i in everything if i not in subset]
                words = [Element.word(p) for p in itertools.permutations(rest)]
                for b in lower:
                    b = relabel(b, subset)
                    for c in words:
                        yield mul(b, c)
                        yield mul(c, b)
        for kernel in self.kernels:
            if kernel.degree > d:
                continue
            poly = kernel.to_element()
            for blocks in ordered_set_partitions(d, kernel.degree):
                for words in itertools.product(*(itertools.permutations(b) for b in blocks)):
                    images = {i: Element.word(w) for i, w in enumerate(words, start=1)}
                    yield substitute(poly, images)

    def _compute(self, d: int) -> SpanRecord:
        full = math.factorial(d)
        column = {p: i for i, p in enumerate(permutations(d))}
        basis = EchelonBasis()
        kept: list[Element] = []
        for cand in self._candidates(d):
            if basis.add({column[w]: c for w, c in cand}):
                kept.append(cand)
                if basis.rank == full:
                    break
        return SpanRecord(d, basis.rank, full, kept)

    def contains(self, f: Element) -> bool:
        """Membership of a multilinear element of degree ``d`` in the component."""
        (d,) = f.degrees()
        rec = self.record(d)
        column = {p: i for i, p in enumerate(permutations(d))}
        basis = EchelonBasis()
        for b in rec.basis:
            basis.add({column[w]: c for w, c in b})
        return basis.contains({column[w]: c for w, c in f})


def consequence_span(generators: Iterable[Element], d: int) -> SpanRecord:
    """Degree-``d`` multilinear component of the T-ideal of ``generators``."""
    return ConsequenceEngine(generators).record(d)


@dataclass
class ConsequenceReport:
    nil_index: int
    max_degree: int
    records: list[SpanRecord]
    nilpotency_degree: int | None

    def dimensions(self) -> dict[int, int]:
        return {r.degree: r.dimension for r in self.records}


def nil_lab(t: int, d_max: int) -> ConsequenceReport:
    """Consequences of ``y^t = 0`` in degrees ``t..d_max``.

    ``nilpotency_degree`` is the least degree whose multilinear component is
    entirely in the T-ideal, which in characteristic zero means all products
    of that length vanish; ``None`` if not reached by ``d_max``.
    """
    if t < 1:
        raise ValueError("nil index must be >= 1")
    if d_max < t:
        raise ValueError("d_max must be >= t")
    engine = ConsequenceEngine([Element.word((1,) * t)])
    records = [engine.record(d) for d in range(t, d_max + 1)]
    reached = next((r.degree for r in records if r.full), None)
    return ConsequenceReport(t, d_max, records, reached)


def _splits(word: Word, parts: int) -> Iterator[tuple[Word, ...]]:
    n = len(word)
    for cuts in itertools.combinations(range(1, n), parts - 1):
        bounds = (0, *cuts, n)
        yield tuple(word[a:b] for a, b in zip(bounds, bounds[1:]))


def symmetrization_instances(d_max: int, parts: int, alphabet: int = 2) -> Iterator[tuple[Word, ...]]:
    """Word tuples of total degree ``<= d_max`` used by :func:`symmetrization_check`.

    Multilinear tuples (distinct letters) cover every tuple by renaming letters;
    tuples over a small alphabet exercise repeated letters directly.
    """
    for s in range(parts, d_max + 1):
        for sigma in itertools.permutations(range(1, s + 1)):
            yield from _splits(sigma, parts)
        if alphabet > 1:
            for letters in itertools.product(range(1, alphabet + 1), repeat=s):
                yield from _splits(letters, parts)


def symmetrization_check(d_max: int, alphabet: int = 2) -> bool:
    """``fg + gf`` is commutative and associative on basis words up to ``d_max``."""
    if d_max < 3:
        raise ValueError("d_max must be >= 3")
    for u, v in symmetrization_instances(d_max, 2, alphabet):
        a, b = Element.word(u), Element.word(v)
        if star(a, b) != star(b, a):
            return False
    for u, v, w in symmetrization_instances(d_max, 3, alphabet):
        a, b, c = Element.word(u), Element.word(v), Element.word(w)
        if star(star(a, b), c) != star(a, star(b, c)):
            return False
    return True
