"""Evaluation of the free algebra into the one-generated free algebra.

With ``X_m = m! x^m`` the one-generated algebra multiplies as
``X_i X_j = i/(i+j) X_(i+j)``.  Sending generator ``x_i`` to ``X_(lambda_i)``
maps a left-normed word ``x_i1(x_i2(...))`` to
``P(lambda_i1, ..., lambda_in) X_(lambda_i1 + ... + lambda_in)``.

This module computes ``P`` and its companion ``Q``, evaluates elements, and
certifies through exact ranks that no nonzero multilinear element vanishes
under every such evaluation.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .freealg import Element, as_coefficient
from .linalg import EchelonBasis

DEFAULT_MAX_WEIGHT = 8


class UnassignedGeneratorError(KeyError):
    pass


def _weights(lam: Iterable[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if not lam:
        raise ValueError("a weight tuple must be nonempty")
    if any(x < 1 for x in lam):
        raise ValueError(f"weights must be positive integers, got {lam}")
    return lam


def suffix_sums(lam: Sequence[int]) -> list[int]:
    """``[lam_k + ... + lam_n for k = 1..n]``."""
    out = list(itertools.accumulate(reversed(lam)))
    out.reverse()
    return out


def p_n(lam: Sequence[int]) -> Fraction:
    """``prod_{k<n} lam_k / (lam_k + ... + lam_n)``; equal to 1 for a single weight."""
    return Fraction(*_p_parts(_weights(lam)))


def _p_parts(lam: Sequence[int]) -> tuple[int, int]:
    # unreduced numerator and denominator of P_n, no validation
    tails = suffix_sums(lam)
    return math.prod(lam[:-1]), math.prod(tails[:-1])


def q_n(lam: Sequence[int]) -> Fraction:
    """``1 / prod_{k>=2} (lam_k + ... + lam_n)``; equal to 1 for a single weight."""
    lam = _weights(lam)
    den = math.prod(suffix_sums(lam)[1:])
    return Fraction(1, den)


def q_denominator_factors(order: Sequence[int]) -> list[frozenset[int]]:
    """Linear factors of the denominator of ``Q_n(lam_o1, ..., lam_on)``.

    Each factor ``F`` stands for ``sum(lam_i for i in F)``.
    """
    return [frozenset(order[k:]) for k in range(1, len(order))]


class OneVarElement:
    """``sum_m c_m X_m`` in the free algebra on one generator, ``X_m = m! x^m``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean: dict[int, Fraction] = defaultdict(Fraction)
        for m, c in (terms or {}).items():
            if int(m) < 1:
                raise ValueError(f"weights must be >= 1, got {m}")
            clean[int(m)] += as_coefficient(c)
        self._terms = {m: c for m, c in clean.items() if c}

    @property
    def terms(self) -> dict[int, Fraction]:
        return {m: self._terms[m] for m in sorted(self._terms)}

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OneVarElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: OneVarElement) -> OneVarElement:
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return OneVarElement(acc)

    def __neg__(self) -> OneVarElement:
        return OneVarElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: OneVarElement) -> OneVarElement:
        return self + (-other)

    def scale(self, s) -> OneVarElement:
        s = as_coefficient(s)
        return OneVarElement({m: s * c for m, c in self._terms.items()})

    def __mul__(self, other: OneVarElement) -> OneVarElement:
        acc: dict[int, Fraction] = defaultdict(Fraction)
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                acc[i + j] += a * b * Fraction(i, i + j)
        return OneVarElement(acc)

    def to_element(self, generator: int = 1) -> Element:
        """Rewrite in the word basis: ``X_m`` becomes ``m!`` times the word ``(g,)*m``."""
        return Element({(generator,) * m: c * math.factorial(m) for m, c in self._terms.items()})

    @classmethod
    def from_element(cls, f: Element) -> OneVarElement:
        terms = {}
        for word, c in f:
            if len(set(word)) != 1:
                raise ValueError(f"{word} is not a power of a single generator")
            terms[len(word)] = c / math.factorial(len(word))
        return cls(terms)

    @classmethod
    def basis(cls, m: int) -> OneVarElement:
        return cls({m: 1})

    def __repr__(self) -> str:
        inner = ", ".join(f"X{m}: {c}" for m, c in self)
        return f"OneVarElement({{{inner}}})"


def _lookup(assign: Mapping[int, int], letter: int) -> int:
    try:
        weight = assign[letter]
    except KeyError:
        raise UnassignedGeneratorError(f"no weight assigned to x{letter}") from None
    if weight < 1:
        raise ValueError(f"weight of x{letter} must be positive, got {weight}")
    return weight


def psi_word(word: Sequence[int], assign: Mapping[int, int]) -> tuple[Fraction, int]:
    """Image of a basis word as ``(coefficient, m)`` meaning ``coefficient * X_m``."""
    lam = [_lookup(assign, letter) for letter in word]
    return p_n(lam), sum(lam)


def psi_element(f: Element, assign: Mapping[int, int]) -> OneVarElement:
    acc: dict[int, Fraction] = defaultdict(Fraction)
    for word, c in f:
        p, m = psi_word(word, assign)
        acc[m] += c * p
    return OneVarElement(acc)


def lambda_tuples(n: int, max_weight: int) -> Iterator[tuple[int, ...]]:
    """Weight tuples with entries in ``1..max_weight``.

    Tuples come in shells of increasing largest entry, lexicographic within a
    shell, so the bound effectively grows one step at a time.
    """
    for b in range(1, max_weight + 1):
        for lam in itertools.product(range(1, b + 1), repeat=n):
            if b in lam:
                yield lam


def permutations(n: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(1, n + 1)))


def _row(perms: Sequence[tuple[int, ...]], lam: Sequence[int]) -> list[Fraction]:
    # entry for sigma: P_n(lam_sigma1, ..., lam_sigman)
    return [Fraction(*_p_parts([lam[s - 1] for s in sigma])) for sigma in perms]


@dataclass
class RankCertificate:
    degree: int
    rank: int
    max_weight: int
    witnesses: list[tuple[int, ...]] = field(default_factory=list)
    rows_examined: int = 0

    @property
    def full_rank(self) -> int:
        return math.factorial(self.degree)

    @property
    def certified(self) -> bool:
        return self.rank == self.full_rank


def theorem1_rank(n: int, max_weight: int = DEFAULT_MAX_WEIGHT) -> RankCertificate:
    """Exact rank of the matrix ``[P_n(lam_sigma)]`` over weight tuples and permutations.

    Rank ``n!`` means no nonzero multilinear element of degree ``n`` vanishes
    under every evaluation, i.e. the one-generated free algebra satisfies no
    nontrivial identity of that degree.  ``witnesses`` are the weight tuples
    whose rows form an invertible submatrix.
    """
    if n < 1 or max_weight < 1:
        raise ValueError("degree and max_weight must be >= 1")
    perms = permutations(n)
    target = len(perms)
    basis = EchelonBasis()
    cert = RankCertificate(degree=n, rank=0, max_weight=max_weight)
    for lam in lambda_tuples(n, max_weight):
        cert.rows_examined += 1
        if basis.add(_row(perms, lam)):
            cert.witnesses.append(lam)
            if basis.rank == target:
                break
    cert.rank = basis.rank
    return cert


@dataclass(frozen=True)
class Witness:
    weights: tuple[int, ...]
    value: Fraction


def multilinear_value(coefficients: Mapping[Sequence[int], Fraction], lam: Sequence[int]) -> Fraction:
    """``sum_sigma alpha_sigma P_n(lam_sigma1, ..., lam_sigman)``."""
    return sum(
        (c * Fraction(*_p_parts([lam[s - 1] for s in sigma])) for sigma, c in coefficients.items()),
        Fraction(0),
    )


def witness_search(m, max_weight: int = 6) -> Witness | None:
    """First weight tuple on which the multilinear element ``m`` evaluates nonzero.

    ``m`` is a :class:`~zinbiel.identities.MultilinearElement` (anything with
    ``degree`` and a ``coefficients`` map works).  Returns ``None`` when every
    tuple with entries up to ``max_weight`` gives zero.
    """
    coefficients = dict(m.coefficients)
    if not coefficients:
        return None
    for lam in lambda_tuples(m.degree, max_weight):
        value = multilinear_value(coefficients, lam)
        if value:
            return Witness(lam, value)
    return None


@dataclass
class DescentResult:
    prefix: tuple[int, ...]
    limit_value: Fraction
    expected: Fraction
    permutations_checked: int
    divisibility_ok: bool

    @property
    def ok(self) -> bool:
        return self.limit_value == self.expected and self.divisibility_ok


def _descent_sample(n: int, sample: int, seed) -> list[tuple[int, ...]]:
    if math.factorial(n) <= sample:
        return permutations(n)
    rng = random.Random(seed)
    base = list(range(1, n + 1))
    out = []
    for _ in range(sample):
        rng.shuffle(base)
        out.append(tuple(base))
    return out


def descent(prefix: Sequence[int], sample: int = 120) -> DescentResult:
    """Check the descent step ``lam_n Q_n(prefix, lam_n) |_(lam_n = 0) = Q_(n-1)(prefix)``.

    The multiplication by ``lam_n`` cancels the singleton factor ``{n}`` of the
    denominator before ``lam_n`` is set to zero.  Also checks, on up to
    ``sample`` permutations, that the denominator of ``Q_n(lam_sigma)`` has the
    singleton factor ``{n}`` exactly when ``sigma(n) = n``.
    """
    prefix = _weights(prefix)
    n = len(prefix) + 1
    values = dict(enumerate(prefix, start=1))
    values[n] = 0

    factors = q_denominator_factors(tuple(range(1, n + 1)))
    singleton = frozenset({n})
    if singleton in factors:
        factors.remove(singleton)
        den = 1
        for f in factors:
            den *= sum(values[i] for i in f)
        limit = Fraction(1, den) if den else None
    else:
        limit = None

    sampled = _descent_sample(n, sample, seed=",".join(map(str, prefix)))
    divisibility_ok = all(
        (singleton in q_denominator_factors(sigma)) == (sigma[-1] == n) for sigma in sampled
    )
    return DescentResult(
        prefix=prefix,
        limit_value=limit,
        expected=q_n(prefix),
        permutations_checked=len(sampled),
        divisibility_ok=divisibility_ok,
    )


def descent_check(prefix: Sequence[int], sample: int = 120) -> bool:
    return descent(prefix, sample).ok
