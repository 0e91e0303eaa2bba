import itertools
import math
import random
from collections import Counter, defaultdict
from fractions import Fraction

import pytest
import sympy

from _corpus import bracketing, make_rng, random_coefficient
from zinbiel.expr import Generator, Product, Scalar, Sum, normal_form
from zinbiel.freealg import Element, substitute
from zinbiel.identities import (
    ConsequenceEngine,
    InconclusiveEvaluation,
    MultilinearElement,
    consequence_span,
    is_identity_one_generated,
    is_identity_variety,
    multilinearize,
    nil_lab,
    ordered_set_partitions,
    symmetrization_check,
    symmetrization_instances,
)

W = Element.word
x1, x2, x3 = (Generator(i) for i in (1, 2, 3))
RELATOR = Sum((Product(Product(x1, x2), x3),
               Scalar(-1, Product(x1, Product(x3, x2))),
               Scalar(-1, Product(x1, Product(x2, x3)))))


def brute_polarize(f):
    """Multilinear components by assigning fresh slots to letter occurrences."""
    parts = defaultdict(lambda: defaultdict(Fraction))
    for word, c in f:
        mdeg = tuple(sorted(Counter(word).items()))
        slots, nxt = {}, 1
        for var, d in mdeg:
            slots[var] = list(range(nxt, nxt + d))
            nxt += d
        positions = {var: [i for i, l in enumerate(word) if l == var] for var, _ in mdeg}
        for choice in itertools.product(*(itertools.permutations(slots[v]) for v, _ in mdeg)):
            out = list(word)
            for (var, _), perm in zip(mdeg, choice):
                for pos, s in zip(positions[var], perm):
                    out[pos] = s
            parts[mdeg][tuple(out)] += c
    keys = sorted(parts, key=lambda k: (sum(d for _, d in k), k))
    return [MultilinearElement(sum(d for _, d in k), parts[k]) for k in keys]


def test_multilinear_element_roundtrip():
    f = Element({(1, 2, 3): 2, (3, 1, 2): -1})
    m = MultilinearElement.from_element(f)
    assert m.degree == 3 and m.to_element() == f
    with pytest.raises(ValueError):
        MultilinearElement(2, {(1, 1): 1})


def test_multilinearize_examples():
    assert multilinearize(W((1, 2, 3))) == [MultilinearElement(3, {(1, 2, 3): 1})]
    assert multilinearize(W((1, 1))) == [MultilinearElement(2, {(1, 2): 1, (2, 1): 1})]
    assert multilinearize(W((1, 1))) == brute_polarize(W((1, 1)))
    cube = multilinearize(W((1, 1, 1)))
    assert cube == [MultilinearElement(3, {p: 1 for p in itertools.permutations((1, 2, 3))})]
    assert cube == brute_polarize(W((1, 1, 1)))
    assert multilinearize(Element.zero()) == []


def test_multilinearize_matches_brute_force():
    rng = make_rng(2)
    for _ in range(30):
        f = Element({tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 4))): random_coefficient(rng)
                     for _ in range(3)})
        assert multilinearize(f) == brute_polarize(f)


@pytest.mark.parametrize("n", range(1, 7))
def test_polarization_soundness(n):
    rng = make_rng(n)
    # homogeneous one-variable element of degree n is a multiple of x^n
    f = W((1,) * n, random_coefficient(rng))
    (m,) = multilinearize(f)
    back = substitute(m.to_element(), {i: W((1,)) for i in range(1, n + 1)})
    assert back == f.scale(math.factorial(n))


def test_is_identity_variety_examples():
    assert is_identity_variety(RELATOR)
    assert not is_identity_variety(Sum((Product(x1, x2), Scalar(-1, Product(x2, x1)))))
    assert is_identity_variety(Sum((Product(Product(x1, x2), x3), Scalar(-1, Product(Product(x1, x3), x2)))))


def test_is_identity_one_generated_examples():
    v = is_identity_one_generated(RELATOR, 6)
    assert v.holds and v.witness is None
    v = is_identity_one_generated(Sum((Product(x1, x2), Scalar(-1, Product(x2, x1)))), 6)
    assert not v.holds
    assert v.witness.weights == (1, 2) and v.witness.value == Fraction(-1, 3)
    assert v.component == MultilinearElement(2, {(1, 2): 1, (2, 1): -1})
    v = is_identity_one_generated(Scalar(2, RELATOR), 6)
    assert v.holds


def test_inconclusive_is_reported():
    # with weights bounded by 1 every degree-2 component collapses
    e = Sum((Product(x1, x2), Scalar(-1, Product(x2, x1))))
    with pytest.raises(InconclusiveEvaluation):
        is_identity_one_generated(e, 1)


def test_ordered_set_partitions():
    parts = list(ordered_set_partitions(3, 2))
    assert len(parts) == 6
    assert [(1, 2), (3,)] in parts and [(3,), (1, 2)] in parts


def test_consequence_span_examples():
    assert consequence_span([], 3).dimension == 0
    rec = consequence_span([W((1, 2)) - W((2, 1))], 2)
    assert (rec.dimension, rec.full_dimension) == (1, 2)
    rec = consequence_span([W((1, 1))], 2)
    assert rec.dimension == 1
    (b,) = rec.basis
    assert b.scale(1 / b.coefficient((1, 2))) == W((1, 2)) + W((2, 1))


def _oracle_dimension(generator_poly, d, samples, seed):
    """Span dimension from random ideal elements reduced by rewriting; sympy rank."""
    rng = random.Random(seed)
    (kernel,) = brute_polarize(generator_poly)
    m = kernel.degree
    perms = list(itertools.permutations(range(1, d + 1)))
    col = {p: i for i, p in enumerate(perms)}
    rows = []
    for _ in range(samples):
        variables = list(range(1, d + 1))
        rng.shuffle(variables)
        k = rng.randint(m, d)
        inner, outer = variables[:k], variables[k:]
        cuts = sorted(rng.sample(range(1, k), m - 1)) if m > 1 else []
        bounds = [0, *cuts, k]
        blocks = [bracketing(rng, [Generator(v) for v in inner[a:b]]) for a, b in zip(bounds, bounds[1:])]
        instance = Sum(tuple(
            Scalar(c, _left_normed([blocks[s - 1] for s in sigma]))
            for sigma, c in kernel.coefficients.items()
        ))
        tree = instance
        while outer:
            j = rng.randint(1, len(outer))
            chunk, outer = outer[:j], outer[j:]
            other = bracketing(rng, [Generator(v) for v in chunk])
            tree = Product(tree, other) if rng.random() < 0.5 else Product(other, tree)
        f = normal_form(tree)
        row = [0] * len(perms)
        for w, c in f:
            row[col[w]] = sympy.Rational(c.numerator, c.denominator)
        rows.append(row)
    return sympy.Matrix(rows).rank()


def _left_normed(trees):
    node = trees[-1]
    for t in reversed(trees[:-1]):
        node = Product(t, node)
    return node


@pytest.mark.parametrize("t,d,expected", [(2, 2, 1), (2, 3, 6), (3, 3, 1), (3, 4, 10)])
def test_consequence_span_against_random_sampling_oracle(t, d, expected):
    oracle = _oracle_dimension(W((1,) * t), d, samples=150, seed=t * 10 + d)
    assert oracle == expected
    assert consequence_span([W((1,) * t)], d).dimension == expected


def test_span_monotone_in_generators():
    gens = [W((1, 1, 1)), W((1, 2)) - W((2, 1)), W((1, 1))]
    for d in range(1, 5):
        dims = [consequence_span(gens[:k], d).dimension for k in range(len(gens) + 1)]
        assert dims == sorted(dims)
        assert dims[-1] <= math.factorial(d)


def test_nil_lab_index_one():
    report = nil_lab(1, 3)
    assert report.nilpotency_degree == 1
    assert report.dimensions() == {1: 1, 2: 2, 3: 6}


def test_nil_lab_index_two_regression():
    report = nil_lab(2, 6)
    assert report.nilpotency_degree == 3
    assert report.dimensions() == {2: 1, 3: 6, 4: 24, 5: 120, 6: 720}


def test_nil_lab_index_three_table():
    report = nil_lab(3, 5)
    assert report.dimensions() == {3: 1, 4: 10, 5: 85}
    assert report.nilpotency_degree is None


def test_full_span_contains_every_word():
    engine = ConsequenceEngine([W((1, 1))])
    assert engine.record(3).full
    for p in itertools.permutations((1, 2, 3)):
        assert engine.contains(W(p))
    assert not engine.contains(W((1, 2)))


def test_symmetrization_examples():
    assert symmetrization_check(3)
    triples = list(symmetrization_instances(3, 3, alphabet=1))
    assert ((1,), (2,), (3,)) in triples and len(triples) == 6


def test_symmetrization_instances_counts():
    pairs = list(symmetrization_instances(4, 2, alphabet=1))
    # permutations of 1..s split into two nonempty words
    assert len(pairs) == sum(math.factorial(s) * (s - 1) for s in range(2, 5))
