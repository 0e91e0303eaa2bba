import itertools
import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from _corpus import make_rng, random_homogeneous
from zinbiel.evaluation import (
    OneVarElement,
    UnassignedGeneratorError,
    descent,
    descent_check,
    lambda_tuples,
    p_n,
    permutations,
    psi_element,
    psi_word,
    q_denominator_factors,
    q_n,
    theorem1_rank,
    witness_search,
)
from zinbiel.freealg import Element, mul, power
from zinbiel.identities import MultilinearElement

weights = st.lists(st.integers(1, 20), min_size=1, max_size=8)


def test_p_examples():
    assert p_n((5,)) == 1
    assert p_n((1, 2)) == Fraction(1, 3)
    assert p_n((1, 2, 3)) == Fraction(1, 15)


def test_q_examples():
    assert q_n((3, 4)) == Fraction(1, 4)
    assert q_n((1, 2, 3)) == Fraction(1, 15)
    assert p_n((1, 2, 3)) == Fraction(1 * 2 * 3, 6) * q_n((1, 2, 3))
    assert q_n((7,)) == 1


def test_rejects_nonpositive_weights():
    with pytest.raises(ValueError):
        p_n((1, 0))
    with pytest.raises(ValueError):
        q_n(())


@given(weights)
def test_p_recursion_and_relation(lam):
    total = sum(lam)
    if len(lam) > 1:
        assert p_n(lam) == Fraction(lam[0], total) * p_n(lam[1:])
    assert p_n(lam) == Fraction(math.prod(lam), total) * q_n(lam)


def test_psi_word_examples():
    assert psi_word([1], {1: 5}) == (1, 5)
    assert psi_word([1, 2], {1: 1, 2: 1}) == (Fraction(1, 2), 2)
    coef, m = psi_word([1, 2, 3], {1: 1, 2: 1, 3: 1})
    assert (coef, m) == (Fraction(1, 6), 3)
    # x(x x) = x^3 = X_3 / 3!
    x = Element.generator(1)
    assert OneVarElement({3: coef}).to_element() == power(x, 3)
    with pytest.raises(UnassignedGeneratorError):
        psi_word([1, 4], {1: 1})


def test_psi_element_examples():
    assert not psi_element(Element.zero(), {})
    relator = (mul(mul(Element.generator(1), Element.generator(2)), Element.generator(3))
               - mul(Element.generator(1), mul(Element.generator(3), Element.generator(2)))
               - mul(Element.generator(1), mul(Element.generator(2), Element.generator(3))))
    assert not psi_element(relator, {1: 2, 2: 3, 3: 1})
    f = Element({(1, 2, 3): 1, (2, 1, 3): -1})
    expected = Fraction(1, 15) - Fraction(2, 6) * Fraction(1, 4)
    assert expected == Fraction(-1, 60)
    assert psi_element(f, {1: 1, 2: 2, 3: 3}) == OneVarElement({6: expected})


def test_one_var_product_against_word_basis():
    # X_i X_j computed in the word basis through X_m = m! x^m
    for i, j in itertools.product(range(1, 7), repeat=2):
        a, b = OneVarElement.basis(i), OneVarElement.basis(j)
        via_words = OneVarElement.from_element(mul(a.to_element(), b.to_element()))
        assert via_words == a * b == OneVarElement({i + j: Fraction(i, i + j)})


def test_psi_homomorphism_small():
    rng = make_rng(11)
    for _ in range(40):
        f = random_homogeneous(rng, rng.randint(1, 3))
        g = random_homogeneous(rng, rng.randint(1, 3))
        assign = {i: rng.randint(1, 5) for i in (1, 2, 3)}
        assert psi_element(mul(f, g), assign) == psi_element(f, assign) * psi_element(g, assign)


def test_lambda_enumeration_order():
    tuples = list(lambda_tuples(2, 3))
    assert tuples[:4] == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert len(tuples) == 9 == len(set(tuples))


def test_theorem1_rank_small():
    assert theorem1_rank(1, 1).rank == 1
    cert = theorem1_rank(2, 2)
    assert cert.rank == 2 and cert.certified
    assert cert.witnesses == [(1, 1), (1, 2)]
    m = sympy.Matrix([[sympy.Rational(1, 2), sympy.Rational(1, 2)],
                      [sympy.Rational(1, 3), sympy.Rational(2, 3)]])
    assert m.det() == sympy.Rational(1, 6)


def _p_matrix(n, tuples):
    return sympy.Matrix([
        [sympy.Rational(*_parts(p_n([lam[s - 1] for s in sigma]))) for sigma in permutations(n)]
        for lam in tuples
    ])


def _parts(f):
    return f.numerator, f.denominator


@pytest.mark.parametrize("n", [3, 4])
def test_theorem1_witnesses_form_invertible_submatrix(n):
    cert = theorem1_rank(n, 4)
    assert cert.certified
    assert max(max(w) for w in cert.witnesses) <= 4
    assert _p_matrix(n, cert.witnesses).det() != 0


def test_theorem1_rank_degree3_against_sympy_over_all_tuples():
    tuples = list(lambda_tuples(3, 4))
    assert _p_matrix(3, tuples).rank() == 6
    assert theorem1_rank(3, 4).rank == 6


def test_rank_deficient_when_weights_too_small():
    # only one tuple with entries <= 1: rank 1 regardless of n
    cert = theorem1_rank(3, 1)
    assert cert.rank == 1 and not cert.certified


def test_witness_search_examples():
    m = MultilinearElement(2, {(1, 2): 1})
    w = witness_search(m, 6)
    assert w.weights == (1, 1) and w.value == Fraction(1, 2)
    assert witness_search(MultilinearElement(3), 6) is None
    m = MultilinearElement(2, {(1, 2): 1, (2, 1): -1})
    w = witness_search(m, 6)
    assert w.weights == (1, 2)
    assert w.value == p_n((1, 2)) - p_n((2, 1)) == Fraction(-1, 3)


def _sympy_descent(prefix):
    n = len(prefix) + 1
    lam = sympy.symbols(f"l1:{n + 1}")
    q = 1 / sympy.prod([sum(lam[k:]) for k in range(1, n)])
    limit = sympy.cancel(lam[-1] * q).subs(lam[-1], 0)
    return limit.subs(dict(zip(lam, prefix)))


def test_descent_examples():
    res = descent((3, 4))
    assert res.limit_value == Fraction(1, 4) == q_n((3, 4))
    assert res.ok
    assert q_denominator_factors((1, 3, 2)) == [frozenset({2, 3}), frozenset({2})]
    res = descent((1, 1, 1))
    assert res.limit_value == q_n((1, 1, 1)) == Fraction(1, 2)
    assert _sympy_descent((1, 1, 1)) == sympy.Rational(1, 2)
    assert descent_check((1, 1, 1))


def test_descent_against_sympy():
    rng = random.Random(5)
    for _ in range(25):
        prefix = [rng.randint(1, 9) for _ in range(rng.randint(1, 5))]
        res = descent(prefix)
        assert res.ok
        assert sympy.Rational(res.limit_value.numerator, res.limit_value.denominator) == _sympy_descent(prefix)


def test_divisibility_claim_exhaustive_small():
    for n in range(2, 6):
        for sigma in permutations(n):
            singleton = frozenset({n}) in q_denominator_factors(sigma)
            assert singleton == (sigma[-1] == n)
