"""Exact computer algebra for free Zinbiel (dual Leibniz) algebras over Q."""

from .evaluation import (
    OneVarElement,
    descent_check,
    p_n,
    psi_element,
    psi_word,
    q_n,
    theorem1_rank,
    witness_search,
)
from .expr import evaluate, normal_form
from .freealg import Element, mul, mul_basis, power, power_product_coefficient, shuffle, star
from .identities import (
    MultilinearElement,
    consequence_span,
    is_identity_one_generated,
    is_identity_variety,
    multilinearize,
    nil_lab,
    symmetrization_check,
)
from .parser import format_element, parse

__version__ = "0.1.0"

__all__ = [
    "Element", "MultilinearElement", "OneVarElement",
    "consequence_span", "descent_check", "evaluate", "format_element",
    "is_identity_one_generated", "is_identity_variety", "mul", "mul_basis",
    "multilinearize", "nil_lab", "normal_form", "p_n", "parse", "power",
    "power_product_coefficient", "psi_element", "psi_word", "q_n", "shuffle",
    "star", "symmetrization_check", "theorem1_rank", "witness_search",
]
