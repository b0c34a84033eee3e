"""Varieties generated by wreath products of abelian groups.

The criterion, the nilpotency-class formulas it rests on, and a brute-force
oracle that validates both on small concrete groups.
"""

from .abelian import (
    INF,
    AbelianDescriptor,
    Cardinal,
    ExtNat,
    InfiniteExponentError,
    canonicalize,
    cyclic,
    ext_lcm,
    is_finite,
)
from .criterion import (
    Alternative,
    CaseTag,
    ChainReport,
    ClassGrowthStep,
    Classification,
    SeparatingShape,
    SeparationStep,
    Verdict,
    Witness,
    chain_analysis,
    classify,
    generates,
    generates_finite,
    separating_parameters,
)
from .nilpotency import (
    lambda_bound,
    lambda_general_bound,
    liebeck_class,
    min_t0,
    nu,
    nu_general,
    separation_gap,
)
from .oracle import (
    BudgetExceededError,
    FiniteAbelianGroup,
    Word,
    WreathElement,
    WreathProduct,
    build_wreath,
    commutator,
    discriminate,
    element_power,
    eval_word,
    generated_subgroup,
    holds_identity,
    lower_central_orders,
    max_class_t_generated,
    nilpotency_class,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "AbelianDescriptor",
    "Alternative",
    "BudgetExceededError",
    "Cardinal",
    "CaseTag",
    "ChainReport",
    "ClassGrowthStep",
    "Classification",
    "ExtNat",
    "FiniteAbelianGroup",
    "InfiniteExponentError",
    "SeparatingShape",
    "SeparationStep",
    "Verdict",
    "Witness",
    "Word",
    "WreathElement",
    "WreathProduct",
    "build_wreath",
    "canonicalize",
    "chain_analysis",
    "classify",
    "commutator",
    "cyclic",
    "discriminate",
    "element_power",
    "eval_word",
    "ext_lcm",
    "generated_subgroup",
    "generates",
    "generates_finite",
    "holds_identity",
    "is_finite",
    "lambda_bound",
    "lambda_general_bound",
    "liebeck_class",
    "lower_central_orders",
    "max_class_t_generated",
    "min_t0",
    "nilpotency_class",
    "nu",
    "nu_general",
    "separating_parameters",
    "separation_gap",
]
