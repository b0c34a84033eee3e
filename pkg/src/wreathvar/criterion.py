"""The decision procedure for wreath products of abelian groups.

``generates(A, B)`` decides whether the (cartesian or direct) wreath product
of abelian groups A and B generates the product of the varieties generated by
A and B.  The answer is yes exactly when one of the groups is not of finite
exponent, or when for every prime p dividing both exponents the active group B
has infinitely many cyclic summands of the top p-power order p**k(B,p).

When the answer is no, the failure is already witnessed by finitely many
copies of B: ``chain_analysis`` certifies that the varieties generated by the
wreath products with s = 1, 2, 3, ... copies of B form a strictly increasing
chain (it would collapse after the square of B if the product variety were
attained at all).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

from . import nilpotency
from .abelian import INF, AbelianDescriptor, Cardinal, ExtNat, is_finite


class CaseTag(Enum):
    NON_FINITE_EXPONENT = "NON_FINITE_EXPONENT"
    FINITE_COPRIME = "FINITE_COPRIME"
    FINITE_ALL_LAYERS_INFINITE = "FINITE_ALL_LAYERS_INFINITE"
    BLOCKED = "BLOCKED"


@dataclass(frozen=True)
class Witness:
    """A prime at which the criterion fails: the top layer of the active
    group's p-part has finite rank."""

    p: int
    k: int
    layer_rank: int


@dataclass(frozen=True)
class Verdict:
    generates: bool
    case_tag: CaseTag
    witnesses: Tuple[Witness, ...]
    exponent_a: ExtNat
    exponent_b: ExtNat


def generates_finite(m: int, n: int) -> bool:
    """For finite abelian groups the product variety is generated exactly when
    the exponents are coprime."""
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise ValueError("exponents must be positive integers")
    return math.gcd(m, n) == 1


def generates(a: AbelianDescriptor, b: AbelianDescriptor) -> Verdict:
    """Decide whether the wreath product of A (passive) and B (active)
    generates the product of their varieties."""
    exp_a = a.exponent()
    exp_b = b.exponent()
    if exp_a is INF or exp_b is INF:
        return Verdict(True, CaseTag.NON_FINITE_EXPONENT, (), exp_a, exp_b)
    common = sorted(set(a.primes()) & set(b.primes()))
    if not common:
        return Verdict(True, CaseTag.FINITE_COPRIME, (), exp_a, exp_b)
    witnesses = []
    for p in common:
        rank = b.top_layer_multiplicity(p)
        if is_finite(rank):
            witnesses.append(Witness(p, b.k_of(p), rank))
    if witnesses:
        return Verdict(False, CaseTag.BLOCKED, tuple(witnesses), exp_a, exp_b)
    return Verdict(True, CaseTag.FINITE_ALL_LAYERS_INFINITE, (), exp_a, exp_b)


class Branch(Enum):
    """Which structural situation settles the question."""

    INFINITE_EXPONENT = "infinite exponent"
    FINITE_GROUPS = "finite groups"
    P_GROUPS = "p-groups of finite exponent"
    COMPOSITE_EXPONENTS = "composite finite exponents"


@dataclass(frozen=True)
class Classification:
    case_tag: CaseTag
    branch: Branch
    detail: str


def classify(a: AbelianDescriptor, b: AbelianDescriptor) -> Classification:
    """Tag the pair with the rule that decides it, consistently with
    ``generates``."""
    verdict = generates(a, b)
    if verdict.case_tag is CaseTag.NON_FINITE_EXPONENT:
        return Classification(
            verdict.case_tag,
            Branch.INFINITE_EXPONENT,
            "at least one group is not of finite exponent; the product variety is always attained",
        )
    m, n = verdict.exponent_a, verdict.exponent_b
    if a.is_finite_group and b.is_finite_group:
        word = "coprime" if math.gcd(m, n) == 1 else "not coprime"
        return Classification(
            verdict.case_tag,
            Branch.FINITE_GROUPS,
            f"both groups are finite; exponents {m} and {n} are {word}",
        )
    a_primes, b_primes = a.primes(), b.primes()
    if len(a_primes) == 1 and a_primes == b_primes:
        return Classification(
            verdict.case_tag,
            Branch.P_GROUPS,
            f"both groups are {a_primes[0]}-groups of finite exponent; "
            "the top layer of the active group decides",
        )
    return Classification(
        verdict.case_tag,
        Branch.COMPOSITE_EXPONENTS,
        f"finite exponents {m} and {n}; decided prime by prime on the top layers "
        "of the active group",
    )


@dataclass(frozen=True)
class SeparatingShape:
    """Layered shape of the p-part of the active group, as the separation
    argument consumes it.

    A finite p-part carries only the ``finite_component`` marker.  Otherwise
    ``k`` is the top exponent log, ``d`` is the first depth below the top with
    infinitely many summands, and ``l`` lists the finite multiplicities of the
    summands of order p**k, ..., p**(k-d+1) (zeros are kept so that index i
    always refers to order p**(k-i)).
    """

    p: int
    k: int
    finite_component: bool
    d: Optional[int] = None
    l: Optional[Tuple[int, ...]] = None


def separating_parameters(active: AbelianDescriptor, p: int) -> SeparatingShape:
    """Extract the layered shape of the p-part of the active group.

    Requires a finite top layer (otherwise there is nothing to separate and a
    ValueError is raised; callers check the verdict first).
    """
    component = active.primary_component(p)
    k = component.k_of(p)
    if k < 1:
        raise ValueError(f"{p} does not divide the exponent of the active group")
    if not is_finite(component.top_layer_multiplicity(p)):
        raise ValueError(
            f"top layer at {p} is infinite: the product variety is attained and "
            "no separating parameters exist"
        )
    if component.is_finite_group:
        return SeparatingShape(p=p, k=k, finite_component=True)
    l: list[int] = []
    for i in range(k):
        mult = component.summands.get((p, k - i), 0)
        if not is_finite(mult):
            return SeparatingShape(p=p, k=k, finite_component=False, d=i, l=tuple(l))
        l.append(mult)
    raise AssertionError("infinite component must have an infinite multiplicity")


class Alternative(Enum):
    COLLAPSES = "COLLAPSES"
    STRICT_CHAIN = "STRICT_CHAIN"


@dataclass(frozen=True)
class SeparationStep:
    """Certificate that s+1 copies of the active group generate a strictly
    larger variety than s copies: a t-generated witness group whose class
    exceeds the class bound for the s-copy variety."""

    s: int
    t: int
    witness_class: int
    class_bound: int
    gap: int


@dataclass(frozen=True)
class ClassGrowthStep:
    """Certificate for a finite p-part: the wreath products with s and s+1
    copies have different nilpotency classes."""

    s: int
    class_s: int
    class_next: int


ChainStep = Union[SeparationStep, ClassGrowthStep]


@dataclass(frozen=True)
class ChainReport:
    alternative: Alternative
    verdict: Verdict
    shapes: Tuple[SeparatingShape, ...]
    certificate_prime: Optional[int]
    steps: Tuple[ChainStep, ...]

    @property
    def certificate_kind(self) -> Optional[str]:
        if not self.steps:
            return None
        return "separation" if isinstance(self.steps[0], SeparationStep) else "class_growth"


def chain_analysis(a: AbelianDescriptor, b: AbelianDescriptor, s_max: int = 3) -> ChainReport:
    """Report which chain alternative holds for the pair (A, B), with per-copy
    certificates when the chain is strict.

    For the chosen blocking prime, each step s carries either a separation
    certificate (witness group of class > bound, built at the smallest valid
    generator count t) or, when every blocking p-part is finite, the strictly
    growing nilpotency classes of the concrete wreath products.
    """
    if not isinstance(s_max, int) or s_max < 1:
        raise ValueError(f"s_max must be a positive integer, got {s_max!r}")
    verdict = generates(a, b)
    if verdict.generates:
        return ChainReport(Alternative.COLLAPSES, verdict, (), None, ())
    shapes = tuple(separating_parameters(b, w.p) for w in verdict.witnesses)
    layered = [sh for sh in shapes if not sh.finite_component]
    steps: list[ChainStep] = []
    if layered:
        sh = min(layered, key=lambda shape: shape.p)
        u = a.k_of(sh.p)
        total = sum(sh.l)
        gap = nilpotency.separation_gap(sh.p, sh.k, sh.d, sh.l)
        for s in range(1, s_max + 1):
            t = (s + 1) * total + 2
            witness_class = nilpotency.nu_general(sh.p, u, sh.k, sh.d, sh.l, s + 1, t)
            class_bound = nilpotency.lambda_general_bound(sh.p, u, sh.k, sh.d, sh.l, s, t)
            assert witness_class - class_bound == gap > 0
            steps.append(SeparationStep(s, t, witness_class, class_bound, gap))
        return ChainReport(Alternative.STRICT_CHAIN, verdict, shapes, sh.p, tuple(steps))
    p = min(sh.p for sh in shapes)
    u = a.k_of(p)
    ks = []
    for (q, k), mult in b.primary_component(p).summands.items():
        ks.extend([k] * mult)
    classes = [nilpotency.liebeck_class(p, u, ks * s) for s in range(1, s_max + 2)]
    for s in range(1, s_max + 1):
        steps.append(ClassGrowthStep(s, classes[s - 1], classes[s]))
    return ChainReport(Alternative.STRICT_CHAIN, verdict, shapes, p, tuple(steps))
