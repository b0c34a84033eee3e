"""Exact nilpotency-class formulas for wreath products of abelian p-groups.

All arithmetic is exact (Python integers / fractions): the values grow like
p**k and must never be approximated.  The oracle module provides the
brute-force counterpart these formulas are validated against.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .abelian import INF, AbelianDescriptor, Cardinal, is_finite, is_prime


def _check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def liebeck_class(p: int, u: int, ks: Sequence[int]) -> int:
    """Nilpotency class of the wreath product of C_{p^u} with a direct sum of
    cycles C_{p^{k_i}} (Liebeck's classical formula):

        sum_i (p^{k_i} - 1) + (u - 1)(p - 1) p^{k_1 - 1} + 1,

    where k_1 is the largest exponent.  A trivial active group (empty ks, or
    all zero) gives 1, the class of the abelian passive group; zero entries
    contribute nothing and may appear as padding.
    """
    _check_prime(p)
    if not isinstance(u, int) or u < 1:
        raise ValueError(f"passive exponent log must be an integer >= 1, got {u!r}")
    cleaned = sorted((int(k) for k in ks), reverse=True)
    if cleaned and cleaned[-1] < 0:
        raise ValueError("active exponent logs must be non-negative")
    cleaned = [k for k in cleaned if k > 0]
    if not cleaned:
        return 1
    return sum(p ** k - 1 for k in cleaned) + (u - 1) * (p - 1) * p ** (cleaned[0] - 1) + 1


def _single_prime_data(d: AbelianDescriptor, role: str) -> tuple[int, int]:
    """(p, k) for a non-trivial p-group descriptor of finite exponent p**k."""
    if not d.has_finite_exponent:
        raise ValueError(f"{role} group must have finite exponent")
    primes = d.primes()
    if len(primes) != 1:
        raise ValueError(f"{role} group must be a non-trivial p-group, got primes {primes}")
    p = primes[0]
    return p, d.k_of(p)


def lambda_bound(passive: AbelianDescriptor, active: AbelianDescriptor, t: int) -> int:
    """Upper bound for the nilpotency class of every t-generated group in the
    variety generated by the wreath product of the two p-groups.

    Evaluates Liebeck's formula on the t largest cyclic summands of the
    active group (missing summands count as trivial).
    """
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"generator count must be a positive integer, got {t!r}")
    p, u = _single_prime_data(passive, "passive")
    q, k_top = _single_prime_data(active, "active")
    if p != q:
        raise ValueError(f"descriptors are p-groups for different primes {p} and {q}")
    ks: list[int] = []
    for (_q, k) in sorted(active.summands, key=lambda key: -key[1]):
        mult = active.summands[(_q, k)]
        room = t - len(ks)
        take = room if mult is INF else min(mult, room)
        ks.extend([k] * take)
        if len(ks) == t:
            break
    return sum(p ** k - 1 for k in ks) + (u - 1) * (p - 1) * p ** (k_top - 1) + 1


def nu(p: int, u: int, k: int, t: int) -> int:
    """Class of the t-generated witness group: C_{p^u} wreathed with t-1
    copies of C_{p^k}.
    """
    _check_prime(p)
    if u < 1 or k < 1 or t < 1:
        raise ValueError("nu needs u >= 1, k >= 1, t >= 1")
    return (t - 1) * (p ** k - 1) + (u - 1) * (p - 1) * p ** (k - 1) + 1


def min_t0(p: int, k: int, mu: Cardinal) -> int:
    """Least generator count from which the witness class provably exceeds the
    class bound when the top layer has finite rank mu:
    the least integer > (p^{k-1} - 1)/(p^k - p^{k-1}) + mu + 1, computed exactly.
    """
    _check_prime(p)
    if k < 1:
        raise ValueError("k must be >= 1")
    if not is_finite(mu):
        raise ValueError("mu must be finite; an infinite top layer leaves nothing to separate")
    if mu < 1:
        raise ValueError("mu must be >= 1")
    threshold = Fraction(p ** (k - 1) - 1, p ** k - p ** (k - 1)) + mu + 1
    return math.floor(threshold) + 1


def _check_layer_args(p: int, k: int, d: int, l: Sequence[int]) -> list[int]:
    _check_prime(p)
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be an integer >= 1")
    if not isinstance(d, int) or not 1 <= d <= k:
        raise ValueError(f"d must satisfy 1 <= d <= k, got d={d!r}, k={k}")
    l = [int(x) for x in l]
    if len(l) != d:
        raise ValueError(f"layer multiplicity list must have length d={d}, got {len(l)}")
    if any(x < 0 for x in l):
        raise ValueError("layer multiplicities must be non-negative")
    return l


def nu_general(p: int, u: int, k: int, d: int, l: Sequence[int], r: int, t: int) -> int:
    """Class of the t-generated witness group built from r copies of the
    finite layers (l_i summands of order p^{k-i}) plus t - r*sum(l) - 1
    bottom-layer cycles of order p^{k-d}:

        r * sum_i l_i (p^{k-i} - 1) + (t - r*sum(l) - 1)(p^{k-d} - 1)
          + (u - 1)(p - 1) p^{k-1} + 1.
    """
    l = _check_layer_args(p, k, d, l)
    if u < 1 or r < 1:
        raise ValueError("nu_general needs u >= 1 and r >= 1")
    total = sum(l)
    if t <= r * total + 1:
        raise ValueError(f"t must exceed r*sum(l) + 1 = {r * total + 1}, got {t}")
    return (
        r * sum(li * (p ** (k - i) - 1) for i, li in enumerate(l))
        + (t - r * total - 1) * (p ** (k - d) - 1)
        + (u - 1) * (p - 1) * p ** (k - 1)
        + 1
    )


def lambda_general_bound(p: int, u: int, k: int, d: int, l: Sequence[int], s: int, t: int) -> int:
    """Class bound for t-generated groups in the variety of the wreath product
    with s copies of an active group whose p-part has the layered shape
    (l_0, ..., l_{d-1}, then infinitely many cycles of order p^{k-d}):

        s * sum_i l_i (p^{k-i} - 1) + (t - s*sum(l))(p^{k-d} - 1)
          + (u - 1)(p - 1) p^{k-1} + 1.
    """
    l = _check_layer_args(p, k, d, l)
    if u < 1 or s < 0:
        raise ValueError("lambda_general_bound needs u >= 1 and s >= 0")
    total = sum(l)
    if t <= s * total:
        raise ValueError(f"t must exceed s*sum(l) = {s * total}, got {t}")
    return (
        s * sum(li * (p ** (k - i) - 1) for i, li in enumerate(l))
        + (t - s * total) * (p ** (k - d) - 1)
        + (u - 1) * (p - 1) * p ** (k - 1)
        + 1
    )


def separation_gap(p: int, k: int, d: int, l: Sequence[int]) -> int:
    """The constant by which the witness class beats the class bound, for any
    valid generator count and any number of copies:

        sum_i l_i (p^{k-i} - p^{k-d}) - p^{k-d} + 1.

    Positive whenever l_0 >= 1, which certifies a strictly increasing chain of
    varieties.
    """
    l = _check_layer_args(p, k, d, l)
    if l[0] < 1:
        raise ValueError("the top layer multiplicity l_0 must be >= 1")
    return sum(li * (p ** (k - i) - p ** (k - d)) for i, li in enumerate(l)) - p ** (k - d) + 1
