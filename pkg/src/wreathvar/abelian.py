"""Structural descriptors of abelian groups.

Every abelian group of finite exponent is a direct sum of cyclic groups of
prime-power order, so it is faithfully described by a multiset of summands
``C_{p^k}`` with (possibly infinite) multiplicities.  Groups that are not of
finite exponent are only flagged as such (free rank / unbounded torsion):
the variety criterion never needs more than that for them.

All infinite cardinals are collapsed to the single value ``INF``; the
criterion only ever distinguishes finite from infinite multiplicities.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Tuple, Union


class InfiniteExponentError(ValueError):
    """A computation required a finite exponent but the group has none."""

    def __init__(self, message: str = "infinite exponent"):
        super().__init__(message)


class _Infinity:
    """The single absorbing infinite value used for multiplicities and exponents.

    Arithmetic saturates: INF + x = INF, INF * x = INF for x >= 1, 0 * INF = 0.
    Every finite value compares below INF.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __add__(self, other):
        if not _is_cardinal_operand(other):
            return NotImplemented
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if not _is_cardinal_operand(other):
            return NotImplemented
        if other == 0:
            return 0
        return self

    __rmul__ = __mul__

    def __lt__(self, other):
        if not _is_cardinal_operand(other):
            return NotImplemented
        return False

    def __le__(self, other):
        if not _is_cardinal_operand(other):
            return NotImplemented
        return other is self

    def __gt__(self, other):
        if not _is_cardinal_operand(other):
            return NotImplemented
        return other is not self

    def __ge__(self, other):
        if not _is_cardinal_operand(other):
            return NotImplemented
        return True


INF = _Infinity()

Cardinal = Union[int, _Infinity]
ExtNat = Union[int, _Infinity]


def _is_cardinal_operand(value) -> bool:
    return isinstance(value, int) or value is INF


def is_finite(value: Cardinal) -> bool:
    return value is not INF


def ext_lcm(values: Iterable[ExtNat]) -> ExtNat:
    """lcm on naturals extended by INF (absorbing)."""
    result = 1
    for v in values:
        if v is INF:
            return INF
        result = math.lcm(result, v)
    return result


def is_prime(n: int) -> bool:
    if not isinstance(n, int) or n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; inputs are desk scale."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    result: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            n //= p
            result[p] = result.get(p, 0) + 1
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                n //= p
                result[p] = result.get(p, 0) + 1
        f += 6
    if n > 1:
        result[n] = result.get(n, 0) + 1
    return result


def valuation(n: int, p: int) -> int:
    """Largest v with p**v dividing n."""
    if n <= 0:
        raise ValueError(f"valuation needs a positive argument, got {n}")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _check_cardinal(value, *, minimum: int = 0, what: str = "cardinal") -> Cardinal:
    if value is INF:
        return INF
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ValueError(f"{what} must be an integer >= {minimum} or INF, got {value!r}")
    return value


class AbelianDescriptor:
    """Canonical description of an abelian group.

    ``summands`` maps ``(p, k)`` to the multiplicity of the cyclic summand of
    order ``p**k``; ``free_rank`` counts infinite-cyclic summands;
    ``unbounded_torsion`` marks torsion parts of unbounded element order
    (e.g. a Pruefer group), which cannot be written as a bounded sum of cycles.

    Instances are immutable values: equality and hashing are structural, and
    the stored map is the unique canonical form.
    """

    __slots__ = ("free_rank", "summands", "unbounded_torsion")

    def __init__(
        self,
        summands: Mapping[Tuple[int, int], Cardinal] | None = None,
        free_rank: Cardinal = 0,
        unbounded_torsion: bool = False,
    ):
        cleaned: dict[Tuple[int, int], Cardinal] = {}
        for key, mult in sorted((summands or {}).items()):
            p, k = key
            if not is_prime(p):
                raise ValueError(f"summand key {key!r}: {p} is not prime")
            if not isinstance(k, int) or k < 1:
                raise ValueError(f"summand key {key!r}: exponent must be a positive integer")
            mult = _check_cardinal(mult, what=f"multiplicity of {key!r}")
            if mult == 0:
                continue
            cleaned[(p, k)] = mult
        object.__setattr__(self, "summands", cleaned)
        object.__setattr__(self, "free_rank", _check_cardinal(free_rank, what="free rank"))
        object.__setattr__(self, "unbounded_torsion", bool(unbounded_torsion))

    def __setattr__(self, name, value):
        raise AttributeError("AbelianDescriptor is immutable")

    def _key(self):
        return (tuple(self.summands.items()), self.free_rank, self.unbounded_torsion)

    def __eq__(self, other):
        if not isinstance(other, AbelianDescriptor):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        parts = []
        if self.summands:
            parts.append(repr(self.summands))
        if self.free_rank != 0:
            parts.append(f"free_rank={self.free_rank!r}")
        if self.unbounded_torsion:
            parts.append("unbounded_torsion=True")
        return f"AbelianDescriptor({', '.join(parts)})"

    # -- basic structure ---------------------------------------------------

    @property
    def is_trivial(self) -> bool:
        return not self.summands and self.free_rank == 0 and not self.unbounded_torsion

    @property
    def has_finite_exponent(self) -> bool:
        return self.free_rank == 0 and not self.unbounded_torsion

    @property
    def is_finite_group(self) -> bool:
        return self.has_finite_exponent and all(
            is_finite(m) for m in self.summands.values()
        )

    def order(self) -> Cardinal:
        """Group order; INF for any infinite group."""
        if not self.has_finite_exponent:
            return INF
        result = 1
        for (p, k), mult in self.summands.items():
            if mult is INF:
                return INF
            result *= (p ** k) ** mult
        return result

    def primes(self) -> list[int]:
        return sorted({p for (p, _k) in self.summands})

    def exponent(self) -> ExtNat:
        """Least n with n*x = 0 for every element; INF if there is none."""
        if not self.has_finite_exponent:
            return INF
        return ext_lcm(p ** k for (p, k) in self.summands)

    def _require_finite_exponent(self):
        if not self.has_finite_exponent:
            raise InfiniteExponentError()

    def k_of(self, p: int) -> int:
        """Largest k with p**k dividing the exponent; 0 when p does not divide it."""
        self._require_finite_exponent()
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return max((k for (q, k) in self.summands if q == p), default=0)

    def primary_component(self, p: int) -> "AbelianDescriptor":
        """The subgroup of all elements of p-power order."""
        self._require_finite_exponent()
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return AbelianDescriptor(
            {key: m for key, m in self.summands.items() if key[0] == p}
        )

    def bounded_subgroup(self, s: int) -> "AbelianDescriptor":
        """The subgroup generated by all elements x with s*x = 0.

        Each summand C_{p^k} contributes C_{p^min(k, v_p(s))}.
        """
        self._require_finite_exponent()
        if not isinstance(s, int) or s <= 0:
            raise ValueError(f"bound must be a positive integer, got {s!r}")
        result: dict[Tuple[int, int], Cardinal] = {}
        for (p, k), mult in self.summands.items():
            j = min(k, valuation(s, p))
            if j == 0:
                continue
            key = (p, j)
            result[key] = result.get(key, 0) + mult
        return AbelianDescriptor(result)

    def layer_quotient(self, p: int, k: int) -> "AbelianDescriptor":
        """The elementary abelian quotient of the p**k-bounded subgroup by the
        p**(k-1)-bounded one; its rank counts cyclic summands of order >= p**k.
        """
        self._require_finite_exponent()
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if not isinstance(k, int) or k <= 0:
            raise ValueError(f"layer index must be a positive integer, got {k!r}")
        mu: Cardinal = 0
        for (q, j), mult in self.summands.items():
            if q == p and j >= k:
                mu = mu + mult
        if mu == 0:
            return AbelianDescriptor()
        return AbelianDescriptor({(p, 1): mu})

    def top_layer_multiplicity(self, p: int) -> Cardinal:
        """Multiplicity of the largest p-power summand; the rank of the top layer."""
        k = self.k_of(p)
        if k == 0:
            raise ValueError(f"{p} does not divide the exponent")
        return self.summands[(p, k)]

    def direct_sum(self, other: "AbelianDescriptor") -> "AbelianDescriptor":
        merged: dict[Tuple[int, int], Cardinal] = dict(self.summands)
        for key, mult in other.summands.items():
            merged[key] = merged.get(key, 0) + mult
        return AbelianDescriptor(
            merged,
            free_rank=self.free_rank + other.free_rank,
            unbounded_torsion=self.unbounded_torsion or other.unbounded_torsion,
        )

    def direct_power(self, c: Cardinal) -> "AbelianDescriptor":
        c = _check_cardinal(c, what="power")
        if c == 0:
            raise ValueError("direct power needs a multiplicity >= 1")
        return AbelianDescriptor(
            {key: mult * c for key, mult in self.summands.items()},
            free_rank=self.free_rank * c,
            unbounded_torsion=self.unbounded_torsion,
        )


def canonicalize(
    raw: Iterable[Tuple[int, Cardinal]],
    free_rank: Cardinal = 0,
    unbounded_torsion: bool = False,
) -> AbelianDescriptor:
    """Build a descriptor from (cycle order, multiplicity) pairs.

    Composite orders are split into their prime-power parts, multiplicities of
    equal parts are added, and order-1 entries vanish.
    """
    summands: dict[Tuple[int, int], Cardinal] = {}
    for order, mult in raw:
        if not isinstance(order, int) or order < 1:
            raise ValueError(f"cycle order must be a positive integer, got {order!r}")
        mult = _check_cardinal(mult, what=f"multiplicity of C_{order}")
        if order == 1 or mult == 0:
            continue
        for p, e in factorize(order).items():
            key = (p, e)
            summands[key] = summands.get(key, 0) + mult
    return AbelianDescriptor(summands, free_rank=free_rank, unbounded_torsion=unbounded_torsion)


def cyclic(n: int, mult: Cardinal = 1) -> AbelianDescriptor:
    """Descriptor of C_n (or of a direct power of it)."""
    return canonicalize([(n, mult)])
