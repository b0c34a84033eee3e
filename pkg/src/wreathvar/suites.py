"""Oracle-versus-formula verification suites behind the ``verify`` command.

Each suite returns one row per instance checked, with the predicted and the
independently computed value, so mismatches are directly inspectable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from . import criterion, nilpotency, oracle
from .abelian import cyclic, factorize


@dataclass(frozen=True)
class SuiteRow:
    instance: str
    expected: object
    actual: object
    ok: bool


@dataclass
class SuiteResult:
    suite: str
    rows: list[SuiteRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.ok for row in self.rows)

    def add(self, instance: str, expected, actual, ok=None):
        if ok is None:
            ok = expected == actual
        self.rows.append(SuiteRow(instance, expected, actual, ok))


def _partitions(total: int, max_part: int | None = None) -> Iterator[tuple]:
    """Descending partitions of ``total`` into positive parts."""
    if total == 0:
        yield ()
        return
    top = min(total, max_part if max_part is not None else total)
    for first in range(top, 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _primes() -> Iterator[int]:
    n = 2
    while True:
        if all(n % f for f in range(2, int(math.isqrt(n)) + 1)):
            yield n
        n += 1


def liebeck_instances(max_order: int) -> Iterator[tuple]:
    """All (p, u, ks) with the wreath product of C_{p^u} and the direct sum of
    C_{p^{k_i}} of total order at most ``max_order``."""
    for p in _primes():
        if p ** (p + 1) > max_order:  # smallest instance for this prime
            return
        m = 1
        while True:
            b_order = p ** m
            if p ** b_order * b_order > max_order:
                break
            for ks in _partitions(m):
                u = 1
                while (p ** u) ** b_order * b_order <= max_order:
                    yield p, u, ks
                    u += 1
            m += 1


def liebeck_suite(max_order: int = 4096) -> SuiteResult:
    """Class formula against the brute-force nilpotency class of every wreath
    product of p-power cycles up to ``max_order`` elements."""
    result = SuiteResult("liebeck")
    for p, u, ks in liebeck_instances(max_order):
        passive = oracle.FiniteAbelianGroup([p ** u])
        active = oracle.FiniteAbelianGroup([p ** k for k in ks])
        handle = oracle.build_wreath(passive, active)
        predicted = nilpotency.liebeck_class(p, u, ks)
        computed = oracle.nilpotency_class(handle)
        result.add(f"C{p**u} wr {'+'.join(f'C{p**k}' for k in ks)}", predicted, computed)
    return result


_LAMBDA_INSTANCES = (
    # (passive orders, active orders, generator counts)
    ((2,), (2,), (1, 2, 3)),
    ((2,), (2, 2), (1, 2)),
    ((4,), (2,), (1, 2)),
    ((3,), (3,), (1, 2)),
)


def lambda_suite(max_t: int = 3) -> SuiteResult:
    """Class bound against the exhaustively computed maximum class of
    t-generated subgroups."""
    result = SuiteResult("lambda")
    for passive_orders, active_orders, ts in _LAMBDA_INSTANCES:
        passive = oracle.FiniteAbelianGroup(passive_orders)
        active = oracle.FiniteAbelianGroup(active_orders)
        handle = oracle.build_wreath(passive, active)
        passive_d = cyclic(1)
        for n in passive_orders:
            passive_d = passive_d.direct_sum(cyclic(n))
        active_d = cyclic(1)
        for n in active_orders:
            active_d = active_d.direct_sum(cyclic(n))
        for t in ts:
            if t > max_t:
                continue
            bound = nilpotency.lambda_bound(passive_d, active_d, t)
            observed = oracle.max_class_t_generated(handle, t)
            result.add(
                f"max class of {t}-generated subgroups of "
                f"{'+'.join(f'C{n}' for n in passive_orders)} wr "
                f"{'+'.join(f'C{n}' for n in active_orders)} <= {bound}",
                bound,
                observed,
                ok=observed <= bound,
            )
    return result


def _abelian_order_lists(order: int) -> Iterator[tuple]:
    """Cyclic-factor order lists of every abelian group of the given order,
    one per isomorphism class (prime-power factors, descending per prime)."""
    if order == 1:
        yield ()
        return
    per_prime = []
    for p, e in sorted(factorize(order).items()):
        per_prime.append([tuple(p ** k for k in ks) for ks in _partitions(e)])
    for combo in itertools.product(*per_prime):
        yield tuple(itertools.chain.from_iterable(combo))


def _metabelian_holds(handle) -> bool:
    """Exhaustive check of the law [[x1,x2],[x3,x4]] == 1.

    All assignments factor through pairs of commutators, so the full
    |G|**4 space is covered by checking that all commutators commute.
    """
    elems = list(handle.elements())
    comms = sorted({oracle.commutator(handle, x, y) for x in elems for y in elems})
    for c, d in itertools.combinations(comms, 2):
        if handle.multiply(c, d) != handle.multiply(d, c):
            return False
    return True


def _exponent_law_holds(handle, e: int) -> bool:
    return all(
        oracle.element_power(handle, x, e) == handle.identity for x in handle.elements()
    )


def identities_suite(max_order: int = 256) -> SuiteResult:
    """Every wreath product of non-trivial abelian groups up to ``max_order``
    elements satisfies the metabelian law and the exponent law x**(m*n) == 1."""
    result = SuiteResult("identities")
    for b_order in itertools.count(2):
        if 2 ** b_order * b_order > max_order:
            break
        for active_orders in _abelian_order_lists(b_order):
            for a_order in itertools.count(2):
                if a_order ** b_order * b_order > max_order:
                    break
                for passive_orders in _abelian_order_lists(a_order):
                    passive = oracle.FiniteAbelianGroup(passive_orders)
                    active = oracle.FiniteAbelianGroup(active_orders)
                    handle = oracle.build_wreath(passive, active)
                    name = (
                        f"{'+'.join(f'C{n}' for n in passive_orders)} wr "
                        f"{'+'.join(f'C{n}' for n in active_orders)}"
                    )
                    result.add(
                        f"metabelian law in {name} (order {handle.order})",
                        True,
                        _metabelian_holds(handle),
                    )
                    m = math.lcm(*passive_orders)
                    n = math.lcm(*active_orders)
                    result.add(
                        f"x^{m * n} == 1 in {name}",
                        True,
                        _exponent_law_holds(handle, m * n),
                    )
    return result


def houghton_suite(limit: int = 30) -> SuiteResult:
    """Decision procedure against the coprimality rule on all pairs of cycles
    up to the limit."""
    result = SuiteResult("houghton")
    for m in range(1, limit + 1):
        for n in range(1, limit + 1):
            verdict = criterion.generates(cyclic(m), cyclic(n))
            result.add(
                f"C{m} wr C{n}",
                math.gcd(m, n) == 1,
                verdict.generates,
            )
    return result


SUITES = {
    "liebeck": (liebeck_suite, 4096),
    "lambda": (lambda_suite, 3),
    "identities": (identities_suite, 256),
    "houghton": (houghton_suite, 30),
}


def run_suite(name: str, budget: int | None = None) -> SuiteResult:
    runner, default_budget = SUITES[name]
    return runner(budget if budget is not None else default_budget)
