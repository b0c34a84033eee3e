"""Brute-force ground truth on small concrete groups.

Concrete finite abelian groups are direct products of cyclic groups with
elements stored as residue tuples.  A wreath product element is packed densely
as (index of the active part, base table of passive-element indices, one per
enumerated active element); equality and hashing are structural, which is what
the breadth-first closures need.

Handles (FiniteAbelianGroup, WreathProduct) share a small protocol:
``order``, ``identity``, ``multiply``, ``inverse``, ``generators()``,
``elements()``.  Everything here is exact and deterministic; computations that
would outgrow their budget raise BudgetExceededError carrying the size.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

from .abelian import AbelianDescriptor

DEFAULT_ELEMENT_BUDGET = 2 ** 24
DEFAULT_TUPLE_BUDGET = 2 ** 20
_ACTIVE_ENUMERATION_CAP = 4096
_OP_TABLE_CAP = 256  # precompute add tables only for groups up to this order


class BudgetExceededError(RuntimeError):
    """A requested computation exceeds its size budget."""

    def __init__(self, message: str, size: int):
        super().__init__(f"{message} (size {size})")
        self.size = size


class FiniteAbelianGroup:
    """Direct product of cyclic groups; elements are residue tuples."""

    __slots__ = ("orders", "order", "identity", "_weights")

    def __init__(self, orders: Sequence[int]):
        orders = tuple(int(n) for n in orders)
        if any(n < 2 for n in orders):
            raise ValueError("cyclic factor orders must be >= 2")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "order", math.prod(orders))
        object.__setattr__(self, "identity", (0,) * len(orders))
        weights = []
        w = 1
        for n in reversed(orders):
            weights.append(w)
            w *= n
        object.__setattr__(self, "_weights", tuple(reversed(weights)))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteAbelianGroup is immutable")

    @classmethod
    def from_descriptor(cls, d: AbelianDescriptor) -> "FiniteAbelianGroup":
        if not d.is_finite_group:
            raise ValueError("only finite descriptors have a concrete realization")
        orders = []
        for (p, k), mult in d.summands.items():
            orders.extend([p ** k] * mult)
        return cls(orders)

    def __repr__(self):
        if not self.orders:
            return "FiniteAbelianGroup(())"
        return f"FiniteAbelianGroup({self.orders!r})"

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % n for a, n in zip(x, self.orders))

    def sub(self, x, y):
        return tuple((a - b) % n for a, b, n in zip(x, y, self.orders))

    # handle protocol
    def multiply(self, x, y):
        return self.add(x, y)

    def inverse(self, x):
        return self.neg(x)

    def elements(self) -> Iterator[tuple]:
        return itertools.product(*(range(n) for n in self.orders))

    def index_of(self, x) -> int:
        return sum(a * w for a, w in zip(x, self._weights))

    def element_at(self, index: int) -> tuple:
        digits = []
        for n in reversed(self.orders):
            index, r = divmod(index, n)
            digits.append(r)
        return tuple(reversed(digits))

    def generators(self) -> list[tuple]:
        return [
            tuple(1 if j == i else 0 for j in range(len(self.orders)))
            for i in range(len(self.orders))
        ]

    def element_order(self, x) -> int:
        return math.lcm(*(n // math.gcd(n, a) for a, n in zip(x, self.orders)), 1)


class WreathElement(NamedTuple):
    """Packed wreath-product element: the active part as an element index and
    the base function as a table of passive-element indices."""

    top: int
    base: tuple


class WreathProduct:
    """Wreath product of concrete finite abelian groups (passive wr active).

    Multiplication follows the translation action on base functions:
    (b, f)(b', f') = (b + b', g -> f(g) + f'(g - b)).
    """

    def __init__(
        self,
        passive: FiniteAbelianGroup,
        active: FiniteAbelianGroup,
        element_budget: int = DEFAULT_ELEMENT_BUDGET,
    ):
        universe = passive.order ** active.order * active.order
        if universe > element_budget:
            raise BudgetExceededError("wreath product universe exceeds budget", universe)
        if active.order > _ACTIVE_ENUMERATION_CAP:
            raise BudgetExceededError(
                "active group too large to enumerate", active.order
            )
        self.passive = passive
        self.active = active
        self.order = universe
        self._a_elems = list(passive.elements())
        self._b_elems = list(active.elements())
        self.identity = WreathElement(0, (0,) * active.order)
        self._shift_rows: dict[int, tuple] = {}
        if passive.order <= _OP_TABLE_CAP:
            self._a_add = [
                tuple(passive.index_of(passive.add(x, y)) for y in self._a_elems)
                for x in self._a_elems
            ]
            self._a_neg = tuple(passive.index_of(passive.neg(x)) for x in self._a_elems)
        else:
            self._a_add = None
            self._a_neg = None
        if active.order <= _OP_TABLE_CAP:
            self._b_add = [
                tuple(active.index_of(active.add(x, y)) for y in self._b_elems)
                for x in self._b_elems
            ]
            self._b_neg = tuple(active.index_of(active.neg(x)) for x in self._b_elems)
        else:
            self._b_add = None
            self._b_neg = None

    def __repr__(self):
        return f"WreathProduct({self.passive!r}, {self.active!r})"

    def _shift_row(self, top: int) -> tuple:
        """shift[i] = index of (i-th active element) - (active element top)."""
        row = self._shift_rows.get(top)
        if row is None:
            act = self.active
            b = self._b_elems[top]
            row = tuple(act.index_of(act.sub(g, b)) for g in self._b_elems)
            self._shift_rows[top] = row
        return row

    def multiply(self, x: WreathElement, y: WreathElement) -> WreathElement:
        row = self._shift_row(x.top)
        fy = y.base
        if self._a_add is not None:
            a_add = self._a_add
            base = tuple(a_add[fi][fy[row[i]]] for i, fi in enumerate(x.base))
        else:
            pas = self.passive
            a_elems = self._a_elems
            base = tuple(
                pas.index_of(pas.add(a_elems[fi], a_elems[fy[row[i]]]))
                for i, fi in enumerate(x.base)
            )
        if self._b_add is not None:
            top = self._b_add[x.top][y.top]
        else:
            act = self.active
            top = act.index_of(act.add(self._b_elems[x.top], self._b_elems[y.top]))
        return WreathElement(top, base)

    def inverse(self, x: WreathElement) -> WreathElement:
        if self._b_neg is not None:
            tinv = self._b_neg[x.top]
        else:
            act = self.active
            tinv = act.index_of(act.neg(self._b_elems[x.top]))
        row = self._shift_row(tinv)  # row[i] = index of g_i + b
        f = x.base
        if self._a_neg is not None:
            a_neg = self._a_neg
            base = tuple(a_neg[f[row[i]]] for i in range(len(f)))
        else:
            pas = self.passive
            a_elems = self._a_elems
            base = tuple(
                pas.index_of(pas.neg(a_elems[f[row[i]]])) for i in range(len(f))
            )
        return WreathElement(tinv, base)

    def elements(self) -> Iterator[WreathElement]:
        for top in range(self.active.order):
            for base in itertools.product(range(self.passive.order), repeat=self.active.order):
                yield WreathElement(top, base)

    def generators(self) -> list[WreathElement]:
        """Generators of the active group paired with the zero base function,
        plus base functions supported at the active identity with generator
        values of the passive group."""
        zero = (0,) * self.active.order
        gens = [
            WreathElement(self.active.index_of(g), zero) for g in self.active.generators()
        ]
        for a in self.passive.generators():
            table = list(zero)
            table[0] = self.passive.index_of(a)
            gens.append(WreathElement(0, tuple(table)))
        return gens

    def element(self, top, base: Optional[Mapping] = None) -> WreathElement:
        """Build an element from an active-group element and a base mapping
        (active element -> passive element); unmentioned points map to the
        passive identity."""
        table = [0] * self.active.order
        for g, a in (base or {}).items():
            table[self.active.index_of(tuple(g))] = self.passive.index_of(tuple(a))
        return WreathElement(self.active.index_of(tuple(top)), tuple(table))

    def top_of(self, x: WreathElement) -> tuple:
        return self._b_elems[x.top]

    def base_map_of(self, x: WreathElement) -> dict:
        """The base function as a mapping, restricted to its support."""
        return {
            self._b_elems[i]: self._a_elems[ai]
            for i, ai in enumerate(x.base)
            if ai != 0
        }


def build_wreath(
    passive: FiniteAbelianGroup,
    active: FiniteAbelianGroup,
    element_budget: int = DEFAULT_ELEMENT_BUDGET,
) -> WreathProduct:
    """Concrete wreath product handle with exact group operations."""
    return WreathProduct(passive, active, element_budget=element_budget)


def element_power(handle, x, e: int):
    if e < 0:
        x = handle.inverse(x)
        e = -e
    result = handle.identity
    while e:
        if e & 1:
            result = handle.multiply(result, x)
        x = handle.multiply(x, x)
        e >>= 1
    return result


def commutator(handle, x, y):
    return handle.multiply(
        handle.multiply(handle.inverse(x), handle.inverse(y)),
        handle.multiply(x, y),
    )


def conjugate(handle, x, g):
    return handle.multiply(handle.inverse(g), handle.multiply(x, g))


def generated_subgroup(handle, gens: Iterable, cap: Optional[int] = None) -> set:
    """Breadth-first closure of the generators under multiplication and
    inversion; raises when the closure grows past ``cap``."""
    if cap is None:
        cap = handle.order
    if cap < 1:
        raise ValueError("cap must be >= 1")
    seeds = list(gens)
    seeds += [handle.inverse(g) for g in seeds]
    seen = {handle.identity}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for g in seeds:
            y = handle.multiply(x, g)
            if y not in seen:
                if len(seen) >= cap:
                    raise BudgetExceededError("subgroup closure exceeds cap", len(seen) + 1)
                seen.add(y)
                queue.append(y)
    return seen


def _normal_closure_seeds(handle, seeds: Iterable, conjugators: Sequence) -> list:
    """Close a generating set under conjugation by the given group generators
    (and their inverses); the result generates the normal closure."""
    conj = list(conjugators) + [handle.inverse(g) for g in conjugators]
    closed = set(seeds)
    closed.discard(handle.identity)
    queue = deque(closed)
    while queue:
        x = queue.popleft()
        for g in conj:
            y = conjugate(handle, x, g)
            if y != handle.identity and y not in closed:
                closed.add(y)
                queue.append(y)
    return sorted(closed)


def lower_central_orders(handle, gens: Optional[Iterable] = None, cap: Optional[int] = None) -> tuple:
    """Orders of the lower central series of the subgroup generated by
    ``gens`` (the whole group by default), down to and including the trivial
    term.  The series for finite nilpotent groups always reaches 1; a safety
    cap guards against a handle that is not."""
    gens = list(gens) if gens is not None else handle.generators()
    group = generated_subgroup(handle, gens, cap=cap)
    orders = [len(group)]
    if len(group) == 1:
        return tuple(orders)
    current = [g for g in gens if g != handle.identity]
    max_steps = len(group).bit_length() + 1
    for _ in range(max_steps):
        comms = {commutator(handle, x, g) for x in current for g in gens}
        current = _normal_closure_seeds(handle, comms, gens)
        if not current:
            orders.append(1)
            return tuple(orders)
        term = generated_subgroup(handle, current, cap=cap)
        if len(term) == orders[-1]:
            raise ValueError("lower central series stalled: the group is not nilpotent")
        orders.append(len(term))
    raise BudgetExceededError("lower central series did not terminate", max_steps)


def nilpotency_class(handle, gens: Optional[Iterable] = None, cap: Optional[int] = None) -> int:
    """Least c such that the (c+1)-st lower central term of the generated
    subgroup is trivial; 0 for the trivial group, 1 for non-trivial abelian."""
    return len(lower_central_orders(handle, gens, cap=cap)) - 1


class Word:
    """Freely reduced word in free-group variables x1, x2, ... .

    Stored as syllables (variable index, non-zero exponent); adjacent
    syllables in the same variable are merged on construction, so evaluation
    is invariant under free reduction by construction.
    """

    __slots__ = ("syllables",)

    def __init__(self, syllables: Iterable[tuple] = ()):
        reduced: list[tuple] = []
        for var, exp in syllables:
            if not isinstance(var, int) or var < 1:
                raise ValueError(f"variables are numbered from 1, got {var!r}")
            exp = int(exp)
            if exp == 0:
                continue
            if reduced and reduced[-1][0] == var:
                merged = reduced[-1][1] + exp
                if merged == 0:
                    reduced.pop()
                else:
                    reduced[-1] = (var, merged)
            else:
                reduced.append((var, exp))
        self.syllables = tuple(reduced)

    @classmethod
    def var(cls, index: int, exp: int = 1) -> "Word":
        return cls([(index, exp)])

    @classmethod
    def commutator(cls, u: "Word", v: "Word") -> "Word":
        return u.inverse() * v.inverse() * u * v

    def inverse(self) -> "Word":
        return Word((var, -exp) for var, exp in reversed(self.syllables))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def __pow__(self, e: int) -> "Word":
        if e < 0:
            return self.inverse() ** (-e)
        result = Word()
        for _ in range(e):
            result = result * self
        return result

    def variables(self) -> set:
        return {var for var, _exp in self.syllables}

    @property
    def is_empty(self) -> bool:
        return not self.syllables

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def __repr__(self):
        if not self.syllables:
            return "Word()"
        body = " ".join(
            f"x{var}" if exp == 1 else f"x{var}^{exp}" for var, exp in self.syllables
        )
        return f"Word({body})"


def eval_word(handle, word: Word, assignment: Mapping[int, object]):
    """Evaluate the word left to right over the assigned elements."""
    result = handle.identity
    for var, exp in word.syllables:
        if var not in assignment:
            raise ValueError(f"variable x{var} is unassigned")
        result = handle.multiply(result, element_power(handle, assignment[var], exp))
    return result


def _assignment_space(handle, variables: Sequence[int], tuple_budget: int):
    total = handle.order ** len(variables)
    if total > tuple_budget:
        raise BudgetExceededError("assignment space exceeds budget", total)
    elems = list(handle.elements())
    for combo in itertools.product(elems, repeat=len(variables)):
        yield dict(zip(variables, combo))


def holds_identity(
    handle,
    word: Word,
    samples: Optional[int] = None,
    seed: int = 0,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
):
    """True when w(...) is the identity for every assignment, else a
    counterexample assignment.

    Exhaustive by default (sound and complete, budgeted); with ``samples`` set
    it checks that many seeded random assignments instead, which is sound for
    counterexamples only.
    """
    variables = sorted(word.variables())
    if samples is None:
        candidates = _assignment_space(handle, variables, tuple_budget)
    else:
        rng = random.Random(seed)
        elems = list(handle.elements())

        def _sampled():
            for _ in range(samples):
                yield {v: rng.choice(elems) for v in variables}

        candidates = _sampled()
    for assignment in candidates:
        if eval_word(handle, word, assignment) != handle.identity:
            return assignment
    return True


def discriminate(
    handle,
    words: Sequence[Word],
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> Optional[dict]:
    """A single assignment falsifying every word at once, or None if no
    assignment over the handle does."""
    variables = sorted(set().union(*(w.variables() for w in words)) if words else set())
    for assignment in _assignment_space(handle, variables, tuple_budget):
        if all(eval_word(handle, w, assignment) != handle.identity for w in words):
            return assignment
    return None


def max_class_t_generated(
    handle,
    t: int,
    tuple_budget: int = DEFAULT_TUPLE_BUDGET,
) -> int:
    """Maximum nilpotency class over all subgroups generated by t elements.

    Enumerates t-element subsets (a repeated generator never enlarges the
    subgroup), caching by generated subgroup; stops early once the class of
    the whole group is reached.
    """
    if not isinstance(t, int) or t < 1:
        raise ValueError("t must be a positive integer")
    elems = sorted(handle.elements())
    t = min(t, len(elems))
    count = math.comb(len(elems), t)
    if count > tuple_budget:
        raise BudgetExceededError("generator-tuple enumeration exceeds budget", count)
    # fixed shuffle so subsets that mix active and base parts come up early
    rng = random.Random(0)
    rng.shuffle(elems)
    upper = nilpotency_class(handle)
    best = 0
    seen: dict[frozenset, int] = {}
    for combo in itertools.combinations(elems, t):
        subgroup = frozenset(generated_subgroup(handle, combo))
        cls = seen.get(subgroup)
        if cls is None:
            cls = nilpotency_class(handle, combo)
            seen[subgroup] = cls
        if cls > best:
            best = cls
            if best == upper:
                break
    return best
