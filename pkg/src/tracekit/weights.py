"""Exact semirings, finitely supported weight vectors, and partial probabilities.

A weight vector is a finitely supported map from states to nonzero semiring
values. Vectors are canonicalized on construction (zero entries are dropped),
so structural equality coincides with semantic equality and vectors can serve
as dictionary keys, in particular as the state space of a determinized
weighted automaton.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Tuple, Union

StateId = int


@dataclass(frozen=True)
class Semiring:
    """A semiring with exact carrier arithmetic.

    `add` must be associative and commutative with unit `zero`, `mul`
    associative with unit `one` and distributing over `add` from both sides,
    and `zero` must annihilate `mul`. Only exact carriers are provided; all
    downstream equality checks are exact, so floating point is deliberately
    not supported.
    """

    name: str
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]

    def sum(self, values: Iterable[Any]) -> Any:
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def product(self, values: Iterable[Any]) -> Any:
        total = self.one
        for v in values:
            total = self.mul(total, v)
        return total

    def __repr__(self) -> str:
        return f"Semiring({self.name})"


BOOL = Semiring("bool", False, True, operator.or_, operator.and_)
NAT = Semiring("nat", 0, 1, operator.add, operator.mul)
RAT = Semiring("rat", Fraction(0), Fraction(1), operator.add, operator.mul)

SEMIRINGS = {s.name: s for s in (BOOL, NAT, RAT)}

EntriesLike = Union[Mapping[StateId, Any], Iterable[Tuple[StateId, Any]]]


class WeightVec:
    """Finitely supported map from StateId to carrier, with no stored zeros.

    Duplicate states in the input are accumulated with the semiring addition
    before zeros are dropped, so constructing from an edge list is safe.
    """

    __slots__ = ("semiring", "_map", "_items")

    def __init__(self, semiring: Semiring, entries: EntriesLike = ()):
        if isinstance(entries, Mapping):
            entries = entries.items()
        acc: dict = {}
        add = semiring.add
        for x, v in entries:
            acc[x] = add(acc[x], v) if x in acc else v
        zero = semiring.zero
        self.semiring = semiring
        self._map = {x: v for x, v in acc.items() if v != zero}
        try:
            self._items = tuple(sorted(self._map.items()))
        except TypeError:
            # nested keys (vectors of vectors) have no natural order
            self._items = tuple(sorted(self._map.items(), key=lambda kv: repr(kv[0])))

    def __call__(self, x: StateId) -> Any:
        return self._map.get(x, self.semiring.zero)

    def items(self) -> Tuple[Tuple[StateId, Any], ...]:
        return self._items

    @property
    def support(self) -> frozenset:
        return frozenset(self._map)

    def is_zero(self) -> bool:
        return not self._map

    def __len__(self) -> int:
        return len(self._map)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeightVec)
            and self.semiring.name == other.semiring.name
            and self._items == other._items
        )

    def __hash__(self) -> int:
        return hash((self.semiring.name, self._items))

    def __repr__(self) -> str:
        return f"WeightVec({self.semiring.name}, {dict(self._items)!r})"


def unit(semiring: Semiring, x: StateId) -> WeightVec:
    """The monad unit: all mass `one` on the single state x."""
    return WeightVec(semiring, ((x, semiring.one),))


def map_weights(f: Callable[[StateId], StateId], v: WeightVec) -> WeightVec:
    """Push a vector forward along f, summing over preimages."""
    return WeightVec(v.semiring, ((f(x), val) for x, val in v.items()))


def monad_mul(semiring: Semiring, outer: Mapping[WeightVec, Any]) -> WeightVec:
    """Flatten a finitely supported map over vectors into one vector.

    result(x) = sum over psi of outer(psi) * psi(x).
    """
    mul = semiring.mul
    zero = semiring.zero
    pairs = []
    for psi, c in outer.items():
        if c == zero:
            continue
        for x, v in psi.items():
            pairs.append((x, mul(c, v)))
    return WeightVec(semiring, pairs)


def scale(c: Any, v: WeightVec) -> WeightVec:
    mul = v.semiring.mul
    return WeightVec(v.semiring, ((x, mul(c, val)) for x, val in v.items()))


def vec_sum(semiring: Semiring, vecs: Iterable[WeightVec]) -> WeightVec:
    pairs = []
    for v in vecs:
        pairs.extend(v.items())
    return WeightVec(semiring, pairs)


class _UndefinedType:
    """Distinguished outcome of a partial addition that would exceed 1."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Undefined"

    def __bool__(self) -> bool:
        return False


UNDEFINED = _UndefinedType()


@dataclass(frozen=True)
class PartialProb:
    """An exact rational probability in [0, 1].

    Addition is partial: it is defined exactly when the sum stays at most 1,
    and yields UNDEFINED (a value, not an error) otherwise.
    """

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        if not (0 <= v <= 1):
            raise ValueError(f"probability out of range [0, 1]: {v}")
        object.__setattr__(self, "value", v)

    def __repr__(self) -> str:
        return f"PartialProb({self.value})"


def prob_add(p: PartialProb, q: PartialProb):
    """Partial addition on [0, 1]: defined iff the sum is at most 1."""
    s = p.value + q.value
    if s > 1:
        return UNDEFINED
    return PartialProb(s)


def prob_mul(p: PartialProb, q: PartialProb) -> PartialProb:
    return PartialProb(p.value * q.value)
