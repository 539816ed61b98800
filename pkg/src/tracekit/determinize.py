"""Determinization constructions returning the machine plus the unit embedding.

All constructions materialize only the part of the lifted state space that is
reachable from the embedded original states, by deterministic breadth-first
frontier exploration (states are numbered in discovery order, so results are
reproducible). Every result keeps `state_meaning`, the underlying value of
each new state (a state set, a weight vector, or a set of predicates), so
tests can assert against meanings rather than opaque ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, Hashable, Iterable, List, Sequence, Tuple, Union

from .automata import (
    NFA,
    AlternatingAut,
    MooreAut,
    WeightedAut,
    require_valid,
)
from .weights import WeightVec, scale, unit, vec_sum

BOOL_MODES = ("disj", "conj")


@dataclass
class DetResult:
    """A determinized machine, the embedding of old states, and state meanings."""

    machine: Union[MooreAut, NFA]
    embed: Dict[int, int]
    state_meaning: Dict[int, Any]
    method: str


@dataclass(frozen=True)
class BudgetExceeded:
    """Explicit outcome when exploration would pass its configured bound."""

    method: str
    budget: int
    discovered: int


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _det_names(count: int) -> Tuple[str, ...]:
    return tuple(f"d{i}" for i in range(count))


def det_subset(n: NFA, mode: str = "disj") -> DetResult:
    """Powerset construction from the singleton states.

    Result states are the subsets of n's states reachable from singletons,
    stepping to the union of successor sets. Disjunctive output accepts a
    subset meeting the accepting set; conjunctive output accepts a subset
    contained in it (so the empty subset accepts).
    """
    require_valid(n)
    if mode not in BOOL_MODES:
        raise ValueError(f"mode must be 'disj' or 'conj', got {mode!r}")
    masks = n.succ_masks()
    acc = n.accepting_mask()
    ids: Dict[int, int] = {}
    order: List[int] = []
    work: deque = deque()

    def intern(mask: int) -> int:
        sid = ids.get(mask)
        if sid is None:
            sid = len(order)
            ids[mask] = sid
            order.append(mask)
            work.append(mask)
        return sid

    embed = {x: intern(1 << x) for x in range(n.n_states)}
    delta: List[Tuple[int, ...]] = []
    while work:
        s = work.popleft()
        row = []
        for ai in range(len(n.alphabet)):
            t = 0
            for x in _iter_bits(s):
                t |= masks[x][ai]
            row.append(intern(t))
        delta.append(tuple(row))
    if mode == "disj":
        outputs = [bool(s & acc) for s in order]
    else:
        outputs = [s & ~acc == 0 for s in order]
    machine = MooreAut(n.alphabet, outputs, delta, names=_det_names(len(order)))
    meanings = {i: frozenset(_iter_bits(s)) for i, s in enumerate(order)}
    return DetResult(machine, embed, meanings, f"subset-{mode}")


def det_weighted(w: WeightedAut, budget: int = 500) -> Union[DetResult, BudgetExceeded]:
    """Weight-vector construction: states are the canonical vectors reachable
    from the unit vectors.

    output(v) sums v(y) * out(y); the a-successor of v is the vector
    z -> sum over y of v(y) * trans(y)(a)(z). Over non-idempotent carriers the
    reachable set can be infinite, so exploration stops with a BudgetExceeded
    outcome once more than `budget` states appear.
    """
    require_valid(w)
    sr = w.semiring
    ids: Dict[WeightVec, int] = {}
    order: List[WeightVec] = []
    work: deque = deque()
    overflow = False

    def intern(vec: WeightVec) -> int:
        nonlocal overflow
        sid = ids.get(vec)
        if sid is None:
            if len(order) >= budget:
                overflow = True
                return -1
            sid = len(order)
            ids[vec] = sid
            order.append(vec)
            work.append(vec)
        return sid

    embed = {}
    for x in range(w.n_states):
        embed[x] = intern(unit(sr, x))
        if overflow:
            return BudgetExceeded("weighted", budget, len(order) + 1)
    delta: List[Tuple[int, ...]] = []
    while work:
        v = work.popleft()
        row = []
        for ai in range(len(w.alphabet)):
            succ = vec_sum(sr, (scale(c, w.trans[y][ai]) for y, c in v.items()))
            row.append(intern(succ))
            if overflow:
                return BudgetExceeded("weighted", budget, len(order) + 1)
        delta.append(tuple(row))
    outputs = [sr.sum(sr.mul(c, w.out[y]) for y, c in v.items()) for v in order]
    machine = MooreAut(w.alphabet, outputs, delta, semiring=sr, names=_det_names(len(order)))
    meanings = {i: v for i, v in enumerate(order)}
    return DetResult(machine, embed, meanings, "weighted")


def chi_good(family: Iterable[Iterable[Hashable]]) -> frozenset:
    """All subsets of the union that meet every member set.

    This is the transformation that turns a set of branch sets into the
    collection of its hitting sets; it commutes with direct images.
    """
    fams = frozenset(frozenset(u) for u in family)
    universe = sorted(set().union(*fams)) if fams else []
    out = []
    for mask in range(1 << len(universe)):
        v = frozenset(universe[i] for i in _iter_bits(mask))
        if all(v & u for u in fams):
            out.append(v)
    return frozenset(out)


def chi_wrong(family: Iterable[Iterable[Hashable]]) -> frozenset:
    """All images of choice functions picking one element from each member set.

    Kept only as a negative-test subject: unlike `chi_good` it fails
    naturality, so it cannot drive a correct determinization.
    """
    fams = frozenset(frozenset(u) for u in family)
    factors = [sorted(u) for u in fams]
    return frozenset(frozenset(choice) for choice in product(*factors))


def hitting_unions(fams: Sequence[Iterable[int]]) -> frozenset:
    """The set {union of V | V a hitting set of fams}, on bitmask elements.

    Every hitting set is one pick per member set plus arbitrary further
    members, so the result is each choice-union joined with each union of a
    subset of all members. Agrees with mapping union over chi_good(fams).
    """
    factors = [tuple(f) for f in fams]
    if any(not f for f in factors):
        return frozenset()
    choices = {0}
    for f in factors:
        choices = {c | u for c in choices for u in f}
    members = {u for f in factors for u in f}
    closure = {0}
    frontier = [0]
    while frontier:
        c = frontier.pop()
        for u in members:
            nc = c | u
            if nc not in closure:
                closure.add(nc)
                frontier.append(nc)
    return frozenset(c | d for c in choices for d in closure)


def alt_to_nfa(a: AlternatingAut) -> DetResult:
    """Translate an alternating automaton to an NFA on state subsets.

    A subset steps under a to every union of a hitting set of its members'
    branch families, and accepts iff all its members output true (so the
    empty subset is an accepting sink). The successor families are the
    closure-enlarged ones produced by `chi_good`; the textbook translation is
    deliberately not attempted.
    """
    require_valid(a)
    inner = [
        [tuple(sum(1 << y for y in s) for s in fam) for fam in row]
        for row in a.trans
    ]
    out_mask = sum(1 << x for x in range(a.n_states) if a.outputs[x])
    ids: Dict[int, int] = {}
    order: List[int] = []
    work: deque = deque()

    def intern(mask: int) -> int:
        sid = ids.get(mask)
        if sid is None:
            sid = len(order)
            ids[mask] = sid
            order.append(mask)
            work.append(mask)
        return sid

    embed = {x: intern(1 << x) for x in range(a.n_states)}
    transitions = set()
    while work:
        s = work.popleft()
        sid = ids[s]
        for ai, label in enumerate(a.alphabet):
            fams = [inner[x][ai] for x in _iter_bits(s)]
            for t in sorted(hitting_unions(fams)):
                transitions.add((sid, label, intern(t)))
    accepting = [i for i, s in enumerate(order) if s & ~out_mask == 0]
    machine = NFA(len(order), a.alphabet, transitions, accepting, names=_det_names(len(order)))
    meanings = {i: frozenset(_iter_bits(s)) for i, s in enumerate(order)}
    return DetResult(machine, embed, meanings, "alt")


def canonical_det_nfa(n: NFA, bound: int = 4) -> Union[DetResult, BudgetExceeded]:
    """Double-dual determinization: states are sets of predicates on n's states.

    A state x embeds as the set of predicates holding at x. A predicate
    belongs to the a-successor of Q iff its a-preimage (the states with some
    a-successor satisfying it) belongs to Q, and Q outputs true iff the
    acceptance predicate belongs to Q. Reachable states are therefore bounded
    by 2^(2^|states|), and the input size is capped by `bound`.
    """
    require_valid(n)
    if n.n_states > bound:
        return BudgetExceeded("canonical", bound, n.n_states)
    nst = n.n_states
    masks = n.succ_masks()
    npred = 1 << nst
    pre: List[List[int]] = []
    for ai in range(len(n.alphabet)):
        col = [masks[x][ai] for x in range(nst)]
        pre.append([
            sum(1 << x for x in range(nst) if col[x] & phi)
            for phi in range(npred)
        ])
    acc = n.accepting_mask()
    ids: Dict[frozenset, int] = {}
    order: List[frozenset] = []
    work: deque = deque()

    def intern(q: frozenset) -> int:
        sid = ids.get(q)
        if sid is None:
            sid = len(order)
            ids[q] = sid
            order.append(q)
            work.append(q)
        return sid

    embed = {
        x: intern(frozenset(phi for phi in range(npred) if phi >> x & 1))
        for x in range(nst)
    }
    delta: List[Tuple[int, ...]] = []
    while work:
        q = work.popleft()
        row = []
        for ai in range(len(n.alphabet)):
            row.append(intern(frozenset(phi for phi in range(npred) if pre[ai][phi] in q)))
        delta.append(tuple(row))
    outputs = [acc in q for q in order]
    machine = MooreAut(n.alphabet, outputs, delta, names=_det_names(len(order)))
    meanings = {
        i: frozenset(frozenset(_iter_bits(phi)) for phi in q)
        for i, q in enumerate(order)
    }
    return DetResult(machine, embed, meanings, "canonical")
