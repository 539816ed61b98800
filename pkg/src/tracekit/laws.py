"""Finite-instance checkers for the equations behind the determinizations.

Every construction in this package leans on a handful of equations: the
branch-set transformation must be natural, the branching resolution must
satisfy unit and multiplication laws (also in monad-morphism form), the
one-step exchange squares must commute, and the determinized machine must
agree with the source semantics word by word. Each checker enumerates a
declared finite fragment exhaustively (plus optional seeded samples above
the exhaustive bound) and returns a LawReport. A clean report is a finite
proof over that fragment, nothing more; bounds are chosen as the largest
sizes with runs well under a second.

Predicates over a finite set of size k are bitmasks over k points, so a
predicate doubles as its own index; sets of predicates and families of such
sets are masks over masks. Rendering expands all of this back to braces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from operator import and_, or_
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .automata import NFA, AlternatingAut, MooreAut, WeightedAut, require_valid
from .determinize import BudgetExceeded, DetResult, chi_good, chi_wrong
from .semantics import format_word, word_at
from .weights import Semiring, WeightVec, map_weights, monad_mul, unit

NAT_SHAPE = "PP=>PP"


@dataclass(frozen=True)
class LawFailure:
    """One refuted instance: a description plus both fully rendered sides."""

    instance: str
    lhs: str
    rhs: str

    def render(self) -> str:
        return "\n".join((self.instance, self.lhs, self.rhs))


@dataclass
class LawReport:
    law_name: str
    instances_checked: int
    failures: List[LawFailure]

    @property
    def ok(self) -> bool:
        return not self.failures


def format_report(report: LawReport, max_failures: int = 5) -> str:
    lines = [
        f"law: {report.law_name}",
        f"instances checked: {report.instances_checked}",
        f"failures: {len(report.failures)}",
    ]
    for failure in report.failures[:max_failures]:
        lines.append(failure.render())
    hidden = len(report.failures) - max_failures
    if hidden > 0:
        lines.append(f"... and {hidden} more")
    return "\n".join(lines)


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _tt(bit) -> str:
    return "tt" if bit else "ff"


# ---------------------------------------------------------------------------
# Naturality of set-of-set transformations


@dataclass(frozen=True)
class FiniteNatTrans:
    """A transformation on finite families of finite sets, one map for all
    carriers (elements are opaque; only membership structure matters)."""

    name: str
    apply: Callable[[Iterable[Iterable[int]]], frozenset]


CHI_GOOD = FiniteNatTrans("chi-good", chi_good)
CHI_WRONG = FiniteNatTrans("chi-wrong", chi_wrong)
IDENTITY_NAT = FiniteNatTrans(
    "identity", lambda fam: frozenset(frozenset(u) for u in fam)
)

NAT_TRANSFORMS = {t.name: t for t in (CHI_GOOD, CHI_WRONG, IDENTITY_NAT)}


def _carrier_names(nx: int, ny: int) -> Tuple[List[str], List[str]]:
    if nx + ny > 26:
        raise ValueError("carriers too large to letter")
    xs = [chr(ord("a") + i) for i in range(nx)]
    ys = [chr(ord("a") + nx + i) for i in range(ny)]
    return xs, ys


def _fmt_set(s: Iterable[int], names: Sequence[str]) -> str:
    return "{" + ",".join(names[i] for i in sorted(s)) + "}"


def _fmt_family(fam: Iterable[Iterable[int]], names: Sequence[str]) -> str:
    inner = sorted(tuple(sorted(u)) for u in fam)
    return "{" + ", ".join(_fmt_set(u, names) for u in inner) + "}"


def _map_family(f: Sequence[int], fam: Iterable[Iterable[int]]) -> frozenset:
    return frozenset(frozenset(f[x] for x in u) for u in fam)


def naturality_instance(
    t: FiniteNatTrans, nx: int, ny: int, f: Sequence[int], fam: Iterable[Iterable[int]]
) -> Optional[LawFailure]:
    """Evaluate one naturality square; None when it commutes."""
    fam = frozenset(frozenset(u) for u in fam)
    lhs = _map_family(f, t.apply(fam))
    rhs = t.apply(_map_family(f, fam))
    if lhs == rhs:
        return None
    xs, ys = _carrier_names(nx, ny)
    fn = "[" + ", ".join(f"{xs[x]}->{ys[f[x]]}" for x in range(nx)) + "]"
    instance = (
        f"X={_fmt_set(range(nx), xs)}, Y={_fmt_set(range(ny), ys)}, "
        f"f={fn}, S={_fmt_family(fam, xs)}"
    )
    return LawFailure(
        instance,
        f"map after {t.name}: {_fmt_family(lhs, ys)}",
        f"{t.name} after map: {_fmt_family(rhs, ys)}",
    )


_KNOWN_NX = 3
_KNOWN_NY = 2
_KNOWN_F = (0, 0, 1)
_KNOWN_FAMILY = frozenset({frozenset({0, 2}), frozenset({1, 2})})


def known_counterexample(t: FiniteNatTrans = CHI_WRONG) -> Optional[LawFailure]:
    """The classical instance refuting the choice-function transformation:
    two sets sharing one element, under a map gluing the unshared ones."""
    return naturality_instance(t, _KNOWN_NX, _KNOWN_NY, _KNOWN_F, _KNOWN_FAMILY)


def check_naturality(
    t: FiniteNatTrans,
    shape: str = NAT_SHAPE,
    max_size: int = 3,
    samples: int = 500,
    seed: int = 2026,
) -> LawReport:
    """Probe t_Y(map f applied inside) = map f applied to t_X, for all maps
    f between carriers of size up to max_size and all family arguments.

    The enumeration is exhaustive up to carrier size 3; sizes above that are
    covered by seeded random sampling.
    """
    if shape != NAT_SHAPE:
        raise ValueError(f"unsupported shape {shape!r}; only {NAT_SHAPE!r} is known")
    failures: List[LawFailure] = []
    count = 0
    limit = min(max_size, 3)
    for nx in range(limit + 1):
        for ny in range(limit + 1):
            subsets = [frozenset(_iter_bits(m)) for m in range(1 << nx)]
            for f in product(range(ny), repeat=nx):
                for fam_mask in range(1 << (1 << nx)):
                    fam = frozenset(subsets[j] for j in _iter_bits(fam_mask))
                    count += 1
                    failure = naturality_instance(t, nx, ny, f, fam)
                    if failure is not None:
                        failures.append(failure)
    if max_size > 3:
        rng = random.Random(seed)
        for _ in range(samples):
            nx = rng.randint(1, max_size)
            ny = rng.randint(1, max_size)
            if max(nx, ny) <= 3:
                nx = max_size
            f = tuple(rng.randrange(ny) for _ in range(nx))
            fam = frozenset(
                frozenset(_iter_bits(rng.randrange(1 << nx)))
                for _ in range(rng.randint(0, 4))
            )
            count += 1
            failure = naturality_instance(t, nx, ny, f, fam)
            if failure is not None:
                failures.append(failure)
    return LawReport(f"naturality:{t.name}", count, failures)


# ---------------------------------------------------------------------------
# Branching-resolution actions and their laws


@dataclass(frozen=True)
class PredicateAction:
    """Resolves a finite set of predicates to one predicate.

    fold(masks, full) combines predicate bitmasks; `full` is the all-points
    mask, the unit of conjunctive folds (also used for width-1 truth bits).
    """

    name: str
    fold: Callable[[Iterable[int], int], int]


DIAMOND = PredicateAction("diamond", lambda masks, full: reduce(or_, masks, 0))
BOX = PredicateAction("box", lambda masks, full: reduce(and_, masks, full))


@dataclass(frozen=True)
class SemiringAction:
    """Resolves a weighted bag of carrier-valued predicates by weighted sum."""

    name: str
    semiring: Semiring


def _vec_resolve(sr: Semiring, vec: WeightVec, k: int) -> tuple:
    """Pointwise weighted sum: the resolved predicate at p sums c * psi[p]."""
    return tuple(
        sr.sum(sr.mul(c, psi[p]) for psi, c in vec.items()) for p in range(k)
    )


def _fmt_points(mask: int) -> str:
    return "{" + ",".join(str(p) for p in _iter_bits(mask)) + "}"


def _fmt_predset(masks: Iterable[int]) -> str:
    return "{" + ", ".join(_fmt_points(m) for m in sorted(masks)) + "}"


def check_action_laws(
    action: Union[PredicateAction, SemiringAction],
    max_phi: int = 3,
    samples: int = 300,
    seed: int = 2026,
) -> LawReport:
    """Check the unit law (resolving a singleton returns its member) and the
    multiplication law (resolving a union agrees with resolving the
    resolutions) over predicates on at most max_phi points.

    Boolean predicate actions are exhaustive: fully up to 2 points, and up to
    two-member outer families plus samples at 3 points. Semiring actions are
    exhaustive over Boolean vectors on at most 1 point plus bounded/sampled
    fragments beyond that.
    """
    if isinstance(action, PredicateAction):
        return _action_laws_bool(action, max_phi, samples, seed)
    if isinstance(action, SemiringAction):
        return _action_laws_semiring(action, max_phi, samples, seed)
    raise TypeError(f"not an action: {action!r}")


def _action_laws_bool(
    action: PredicateAction, max_phi: int, samples: int, seed: int
) -> LawReport:
    failures: List[LawFailure] = []
    count = 0

    for k in range(max_phi + 1):
        full = (1 << k) - 1
        for phi in range(1 << k):
            count += 1
            got = action.fold((phi,), full)
            if got != phi:
                failures.append(
                    LawFailure(
                        f"|Phi|={k}, predicate {_fmt_points(phi)}",
                        f"resolve of singleton: {_fmt_points(got)}",
                        f"the predicate itself: {_fmt_points(phi)}",
                    )
                )

    def check_mult(k: int, fam_masks: Sequence[int], resolved: Sequence[int]) -> None:
        nonlocal count
        count += 1
        full = (1 << k) - 1
        union = reduce(or_, fam_masks, 0)
        lhs = action.fold(_iter_bits(union), full)
        rhs = action.fold(resolved, full)
        if lhs != rhs:
            rendered = (
                "{" + ", ".join(_fmt_predset(_iter_bits(fm)) for fm in fam_masks) + "}"
            )
            failures.append(
                LawFailure(
                    f"|Phi|={k}, family of predicate sets {rendered}",
                    f"resolve of union: {_fmt_points(lhs)}",
                    f"resolve of resolutions: {_fmt_points(rhs)}",
                )
            )

    for k in range(min(max_phi, 2) + 1):
        npred = 1 << k
        full = (1 << k) - 1
        fold_of = [action.fold(_iter_bits(fm), full) for fm in range(1 << npred)]
        for outer in range(1 << (1 << npred)):
            fams = list(_iter_bits(outer))
            check_mult(k, fams, [fold_of[fm] for fm in fams])
    if max_phi >= 3:
        k = 3
        full = (1 << k) - 1
        nfam = 1 << (1 << k)
        fold_of = [action.fold(_iter_bits(fm), full) for fm in range(nfam)]
        check_mult(k, (), ())
        for fm in range(nfam):
            check_mult(k, (fm,), (fold_of[fm],))
        for fa, fb in combinations(range(nfam), 2):
            check_mult(k, (fa, fb), (fold_of[fa], fold_of[fb]))
        rng = random.Random(seed)
        for _ in range(samples):
            fams = [rng.randrange(nfam) for _ in range(rng.randint(3, 6))]
            check_mult(k, fams, [fold_of[fm] for fm in fams])
    return LawReport(f"action-laws:{action.name}", count, failures)


_VALUE_POOLS = {
    "bool": (False, True),
    "nat": (0, 1, 2, 3),
    "rat": (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(2, 3)),
}


def _fmt_vec(vec: WeightVec) -> str:
    return "{" + ", ".join(f"{key}:{val}" for key, val in vec.items()) + "}"


def _action_laws_semiring(
    action: SemiringAction, max_phi: int, samples: int, seed: int
) -> LawReport:
    sr = action.semiring
    pool = _VALUE_POOLS[sr.name]
    nonzero = tuple(v for v in pool if v != sr.zero)
    failures: List[LawFailure] = []
    count = 0

    for k in range(max_phi + 1):
        for psi in product(pool, repeat=k):
            count += 1
            got = _vec_resolve(sr, unit(sr, psi), k)
            if got != psi:
                failures.append(
                    LawFailure(
                        f"|Phi|={k}, predicate {psi}",
                        f"resolve of singleton: {got}",
                        f"the predicate itself: {psi}",
                    )
                )

    def check_mult(k: int, outer: WeightVec) -> None:
        nonlocal count
        count += 1
        lhs = _vec_resolve(sr, monad_mul(sr, outer), k)
        rhs = _vec_resolve(
            sr, map_weights(lambda v: _vec_resolve(sr, v, k), outer), k
        )
        if lhs != rhs:
            rendered = (
                "{" + ", ".join(f"{_fmt_vec(v)}:{c}" for v, c in outer.items()) + "}"
            )
            failures.append(
                LawFailure(
                    f"|Phi|={k}, weighted family {rendered}",
                    f"resolve of flattening: {lhs}",
                    f"resolve of resolutions: {rhs}",
                )
            )

    if sr.name == "bool":
        for k in range(min(max_phi, 1) + 1):
            preds = list(product(pool, repeat=k))
            vecs = [
                WeightVec(sr, {p: True for p in chosen})
                for r in range(len(preds) + 1)
                for chosen in combinations(preds, r)
            ]
            for r in range(len(vecs) + 1):
                for chosen in combinations(vecs, r):
                    check_mult(k, WeightVec(sr, {v: True for v in chosen}))
        if max_phi >= 2:
            k = 2
            preds = list(product(pool, repeat=k))
            vecs = [
                WeightVec(sr, {p: True for p in chosen})
                for r in range(len(preds) + 1)
                for chosen in combinations(preds, r)
            ]
            check_mult(k, WeightVec(sr, {}))
            for v in vecs:
                check_mult(k, WeightVec(sr, {v: True}))
            for va, vb in combinations(vecs, 2):
                check_mult(k, WeightVec(sr, {va: True, vb: True}))
    rng = random.Random(seed)
    for _ in range(samples):
        k = rng.randint(0, max_phi)
        inner = []
        for _ in range(rng.randint(0, 3)):
            support = {
                tuple(rng.choice(pool) for _ in range(k)): rng.choice(nonzero)
                for _ in range(rng.randint(0, 2))
            }
            inner.append(WeightVec(sr, support))
        outer = WeightVec(sr, {v: rng.choice(nonzero) for v in inner})
        check_mult(k, outer)
    return LawReport(f"action-laws:{action.name}", count, failures)


def check_monad_morphism(action: PredicateAction, max_size: int = 3) -> LawReport:
    """Check that folding point evaluations is a monad morphism into the
    double-contravariant-powerset monad.

    A subset U of an n-point carrier resolves to the set of predicates
    dagger(U) obtained by folding, over x in U, the set of predicates
    holding at x. Unit law: dagger({x}) is evaluation at x. Multiplication
    law: a predicate lies in dagger(union of a family) iff the fold over
    members U of its membership in dagger(U) holds.
    """
    failures: List[LawFailure] = []
    count = 0
    for n in range(max_size + 1):
        npred = 1 << n
        full_predset = (1 << npred) - 1
        iota = [
            sum(1 << phi for phi in range(npred) if phi >> x & 1) for x in range(n)
        ]
        dagger = [
            action.fold((iota[x] for x in _iter_bits(u)), full_predset)
            for u in range(1 << n)
        ]
        for x in range(n):
            count += 1
            if dagger[1 << x] != iota[x]:
                failures.append(
                    LawFailure(
                        f"n={n}, element {x}",
                        f"dagger of singleton: {_fmt_predset(_iter_bits(dagger[1 << x]))}",
                        f"evaluation at the element: {_fmt_predset(_iter_bits(iota[x]))}",
                    )
                )
        for souter in range(1 << (1 << n)):
            members = list(_iter_bits(souter))
            count += 1
            union = reduce(or_, members, 0)
            lhs = dagger[union]
            rhs = 0
            for phi in range(npred):
                bit = action.fold((dagger[u] >> phi & 1 for u in members), 1)
                rhs |= bit << phi
            if lhs != rhs:
                rendered = (
                    "{" + ", ".join(_fmt_points(u) for u in members) + "}"
                )
                failures.append(
                    LawFailure(
                        f"n={n}, family {rendered}",
                        f"dagger of union: {_fmt_predset(_iter_bits(lhs))}",
                        f"fold of daggers: {_fmt_predset(_iter_bits(rhs))}",
                    )
                )
    return LawReport(f"monad-morphism:{action.name}", count, failures)


# ---------------------------------------------------------------------------
# One-step logic-morphism diagrams

DIAGRAMS = ("subset", "conj", "weighted", "alt")
_MUTATIONS = (None, "flip-output")


def _fmt_lpred(mask: int, alphabet: Sequence[str], k: int) -> str:
    names = ["ε"]
    for ai, label in enumerate(alphabet):
        for p in range(k):
            names.append(f"({label},{p})")
    return "{" + ", ".join(names[i] for i in _iter_bits(mask)) + "}"


def check_logic_morphism_diagram(
    which: str,
    max_phi: int = 2,
    alphabet: Sequence[str] = ("a", "b"),
    samples: int = 200,
    seed: int = 2026,
    mutate: Optional[str] = None,
) -> LawReport:
    """Evaluate both composite paths of the one-step exchange square for one
    determinization flavour, on every element of its finite domain.

    The top path turns each machine element into its one-step predicate over
    formulas (output, or letter-then-point) and resolves those predicates;
    the bottom path aggregates the machine elements first and takes the
    one-step predicate of the aggregate. `mutate="flip-output"` corrupts the
    bottom path's output aggregation, as a negative control for the checker.
    """
    if which not in DIAGRAMS:
        raise ValueError(f"unknown diagram {which!r}; expected one of {DIAGRAMS}")
    if mutate not in _MUTATIONS:
        raise ValueError(f"unknown mutation {mutate!r}")
    if which in ("subset", "conj"):
        return _diagram_powerset(which, max_phi, tuple(alphabet), samples, seed, mutate)
    if which == "weighted":
        return _diagram_weighted(max_phi, tuple(alphabet), mutate)
    return _diagram_alt(max_phi, tuple(alphabet), samples, seed, mutate)


def _diagram_powerset(
    which: str,
    max_phi: int,
    alphabet: Tuple[str, ...],
    samples: int,
    seed: int,
    mutate: Optional[str],
) -> LawReport:
    act = DIAMOND if which == "subset" else BOX
    m = len(alphabet)
    failures: List[LawFailure] = []
    count = 0
    rng = random.Random(seed)
    for k in range(max_phi + 1):
        nmask = 1 << k
        full_pred = nmask - 1
        n_l = 1 + m * k
        full_l = (1 << n_l) - 1
        base = [(o, ts) for o in (0, 1) for ts in product(range(nmask), repeat=m)]
        ones = []
        for o, ts in base:
            lmask = o
            for ai in range(m):
                for p in range(k):
                    if ts[ai] >> p & 1:
                        lmask |= 1 << (1 + ai * k + p)
            ones.append(lmask)

        def fmt_elem(i: int) -> str:
            o, ts = base[i]
            parts = [f"out={_tt(o)}"] + [
                f"{alphabet[ai]}->{_fmt_points(ts[ai])}" for ai in range(m)
            ]
            return "(" + ", ".join(parts) + ")"

        def check_family(idxs: Sequence[int]) -> None:
            nonlocal count
            count += 1
            top = act.fold((ones[i] for i in idxs), full_l)
            out = act.fold((base[i][0] for i in idxs), 1)
            if mutate == "flip-output":
                out ^= 1
            bottom = out
            for ai in range(m):
                folded = act.fold({base[i][1][ai] for i in idxs}, full_pred)
                for p in range(k):
                    if folded >> p & 1:
                        bottom |= 1 << (1 + ai * k + p)
            if top != bottom:
                fam = "[" + "; ".join(fmt_elem(i) for i in idxs) + "]"
                failures.append(
                    LawFailure(
                        f"|Phi|={k}, machine family {fam}",
                        f"resolve of one-step predicates: {_fmt_lpred(top, alphabet, k)}",
                        f"one-step of aggregate: {_fmt_lpred(bottom, alphabet, k)}",
                    )
                )

        for r in range(min(3, len(base)) + 1):
            for idxs in combinations(range(len(base)), r):
                check_family(idxs)
        if len(base) > 4:
            for _ in range(samples):
                r = rng.randint(4, min(8, len(base)))
                check_family(tuple(rng.sample(range(len(base)), r)))
    return LawReport(f"logic-morphism:{which}", count, failures)


def _diagram_weighted(
    max_phi: int, alphabet: Tuple[str, ...], mutate: Optional[str]
) -> LawReport:
    m = len(alphabet)
    failures: List[LawFailure] = []
    count = 0
    for k in range(max_phi + 1):
        nmask = 1 << k
        points = 1 + m * nmask
        rho = [1]
        for ai in range(m):
            for phi in range(nmask):
                lmask = 0
                for p in range(k):
                    if phi >> p & 1:
                        lmask |= 1 << (1 + ai * k + p)
                rho.append(lmask)
        for psi in range(1 << points):
            count += 1
            top = 0
            for i in _iter_bits(psi):
                top |= rho[i]
            out = psi & 1
            if mutate == "flip-output":
                out ^= 1
            bottom = out
            for ai in range(m):
                orphi = 0
                for phi in range(nmask):
                    if psi >> (1 + ai * nmask + phi) & 1:
                        orphi |= phi
                for p in range(k):
                    if orphi >> p & 1:
                        bottom |= 1 << (1 + ai * k + p)
            if top != bottom:
                names = ["*"] + [
                    f"({alphabet[ai]},{_fmt_points(phi)})"
                    for ai in range(m)
                    for phi in range(nmask)
                ]
                rendered = "{" + ", ".join(names[i] for i in _iter_bits(psi)) + "}"
                failures.append(
                    LawFailure(
                        f"|Phi|={k}, weighted one-step bag {rendered}",
                        f"resolve of one-step predicates: {_fmt_lpred(top, alphabet, k)}",
                        f"one-step of aggregate: {_fmt_lpred(bottom, alphabet, k)}",
                    )
                )
    return LawReport("logic-morphism:weighted", count, failures)


def _diagram_alt(
    max_phi: int,
    alphabet: Tuple[str, ...],
    samples: int,
    seed: int,
    mutate: Optional[str],
) -> LawReport:
    m = len(alphabet)
    failures: List[LawFailure] = []
    count = 0
    rng = random.Random(seed)
    for k in range(max_phi + 1):
        nmask = 1 << k
        ninner = 1 << nmask
        full_pred = (1 << k) - 1
        n_l = 1 + m * k
        full_l = (1 << n_l) - 1
        members_of = [frozenset(_iter_bits(im)) for im in range(ninner)]
        base = [(o, ts) for o in (0, 1) for ts in product(range(ninner), repeat=m)]
        ones = []
        for o, ts in base:
            lmask = o
            for ai in range(m):
                disj = 0
                for phi in members_of[ts[ai]]:
                    disj |= phi
                for p in range(k):
                    if disj >> p & 1:
                        lmask |= 1 << (1 + ai * k + p)
            ones.append(lmask)
        hit_cache: Dict[Tuple[int, ...], int] = {}

        def hitting_pred(famkey: Tuple[int, ...]) -> int:
            got = hit_cache.get(famkey)
            if got is None:
                got = 0
                for v in chi_good([members_of[im] for im in famkey]):
                    conj = full_pred
                    for phi in v:
                        conj &= phi
                    got |= conj
                hit_cache[famkey] = got
            return got

        def fmt_elem(i: int) -> str:
            o, ts = base[i]
            parts = [f"out={_tt(o)}"] + [
                f"{alphabet[ai]}->{_fmt_predset(members_of[ts[ai]])}"
                for ai in range(m)
            ]
            return "(" + ", ".join(parts) + ")"

        def check_family(idxs: Sequence[int]) -> None:
            nonlocal count
            count += 1
            top = full_l
            for i in idxs:
                top &= ones[i]
            out = 1
            for i in idxs:
                out &= base[i][0]
            if mutate == "flip-output":
                out ^= 1
            bottom = out
            for ai in range(m):
                famkey = tuple(sorted({base[i][1][ai] for i in idxs}))
                folded = hitting_pred(famkey)
                for p in range(k):
                    if folded >> p & 1:
                        bottom |= 1 << (1 + ai * k + p)
            if top != bottom:
                fam = "[" + "; ".join(fmt_elem(i) for i in idxs) + "]"
                failures.append(
                    LawFailure(
                        f"|Phi|={k}, machine family {fam}",
                        f"resolve of one-step predicates: {_fmt_lpred(top, alphabet, k)}",
                        f"one-step of aggregate: {_fmt_lpred(bottom, alphabet, k)}",
                    )
                )

        for r in range(min(2, len(base)) + 1):
            for idxs in combinations(range(len(base)), r):
                check_family(idxs)
        if len(base) > 3:
            for _ in range(samples):
                r = rng.randint(3, min(4, len(base)))
                check_family(tuple(rng.sample(range(len(base)), r)))
    return LawReport("logic-morphism:alt", count, failures)


def check_exchange(max_phi: int = 2) -> LawReport:
    """Conjunction-over-disjunction exchange: on any family of predicate
    sets, the meet of the members' joins equals the join, over all hitting
    sets of the family, of the hitting set's meet. This is the pointwise law
    that makes the alternating translation work.
    """
    failures: List[LawFailure] = []
    count = 0
    for k in range(max_phi + 1):
        nmask = 1 << k
        ninner = 1 << nmask
        full_pred = (1 << k) - 1
        members_of = [frozenset(_iter_bits(im)) for im in range(ninner)]
        join_of = []
        for im in range(ninner):
            disj = 0
            for phi in members_of[im]:
                disj |= phi
            join_of.append(disj)
        for fam_mask in range(1 << ninner):
            count += 1
            inner_masks = list(_iter_bits(fam_mask))
            top = full_pred
            for im in inner_masks:
                top &= join_of[im]
            bottom = 0
            for v in chi_good([members_of[im] for im in inner_masks]):
                conj = full_pred
                for phi in v:
                    conj &= phi
                bottom |= conj
            if top != bottom:
                rendered = (
                    "{"
                    + ", ".join(_fmt_predset(members_of[im]) for im in inner_masks)
                    + "}"
                )
                failures.append(
                    LawFailure(
                        f"|Phi|={k}, family {rendered}",
                        f"meet of joins: {_fmt_points(top)}",
                        f"join of hitting-set meets: {_fmt_points(bottom)}",
                    )
                )
    return LawReport("exchange:conjunction-over-disjunction", count, failures)


# ---------------------------------------------------------------------------
# Word-by-word correctness of determinization results


def _nfa_word_masks(n: NFA, depth: int, mode: str = "disj") -> List[List[int]]:
    """rows[k][x] = bitmask over length-k word indices of x's trace values."""
    succ = n.succ_sets()
    m = len(n.alphabet)
    acc = n.accepting
    rows = [[1 if x in acc else 0 for x in range(n.n_states)]]
    width = 1
    for _ in range(depth):
        prev = rows[-1]
        full = (1 << width) - 1
        cur = []
        for x in range(n.n_states):
            word_mask = 0
            for ai in range(m):
                if mode == "disj":
                    part = 0
                    for y in succ[x][ai]:
                        part |= prev[y]
                else:
                    part = full
                    for y in succ[x][ai]:
                        part &= prev[y]
                word_mask |= part << (ai * width)
            cur.append(word_mask)
        rows.append(cur)
        width *= m
    return rows


def _alt_word_masks(a: AlternatingAut, depth: int) -> List[List[int]]:
    m = len(a.alphabet)
    rows = [[1 if a.outputs[x] else 0 for x in range(a.n_states)]]
    width = 1
    for _ in range(depth):
        prev = rows[-1]
        full = (1 << width) - 1
        cur = []
        for x in range(a.n_states):
            word_mask = 0
            for ai in range(m):
                part = 0
                for branch in a.trans[x][ai]:
                    conj = full
                    for y in branch:
                        conj &= prev[y]
                    part |= conj
                word_mask |= part << (ai * width)
            cur.append(word_mask)
        rows.append(cur)
        width *= m
    return rows


def _moore_word_masks(d: MooreAut, depth: int) -> List[List[int]]:
    m = len(d.alphabet)
    rows = [[1 if d.outputs[q] else 0 for q in range(d.n_states)]]
    width = 1
    for _ in range(depth):
        prev = rows[-1]
        cur = []
        for q in range(d.n_states):
            word_mask = 0
            for ai in range(m):
                word_mask |= prev[d.delta[q][ai]] << (ai * width)
            cur.append(word_mask)
        rows.append(cur)
        width *= m
    return rows


def _moore_word_values(d: MooreAut, depth: int) -> List[List[tuple]]:
    m = len(d.alphabet)
    rows = [[(d.outputs[q],) for q in range(d.n_states)]]
    for _ in range(depth):
        prev = rows[-1]
        rows.append(
            [
                tuple(
                    v for ai in range(m) for v in prev[d.delta[q][ai]]
                )
                for q in range(d.n_states)
            ]
        )
    return rows


def _wa_word_values(w: WeightedAut, depth: int) -> List[List[tuple]]:
    sr = w.semiring
    m = len(w.alphabet)
    rows = [[(w.out[x],) for x in range(w.n_states)]]
    width = 1
    for _ in range(depth):
        prev = rows[-1]
        cur = []
        for x in range(w.n_states):
            parts = []
            for ai in range(m):
                items = w.trans[x][ai].items()
                parts.extend(
                    sr.sum(sr.mul(c, prev[y][j]) for y, c in items)
                    for j in range(width)
                )
            cur.append(tuple(parts))
        rows.append(cur)
        width *= m
    return rows


def check_correctness(
    source, det: DetResult, depth: int, max_failures: int = 25
) -> LawReport:
    """Compare, for every source state and every word up to the given depth,
    the source trace value against the determinized machine's value at the
    embedded state. Equality is exact (Boolean or carrier values).
    """
    if isinstance(det, BudgetExceeded):
        raise ValueError("a budget-exceeded outcome carries no machine to check")
    machine = det.machine
    method = det.method
    if tuple(machine.alphabet) != tuple(source.alphabet):
        raise ValueError("determinized machine alphabet differs from source")
    require_valid(source)
    boolean = True
    if method == "subset-disj":
        if not isinstance(source, NFA):
            raise TypeError("subset-disj results check against an NFA source")
        src_rows = _nfa_word_masks(source, depth, "disj")
        mach_rows = _moore_word_masks(machine, depth)
    elif method == "subset-conj":
        if not isinstance(source, NFA):
            raise TypeError("subset-conj results check against an NFA source")
        src_rows = _nfa_word_masks(source, depth, "conj")
        mach_rows = _moore_word_masks(machine, depth)
    elif method == "canonical":
        if not isinstance(source, NFA):
            raise TypeError("canonical results check against an NFA source")
        src_rows = _nfa_word_masks(source, depth, "disj")
        mach_rows = _moore_word_masks(machine, depth)
    elif method == "alt":
        if not isinstance(source, AlternatingAut):
            raise TypeError("alt results check against an alternating source")
        src_rows = _alt_word_masks(source, depth)
        mach_rows = _nfa_word_masks(machine, depth, "disj")
    elif method == "weighted":
        if not isinstance(source, WeightedAut):
            raise TypeError("weighted results check against a weighted source")
        if machine.semiring.name != source.semiring.name:
            raise ValueError("carrier mismatch between source and machine")
        boolean = False
        src_rows = _wa_word_values(source, depth)
        mach_rows = _moore_word_values(machine, depth)
    else:
        raise ValueError(f"unknown determinization method {det.method!r}")

    m = len(source.alphabet)
    failures: List[LawFailure] = []
    count = 0

    def record(x: int, k: int, i: int, lhs, rhs) -> None:
        word = format_word(word_at(source.alphabet, k, i))
        failures.append(
            LawFailure(
                f"state {source.names[x]}, word {word}",
                f"source trace: {lhs}",
                f"determinized trace: {rhs}",
            )
        )

    for x in range(source.n_states):
        q = det.embed[x]
        for k in range(depth + 1):
            count += m ** k
            a, b = src_rows[k][x], mach_rows[k][q]
            if a == b:
                continue
            if boolean:
                for i in _iter_bits(a ^ b):
                    if len(failures) >= max_failures:
                        break
                    record(x, k, i, _tt(a >> i & 1), _tt(b >> i & 1))
            else:
                for i, (va, vb) in enumerate(zip(a, b)):
                    if va != vb and len(failures) < max_failures:
                        record(x, k, i, va, vb)
    return LawReport(f"correctness:{method}", count, failures)
