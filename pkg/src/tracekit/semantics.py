"""Depth-bounded trace semantics for every automaton kind.

Each machine kind comes with a one-step recurrence; the functions here unfold
it by dynamic programming over word length (tree height for tree automata).
Layer k+1 depends only on layer k and the recurrences couple all states, so
the tables for every state are produced in one pass and each table is total on
all words (trees) within the requested depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping, Sequence, Tuple

from .automata import (
    GPS,
    LTS,
    NFA,
    AlternatingAut,
    MooreAut,
    TERM,
    Tree,
    WeightedAut,
    WeightedTreeAut,
    all_trees,
    check_state,
    require_valid,
    tree_violations,
)
from .weights import BOOL, PartialProb, Semiring, WeightVec

Word = Tuple[str, ...]


@dataclass(frozen=True)
class LanguageTable:
    """Map from words of length <= depth to Boolean or carrier values."""

    depth: int
    entries: Mapping[Word, Any]

    def __getitem__(self, word) -> Any:
        return self.entries[tuple(word)]


@dataclass(frozen=True)
class TreeLanguageTable:
    """Map from arity-correct trees of height <= depth to carrier values."""

    depth: int
    entries: Mapping[Tree, Any]

    def __getitem__(self, tree: Tree) -> Any:
        return self.entries[tree]


@dataclass(frozen=True)
class TraceDist:
    """Map from words to the exact probability of the complete trace."""

    depth: int
    entries: Mapping[Word, PartialProb]

    def __getitem__(self, word) -> PartialProb:
        return self.entries[tuple(word)]


def word_at(alphabet: Sequence[str], length: int, index: int) -> Word:
    """Decode the word at a positional index within its length layer.

    Words of one length are ordered lexicographically by letter index; the
    index is read as `length` base-|alphabet| digits, most significant first.
    """
    m = len(alphabet)
    letters = []
    for _ in range(length):
        index, d = divmod(index, m)
        letters.append(alphabet[d])
    letters.reverse()
    return tuple(letters)


def format_word(word: Sequence[str]) -> str:
    """Render a word for output: ε when empty, ·-separated for long labels."""
    if not word:
        return "ε"
    if all(len(label) == 1 for label in word):
        return "".join(word)
    return "·".join(word)


def _mask_table(aut, layers: List[List[int]], x: int, depth: int) -> LanguageTable:
    entries: Dict[Word, bool] = {}
    alphabet = aut.alphabet
    for k, layer in enumerate(layers):
        for i, mask in enumerate(layer):
            entries[word_at(alphabet, k, i)] = bool(mask >> x & 1)
    return LanguageTable(depth, entries)


def _value_table(aut, layers: List[List[tuple]], x: int, depth: int) -> LanguageTable:
    entries: Dict[Word, Any] = {}
    alphabet = aut.alphabet
    for k, layer in enumerate(layers):
        for i, values in enumerate(layer):
            entries[word_at(alphabet, k, i)] = values[x]
    return LanguageTable(depth, entries)


def _extend_layers(alphabet, layers, memos, step):
    """Append one layer: new word a.w sits at index (a * len(prev) + index of w)."""
    prev = layers[-1]
    cur = []
    for ai in range(len(alphabet)):
        memo = memos[ai]
        for pm in prev:
            nm = memo.get(pm)
            if nm is None:
                nm = step(ai, pm)
                memo[pm] = nm
            cur.append(nm)
    layers.append(cur)


def nfa_layers(n: NFA, depth: int) -> List[List[int]]:
    """Acceptance bitmasks per word: bit x is set iff x accepts the word."""
    require_valid(n)
    masks = n.succ_masks()
    nst = n.n_states
    layers = [[n.accepting_mask()]]
    memos: List[dict] = [{} for _ in n.alphabet]

    def step(ai: int, pm: int) -> int:
        nm = 0
        for x in range(nst):
            if masks[x][ai] & pm:
                nm |= 1 << x
        return nm

    for _ in range(depth):
        _extend_layers(n.alphabet, layers, memos, step)
    return layers


def nfa_trace(n: NFA, x: int, depth: int) -> LanguageTable:
    """Language of x up to the depth: the empty word iff x accepts, and a.w
    iff some a-successor of x accepts w."""
    check_state(n, x)
    return _mask_table(n, nfa_layers(n, depth), x, depth)


def length_semantics(n: NFA, x: int, depth: int) -> Dict[int, bool]:
    """Whether x accepts some word of each length up to the depth."""
    require_valid(n)
    check_state(n, x)
    masks = n.succ_masks()
    nst = n.n_states
    any_succ = [0] * nst
    for s in range(nst):
        for m in masks[s]:
            any_succ[s] |= m
    cur = n.accepting_mask()
    out = {0: bool(cur >> x & 1)}
    for k in range(1, depth + 1):
        cur = sum(1 << s for s in range(nst) if any_succ[s] & cur)
        out[k] = bool(cur >> x & 1)
    return out


def bt_layers(n: NFA, depth: int, mode: str) -> List[List[int]]:
    """Layers for the successor-function view of an NFA.

    Disjunctive mode asks for some successor to accept the rest of the word;
    conjunctive mode asks for all successors to accept it, which is vacuously
    true when the successor set is empty. This walks explicit successor sets,
    deliberately not sharing the bitmask stepping of `nfa_layers`, so the two
    can serve as cross-checks.
    """
    require_valid(n)
    if mode not in ("disj", "conj"):
        raise ValueError(f"mode must be 'disj' or 'conj', got {mode!r}")
    succ = n.succ_sets()
    nst = n.n_states
    conj = mode == "conj"
    layers = [[n.accepting_mask()]]
    memos: List[dict] = [{} for _ in n.alphabet]

    def step(ai: int, pm: int) -> int:
        holds = {y for y in range(nst) if pm >> y & 1}
        nm = 0
        for x in range(nst):
            ys = succ[x][ai]
            ok = ys <= holds if conj else any(y in holds for y in ys)
            if ok:
                nm |= 1 << x
        return nm

    for _ in range(depth):
        _extend_layers(n.alphabet, layers, memos, step)
    return layers


def bt_nfa_trace(n: NFA, x: int, depth: int, mode: str = "disj") -> LanguageTable:
    """Trace table for the successor-function view, in either branching mode."""
    check_state(n, x)
    return _mask_table(n, bt_layers(n, depth, mode), x, depth)


def lts_layers(l: LTS, depth: int) -> List[List[int]]:
    require_valid(l)
    nst = l.n_states
    masks = [
        [sum(1 << y for y in succ) for succ in row]
        for row in l.trans
    ]
    layers = [[(1 << nst) - 1 if nst else 0]]
    memos: List[dict] = [{} for _ in l.alphabet]

    def step(ai: int, pm: int) -> int:
        nm = 0
        for x in range(nst):
            if masks[x][ai] & pm:
                nm |= 1 << x
        return nm

    for _ in range(depth):
        _extend_layers(l.alphabet, layers, memos, step)
    return layers


def lts_traces(l: LTS, x: int, depth: int) -> LanguageTable:
    """Finite traces: the empty word always holds, a.w holds iff some
    a-successor can do w."""
    check_state(l, x)
    return _mask_table(l, lts_layers(l, depth), x, depth)


def alt_layers(a: AlternatingAut, depth: int) -> List[List[int]]:
    require_valid(a)
    nst = a.n_states
    fams = [
        [tuple(sum(1 << y for y in inner) for inner in fam) for fam in row]
        for row in a.trans
    ]
    base = sum(1 << x for x in range(nst) if a.outputs[x])
    layers = [[base]]
    memos: List[dict] = [{} for _ in a.alphabet]

    def step(ai: int, pm: int) -> int:
        nm = 0
        for x in range(nst):
            for inner in fams[x][ai]:
                if inner & ~pm == 0:
                    nm |= 1 << x
                    break
        return nm

    for _ in range(depth):
        _extend_layers(a.alphabet, layers, memos, step)
    return layers


def alt_trace(a: AlternatingAut, x: int, depth: int) -> LanguageTable:
    """a.w holds iff some branch set for a has all members accepting w."""
    check_state(a, x)
    return _mask_table(a, alt_layers(a, depth), x, depth)


def wa_layers(w: WeightedAut, depth: int) -> List[List[tuple]]:
    """Per word, the tuple of carrier values of all states."""
    require_valid(w)
    sr = w.semiring
    add, mul, zero = sr.add, sr.mul, sr.zero
    rows = [[vec.items() for vec in row] for row in w.trans]
    nst = w.n_states
    layers = [[tuple(w.out)]]
    memos: List[dict] = [{} for _ in w.alphabet]

    def step(ai: int, pv: tuple) -> tuple:
        cur = []
        for x in range(nst):
            acc = zero
            for y, wt in rows[x][ai]:
                acc = add(acc, mul(wt, pv[y]))
            cur.append(acc)
        return tuple(cur)

    for _ in range(depth):
        _extend_layers(w.alphabet, layers, memos, step)
    return layers


def wa_trace(w: WeightedAut, x: int, depth: int) -> LanguageTable:
    """Weighted language: out(x) on the empty word, and on a.w the sum over
    successors y of the transition weight times the value of w at y."""
    check_state(w, x)
    return _value_table(w, wa_layers(w, depth), x, depth)


def gps_layers(g: GPS, depth: int) -> List[List[tuple]]:
    require_valid(g)
    aidx = {a: i for i, a in enumerate(g.alphabet)}
    nst = g.n_states
    moves: List[List[List[Tuple[int, Fraction]]]] = [
        [[] for _ in g.alphabet] for _ in range(nst)
    ]
    for x, d in enumerate(g.dist):
        for k, p in d.items():
            if k is not TERM:
                a, y = k
                moves[x][aidx[a]].append((y, p))
    zero = Fraction(0)
    base = tuple(d.get(TERM, zero) for d in g.dist)
    layers = [[base]]
    memos: List[dict] = [{} for _ in g.alphabet]

    def step(ai: int, pv: tuple) -> tuple:
        return tuple(
            sum((p * pv[y] for y, p in moves[x][ai]), zero) for x in range(nst)
        )

    for _ in range(depth):
        _extend_layers(g.alphabet, layers, memos, step)
    return layers


def gps_trace(g: GPS, x: int, depth: int) -> TraceDist:
    """Probability of each complete trace: termination mass on the empty word,
    and on a.w the sum over (a, y) moves of their probability times y's value
    at w. Entries of pairwise distinct words never sum above 1."""
    check_state(g, x)
    entries: Dict[Word, PartialProb] = {}
    for k, layer in enumerate(gps_layers(g, depth)):
        for i, values in enumerate(layer):
            entries[word_at(g.alphabet, k, i)] = PartialProb(values[x])
    return TraceDist(depth, entries)


def moore_trace(m: MooreAut, x: int, depth: int) -> LanguageTable:
    """Observed outputs of a deterministic machine: the value at w is the
    output of the state reached by reading w."""
    require_valid(m)
    check_state(m, x)
    entries: Dict[Word, Any] = {(): m.outputs[x]}
    frontier = [x]
    words: List[Word] = [()]
    for _ in range(depth):
        nxt: List[int] = []
        nwords: List[Word] = []
        for s, wd in zip(frontier, words):
            for ai, a in enumerate(m.alphabet):
                t = m.delta[s][ai]
                nxt.append(t)
                nwords.append(wd + (a,))
                entries[nwords[-1]] = m.outputs[t]
        frontier, words = nxt, nwords
    return LanguageTable(depth, entries)


def wta_trace(w: WeightedTreeAut, x: int, depth: int) -> TreeLanguageTable:
    """Tree series of x: on op(t1..tn), the sum over rules op(x1..xn) of the
    rule weight times the product of the xi values at ti, bottom-up by height."""
    require_valid(w)
    check_state(w, x)
    sr = w.semiring
    add, mul, zero, one = sr.add, sr.mul, sr.zero, sr.one
    by_op: List[Dict[str, List[Tuple[Tuple[int, ...], Any]]]] = [{} for _ in range(w.n_states)]
    for s, rules in enumerate(w.rules):
        for (op, children), wt in rules.items():
            by_op[s].setdefault(op, []).append((children, wt))
    trees = all_trees(w.signature, depth)
    memo: Dict[Tuple[int, Tree], Any] = {}
    for t in trees:
        for s in range(w.n_states):
            acc = zero
            for children, wt in by_op[s].get(t.op, ()):
                term = wt
                for cs, ct in zip(children, t.children):
                    term = mul(term, memo[(cs, ct)])
                    if term == zero:
                        break
                acc = add(acc, term)
            memo[(s, t)] = acc
    return TreeLanguageTable(depth, {t: memo[(x, t)] for t in trees})


def bottom_up_algebra(w: WeightedTreeAut) -> Callable[[str, Sequence[WeightVec]], WeightVec]:
    """Algebra view of a weighted tree automaton.

    The returned evaluator sends an operator and one weight vector per child
    to the vector whose x entry is the sum over rules op(x1..xn) of x of the
    rule weight times the product of the child vectors at the xi. Folding a
    tree through the evaluator and reading off coordinate x agrees with
    `wta_trace`.
    """
    require_valid(w)
    sr = w.semiring
    mul, zero = sr.mul, sr.zero
    arity = w.arity()

    def evaluator(op: str, args: Sequence[WeightVec]) -> WeightVec:
        if op not in arity:
            raise ValueError(f"unknown operator {op!r}")
        if len(args) != arity[op]:
            raise ValueError(f"operator {op!r} expects {arity[op]} arguments, got {len(args)}")
        pairs = []
        for s, rules in enumerate(w.rules):
            for (rop, children), wt in rules.items():
                if rop != op:
                    continue
                term = wt
                for i, c in enumerate(children):
                    term = mul(term, args[i](c))
                    if term == zero:
                        break
                if term != zero:
                    pairs.append((s, term))
        return WeightVec(sr, pairs)

    return evaluator


def fold_tree(evaluator: Callable[[str, Sequence[WeightVec]], WeightVec], t: Tree) -> WeightVec:
    return evaluator(t.op, [fold_tree(evaluator, c) for c in t.children])
