"""Independent reference computations the implementation is checked against.

These deliberately share no code or algorithmic shape with the package: the
word oracles walk transition relations per word, and the tree oracle
enumerates complete runs one at a time. Slow and obvious beats fast here.
"""

from fractions import Fraction
from itertools import product

from tracekit import GPS, NFA, TERM, AlternatingAut, Tree, WeightedAut, WeightedTreeAut


def nfa_accepts(n: NFA, x: int, word) -> bool:
    """Existential path search by plain recursion over the word."""
    if not word:
        return x in n.accepting
    first, rest = word[0], word[1:]
    return any(
        nfa_accepts(n, q, rest)
        for (p, a, q) in n.transitions
        if p == x and a == first
    )


def nfa_conj_value(n: NFA, x: int, word) -> bool:
    """Conjunctive reading: every successor chain must end accepting."""
    if not word:
        return x in n.accepting
    first, rest = word[0], word[1:]
    return all(
        nfa_conj_value(n, q, rest)
        for (p, a, q) in n.transitions
        if p == x and a == first
    )


def alt_accepts(a: AlternatingAut, x: int, word) -> bool:
    if not word:
        return a.outputs[x]
    first, rest = word[0], word[1:]
    i = a.alphabet.index(first)
    return any(
        all(alt_accepts(a, y, rest) for y in member)
        for member in a.trans[x][i]
    )


def wa_value(w: WeightedAut, x: int, word):
    """Sum over all paths of the product of edge weights times final output."""
    sr = w.semiring
    if not word:
        return w.out[x]
    i = w.alphabet.index(word[0])
    total = sr.zero
    for y, c in w.trans[x][i].items():
        total = sr.add(total, sr.mul(c, wa_value(w, y, word[1:])))
    return total


def gps_mass(g: GPS, x: int, word) -> Fraction:
    if not word:
        return g.dist[x].get(TERM, Fraction(0))
    first, rest = word[0], word[1:]
    total = Fraction(0)
    for key, p in g.dist[x].items():
        if key is not TERM and key[0] == first:
            total += p * gps_mass(g, key[1], rest)
    return total


def wta_runs(w: WeightedTreeAut, t: Tree):
    """Every complete run of the tree, as (root state, run weight) pairs.

    A run picks one rule at every node, with child states matching; its
    weight is the product of all chosen rule weights, top to bottom.
    """
    sr = w.semiring
    child_runs = [wta_runs(w, c) for c in t.children]
    out = []
    for x in range(w.n_states):
        for (op, children), weight in w.rules[x].items():
            if op != t.op:
                continue
            for picks in product(*child_runs):
                if any(run_x != want for (run_x, _), want in zip(picks, children)):
                    continue
                total = weight
                for _, run_w in picks:
                    total = sr.mul(total, run_w)
                out.append((x, total))
    return out


def wta_value(w: WeightedTreeAut, x: int, t: Tree):
    sr = w.semiring
    total = sr.zero
    for run_x, run_w in wta_runs(w, t):
        if run_x == x:
            total = sr.add(total, run_w)
    return total
