"""Automaton containers: construction, validation, reversal, trees."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tracekit import (
    GPS,
    LTS,
    NFA,
    NAT,
    RAT,
    TERM,
    AlternatingAut,
    MooreAut,
    Tree,
    UnknownStateError,
    ValidationError,
    WeightedAut,
    WeightedTreeAut,
    all_trees,
    format_tree,
    require_valid,
    reverse_nfa,
    tree_height,
    validate,
)
from tests.corpus import rand_nfa

import random


def test_nfa_basics():
    n = NFA(2, ["a"], [(0, "a", 0), (0, "a", 1)], accepting=[1], names=["x", "y"])
    assert validate(n) == []
    assert n.succ_sets()[0][0] == frozenset({0, 1})
    assert n.succ_masks() == [[0b11], [0b00]]
    assert n.accepting_mask() == 0b10
    assert n.names == ("x", "y")


def test_nfa_rejects_bad_references():
    n = NFA(2, ["a"], [(0, "b", 1)], accepting=[])
    assert any("label" in problem for problem in validate(n))
    n = NFA(2, ["a"], [(0, "a", 5)], accepting=[])
    with pytest.raises(ValidationError):
        require_valid(n)
    n = NFA(2, ["a"], [], accepting=[7])
    assert validate(n)


def test_default_names_and_duplicates():
    n = NFA(3, ["a"], [], accepting=[])
    assert n.names == ("q0", "q1", "q2")
    bad = NFA(2, ["a"], [], accepting=[], names=["s", "s"])
    assert any("name" in problem for problem in validate(bad))


def test_moore_total_and_step():
    even = MooreAut(["a"], [True, False], [[1], [0]], names=["e", "o"])
    assert validate(even) == []
    assert even.step(0, "aaa") == 1
    assert even.step(0, "") == 0
    partial = MooreAut(["a", "b"], [True], [[0]])
    assert any("total" in problem for problem in validate(partial))


def test_weighted_fills_missing_rows_with_zero():
    w = WeightedAut(2, ["a", "b"], NAT, [1, 0], {(0, "a"): {1: 2}})
    assert w.trans[0][1].is_zero()
    assert w.trans[1][0].is_zero()
    assert w.trans[0][0](1) == 2
    assert validate(w) == []


def test_weighted_value_typing():
    w = WeightedAut(1, ["a"], NAT, [Fraction(1, 2)], {})
    assert any("nat value" in problem for problem in validate(w))
    w = WeightedAut(1, ["a"], RAT, [Fraction(1, 2)], {(0, "a"): {0: 0.5}})
    assert any("rat value" in problem for problem in validate(w))


def test_tree_shape_and_formatting():
    t = Tree("b", (Tree("c"), Tree("u", (Tree("c"),))))
    assert format_tree(t) == "b(c,u(c))"
    assert tree_height(t) == 2
    assert tree_height(Tree("c")) == 0


def test_all_trees_counts():
    assert len(all_trees((("c", 0), ("u", 1)), 3)) == 4
    trees = all_trees((("c", 0), ("d", 0), ("b", 2)), 2)
    assert len(trees) == 38
    assert len({format_tree(t) for t in trees}) == 38
    assert all(tree_height(t) <= 2 for t in trees)


def test_wta_drops_zero_rules_and_checks_arity():
    w = WeightedTreeAut(
        1, [("b", 2), ("c", 0)], NAT, {(0, "c", ()): 3, (0, "b", (0, 0)): 0}
    )
    assert w.rules[0] == {("c", ()): 3}
    bad = WeightedTreeAut(1, [("b", 2)], NAT, {(0, "b", (0,)): 1})
    assert any("arity" in problem for problem in validate(bad))


def test_alternating_families():
    a = AlternatingAut(3, ["a"], [False, True, False], {(0, "a"): [[1], [2]]})
    assert a.trans[0][0] == frozenset({frozenset({1}), frozenset({2})})
    assert validate(a) == []
    bad = AlternatingAut(1, ["a"], [True], {(0, "a"): [[4]]})
    assert validate(bad)


def test_lts_and_gps_validation():
    l = LTS(2, ["a"], {(0, "a"): [1]})
    assert validate(l) == []
    g = GPS(1, ["a"], {0: {TERM: Fraction(1, 2), ("a", 0): Fraction(1, 2)}})
    assert validate(g) == []
    short = GPS(1, ["a"], {0: {TERM: Fraction(1, 3)}})
    assert any("sums to" in problem for problem in validate(short))
    negative = GPS(1, ["a"], {0: {TERM: Fraction(2), ("a", 0): Fraction(-1)}})
    assert validate(negative)


def test_unknown_state_queries():
    n = NFA(2, ["a"], [], accepting=[])
    with pytest.raises(UnknownStateError):
        reverse_nfa(n, [5])


def test_reverse_swaps_roles():
    n = NFA(3, ["a", "b"], [(0, "a", 1), (1, "b", 2)], accepting=[2], names=list("xyz"))
    rev, rev_init = reverse_nfa(n, [0])
    assert rev.accepting == frozenset({0})
    assert rev_init == frozenset({2})
    assert (1, "a", 0) in rev.transitions and (2, "b", 1) in rev.transitions


@given(st.integers(0, 2**32 - 1))
def test_reverse_is_an_involution(seed):
    n = rand_nfa(random.Random(seed))
    initial = frozenset({0})
    rev, rev_init = reverse_nfa(n, initial)
    back, back_init = reverse_nfa(rev, rev_init)
    assert back.transitions == n.transitions
    assert back.accepting == n.accepting
    assert back_init == initial
