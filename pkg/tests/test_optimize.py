import random

import pytest
from hypothesis import given, settings

from modalinv.corpus import random_nnf
from modalinv.expansion import CompactnessViolation, expansions
from modalinv.formula import parse
from modalinv.optimize import (GOrdering, are_brothers, build_g_ordering,
                               check_g_ordering, is_compact, is_diamond_separated,
                               is_vee_fork, redundant, select_succ, unexpanded)
from modalinv.paths import build_path_table

from conftest import mask, nnf_formulas

ID_ORDER = GOrdering(tuple(range(10)))   # nu9 > nu8 > ... > nu0
REFUTATION_CHAIN = [mask(5, 6, 7), mask(1, 3, 4), mask(1, 2, 3), mask(1, 2), mask(0, 1), mask(0)]


def test_vee_fork(t_star):
    assert is_vee_fork(8, 9, t_star)
    assert not is_vee_fork(1, 2, t_star)
    assert not is_vee_fork(8, 8, t_star)


def test_diamond_separated(t_star):
    t = build_path_table(parse("<>p1 & <>p2"))
    a, b = (t.words.index(w) for w in [("e", "al", "dia"), ("e", "ar", "dia")])
    assert is_diamond_separated(a, b, t)
    assert not is_diamond_separated(5, 9, t_star)
    assert not is_diamond_separated(5, 5, t_star)


def test_redundant(t_star):
    assert redundant(mask(0, 5), t_star)
    assert not any(redundant(s, t_star) for s in REFUTATION_CHAIN)
    assert not redundant(0, t_star)
    assert redundant(mask(8, 9), t_star)


def test_brothers(t_star):
    assert are_brothers(1, 2, t_star)
    assert are_brothers(3, 4, t_star)
    assert not are_brothers(1, 3, t_star)
    assert are_brothers(8, 9, t_star)
    assert not are_brothers(1, 1, t_star)


def test_built_ordering_g_star(t_star):
    o = build_g_ordering(t_star)
    assert o.order == tuple(range(10))
    assert check_g_ordering(o, t_star)


def test_check_ordering_examples(t_star):
    assert check_g_ordering(ID_ORDER, t_star)
    assert not check_g_ordering(GOrdering(tuple(reversed(range(10)))), t_star)
    single = build_path_table(parse("p1"))
    assert build_g_ordering(single).order == (0,)
    assert check_g_ordering(build_g_ordering(single), single)
    # not a permutation
    assert not check_g_ordering(GOrdering((0, 1, 2)), t_star)


def test_brother_adjacency_is_checked():
    t = build_path_table(parse("(a | b) & c"))
    o = build_g_ordering(t)
    assert check_g_ordering(o, t)
    # move something between the or-brothers
    order = list(o.order)
    lo, hi = sorted(order.index(c) for c in t.children[t.words.index(("e", "al"))])
    assert hi == lo + 1
    order.insert(hi, order.pop(0))
    assert not check_g_ordering(GOrdering(tuple(order)), t)


def test_select_succ_examples(t_star):
    assert select_succ(mask(0), ID_ORDER, t_star) == 0
    assert select_succ(mask(0, 1, 2), ID_ORDER, t_star) == 2
    with pytest.raises(ValueError):
        select_succ(mask(0, 1, 2, 3, 4), ID_ORDER, t_star)


def test_select_succ_two_disjunctions():
    t = build_path_table(parse("(p | q) & (r | s)"))
    o = build_g_ordering(t)
    s = mask(0, 1, 2)
    got = select_succ(s, o, t)
    cands = unexpanded(s, t)
    assert got in cands
    low = min(cands, key=lambda p: min(o.rank[c] for c in t.children[p]))
    assert got == low


def test_is_compact_examples(t_star):
    assert is_compact(mask(0), ID_ORDER, t_star)
    assert is_compact(mask(0, 1, 2, 3, 4), ID_ORDER, t_star)
    assert not is_compact(mask(0, 8), ID_ORDER, t_star)


@settings(max_examples=100, deadline=None)
@given(nnf_formulas(atoms=("p", "q", "r"), max_leaves=10))
def test_built_orderings_are_valid(g):
    t = build_path_table(g)
    assert check_g_ordering(build_g_ordering(t), t)


def test_ordered_expansion_trees_stay_compact():
    rng = random.Random(7)
    for _ in range(40):
        t = build_path_table(random_nnf(rng, depth=3))
        o = build_g_ordering(t)
        seeds = {1 << t.root}
        for s in expansions(1 << t.root, t):
            for d in t.diamonds:
                if s >> d & 1:
                    seeds.add((1 << t.children[d][0]) | sum(
                        1 << t.children[b][0] for b in range(len(t))
                        if t.kinds[b] == "box" and s >> b & 1))
        for seed in seeds:
            assert is_compact(seed, o, t)
            ordered = expansions(seed, t, ordering=o, check_compact=True)
            assert ordered == expansions(seed, t)


def test_compactness_violation_raised(t_star):
    with pytest.raises(CompactnessViolation):
        expansions(mask(0, 8), t_star, ordering=ID_ORDER, check_compact=True)
