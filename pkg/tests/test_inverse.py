import random

from hypothesis import assume, given, settings

from modalinv.automaton import build_automaton, inactive_closure, is_empty
from modalinv.corpus import random_nnf
from modalinv.formula import And, Atom, Not, parse
from modalinv.inverse import (AND_L, AND_R, AX, AXIOM, DIA_RULE, OR_RULE,
                              SaturationConfig, axioms, concretization, decide,
                              format_trace, saturate, validate_record)
from modalinv.optimize import GOrdering, build_g_ordering
from modalinv.paths import build_path_table
from modalinv.verdict import INCONCLUSIVE, SAT, UNSAT

from conftest import mask, nnf_formulas

REFUTATION = [(mask(5, 6, 7), OR_RULE), (mask(1, 3, 4), DIA_RULE), (mask(1, 2, 3), AND_R),
        (mask(1, 2), AND_L), (mask(0, 1), AND_R), (mask(0), AND_L)]
ID_ORDER = GOrdering(tuple(range(10)))


def test_axioms():
    assert axioms(build_path_table(parse("<>~p1 & ([]p2 & [](~p2 | p1))"))) == [
        mask(6, 8), mask(5, 9)]
    assert axioms(build_path_table(Atom("p1"))) == []
    assert axioms(build_path_table(And(Atom("p1"), Not(Atom("p1"))))) == [mask(1, 2)]


def _rule_of(closure, s):
    return closure.records[closure.ids[s]].rule


def test_plain_closure_contains_refutation_chain(t_star):
    c = saturate(t_star)
    assert all(s in c for s, _ in REFUTATION)
    assert len(c) == 18


def test_optimized_closure_keeps_refutation_chain(t_star):
    c = saturate(t_star, SaturationConfig(ordering=ID_ORDER))
    for s, rule in REFUTATION:
        assert s in c and _rule_of(c, s) == rule
    # nothing else is needed: the two axioms plus the chain
    assert len(c) == 8
    assert c.stats.get("filtered", 0) == 0


def test_literal_closure_empty():
    c = saturate(build_path_table(Atom("p1")))
    assert len(c) == 0 and c.complete


def test_decide_g_star(t_star):
    v = decide(t_star)
    assert v.status == UNSAT
    rules = [r.rule for r in v.trace if r.rule != AXIOM]
    assert sorted(rules) == sorted(r for _, r in REFUTATION)
    v = decide(t_star, SaturationConfig(ordering=ID_ORDER))
    assert [r.rule for r in v.trace if r.rule != AXIOM] == [r for _, r in REFUTATION]


def test_trace_format(t_star):
    v = decide(t_star, SaturationConfig(ordering=ID_ORDER))
    lines = format_trace(v.trace, v.proof).splitlines()
    assert lines[0] == "0 <- axiom(; pi=-) : {6 8}"
    assert lines[2] == "2 <- or(0 1; pi=7) : {5 6 7}"
    assert lines[-1] == "7 <- and_l(6; pi=0) : {0}"


def test_decide_literal():
    assert decide(build_path_table(Atom("p1"))).status == SAT


def test_axiom_mode_two_steps():
    t = build_path_table(Atom("p1"), Not(Atom("p1")))
    v = decide(t)
    assert v.status == UNSAT
    assert [(r.rule, v.proof.sequents[r.conclusion]) for r in v.trace] == [
        (AXIOM, mask(0, 1)), (AX, mask(0))]


def test_concretization_examples(t_star):
    red = build_automaton(t_star, reduced=True)
    got = {red.states[q] for q in concretization([mask(5, 6, 7)], red)}
    assert got == {mask(5, 6, 7, 8), mask(5, 6, 7, 9)}
    full = build_automaton(t_star)
    assert concretization([0], full) == set(range(len(full)))
    clash = {q for q in range(len(full)) if full.clash[q]}
    assert concretization(axioms(t_star), full) == clash


def test_budget_gives_inconclusive(t_star):
    v = decide(t_star, SaturationConfig(max_sequents=3))
    assert v.status == INCONCLUSIVE
    v = decide(t_star, SaturationConfig(max_inferences=2))
    assert v.status == INCONCLUSIVE


def _small_formulas(n, seed, max_paths=12, depth=3):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        g = random_nnf(rng, atoms=("p", "q"), depth=depth)
        if len(build_path_table(g)) <= max_paths:
            out.append(g)
    return out


def test_records_validate():
    for g in _small_formulas(60, 3):
        t = build_path_table(g)
        for cfg in (SaturationConfig(), SaturationConfig(ordering=build_g_ordering(t))):
            c = saturate(t, cfg)
            assert all(validate_record(rec, c) for rec in c.records)


def test_propositional_steps_add_no_states():
    """An and/or step never enlarges the concretization of what is kept."""
    for g in _small_formulas(60, 4):
        t = build_path_table(g)
        a = build_automaton(t)
        c = saturate(t)
        covered = set()
        for rec in c.records:
            new = concretization([c.sequents[rec.conclusion]], a)
            if rec.rule in (AND_L, AND_R, OR_RULE):
                assert new <= covered
            covered |= new


def test_validator_rejects_tampering(t_star):
    c = saturate(t_star)
    rec = next(r for r in c.records if r.rule == OR_RULE)
    from dataclasses import replace
    assert not validate_record(replace(rec, pi=0), c)
    assert not validate_record(replace(rec, rule=AND_L), c)


def test_queue_discipline_does_not_change_closure():
    for g in _small_formulas(40, 5):
        t = build_path_table(g)
        for ordering in (None, build_g_ordering(t)):
            fifo = saturate(t, SaturationConfig(ordering=ordering, queue="fifo"))
            lifo = saturate(t, SaturationConfig(ordering=ordering, queue="lifo"))
            assert set(fifo.sequents) == set(lifo.sequents)


# verdicts are compared on complete closures only; the unordered calculus
# can exceed the default inference budget on disjunction-heavy inputs
ROOMY = SaturationConfig(max_inferences=1 << 32)


@settings(max_examples=150, deadline=None)
@given(nnf_formulas(max_leaves=7))
def test_inactive_states_equal_concretization(g):
    t = build_path_table(g)
    assume(len(t) <= 12)
    a = build_automaton(t)
    c = saturate(t, ROOMY)
    assert c.complete
    assert len(c) <= 2 ** len(t)
    assert concretization(c, a) == inactive_closure(a).inactive
    assert (decide(t, ROOMY).status == UNSAT) == is_empty(a)


@settings(max_examples=150, deadline=None)
@given(nnf_formulas(atoms=("p", "q", "r"), max_leaves=9))
def test_optimized_calculus_agrees(g):
    t = build_path_table(g)
    plain = decide(t, ROOMY).status
    opt = decide(t, SaturationConfig(ordering=build_g_ordering(t))).status
    assert plain == opt


@settings(max_examples=60, deadline=None)
@given(nnf_formulas(max_leaves=4), nnf_formulas(max_leaves=3))
def test_axiom_mode_matches_automaton(g, h):
    t = build_path_table(g, h)
    assume(len(t) <= 12)
    a = build_automaton(t)
    assert (decide(t, ROOMY).status == UNSAT) == is_empty(a)
    # the correspondence holds away from the always-active empty state
    c = saturate(t, ROOMY)
    conc = concretization(c, a)
    inactive = inactive_closure(a).inactive
    assert {q for q in conc ^ inactive if a.states[q] != 0} == set()


def test_stop_on_goal_keeps_verdict():
    for g in _small_formulas(40, 9):
        t = build_path_table(g)
        full = decide(t).status
        assert decide(t, SaturationConfig(stop_on_goal=True)).status == full


def test_subsumption_keeps_verdict():
    for g in _small_formulas(40, 13):
        t = build_path_table(g)
        assert decide(t, SaturationConfig(subsumption=True)).status == decide(t).status
