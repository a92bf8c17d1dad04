import pytest

from modalinv.engines import (ENGINES, Budget, EngineRefused, counts, cross_check,
                              deep_check, minimize, report_line, run_engine)
from modalinv.automaton import build_automaton, inactive_closure
from modalinv.formula import And, Atom, Dia, Not, atoms, parse, size
from modalinv.inverse import concretization, saturate
from modalinv.paths import build_path_table
from modalinv.verdict import INCONCLUSIVE, SAT, UNSAT

from conftest import G_STAR_TEXT


@pytest.mark.parametrize("engine", ENGINES)
def test_all_engines_on_g_star(engine):
    assert run_engine(engine, parse(G_STAR_TEXT)).status == UNSAT


@pytest.mark.parametrize("engine", ["inverse", "inverse-opt", "automata", "type-elim"])
def test_axiom_mode_engines(engine):
    assert run_engine(engine, Atom("p1"), Not(Atom("p1"))).status == UNSAT
    assert run_engine(engine, Atom("p1"), Atom("p1")).status == SAT


def test_tableau_refuses_axiom():
    with pytest.raises(EngineRefused):
        run_engine("tableau", Atom("p"), Atom("p"))
    with pytest.raises(EngineRefused):
        run_engine("nope", Atom("p"))


def test_budget_reaches_engine():
    v = run_engine("inverse", parse(G_STAR_TEXT), budget=Budget(max_sequents=2))
    assert v.status == INCONCLUSIVE


def test_report_line():
    v = run_engine("inverse-opt", parse(G_STAR_TEXT), stop_on_goal=False)
    assert counts(v) == (8, 8)
    assert report_line(v, "g.k", timing=False) == (
        "file=g.k engine=inverse-opt verdict=UNSAT seqs=8 infs=8")
    assert report_line(v).startswith("engine=inverse-opt verdict=UNSAT seqs=8 infs=8 ms=")


def test_cross_check_g_star():
    cc = cross_check(parse(G_STAR_TEXT), deep=True)
    assert cc.agree and cc.status == UNSAT
    assert list(cc.verdicts) == ["inverse", "inverse-opt", "automata", "tableau"]
    assert cc.deep_checks == 1 and cc.deep_mismatch == []


def test_cross_check_axiom():
    cc = cross_check(Atom("p1"), Atom("p1"), deep=True)
    assert cc.agree and cc.status == SAT
    assert list(cc.verdicts) == ["inverse", "automata", "type-elim"]


def test_deep_check_axiom_mode_ignores_empty_state():
    # the axiom is contradictory, so the empty sequent is derived; its
    # concretization contains the empty state, which stays active
    g, h = Dia(Atom("p")), And(Atom("q"), Not(Atom("q")))
    t = build_path_table(g, h)
    a = build_automaton(t)
    raw = concretization(saturate(t), a) ^ inactive_closure(a).inactive
    assert raw == {a.index[0]}
    assert deep_check(g, h) == []


def test_cross_check_skips_large_automaton():
    g = parse(" & ".join(f"(p{i} | q{i})" for i in range(6)))
    cc = cross_check(g, deep=True)
    assert "automata" in cc.skipped and cc.deep_checks == 0
    assert cc.agree and cc.status == SAT


def test_minimize_shrinks_while_predicate_holds():
    g = parse("(a | <>b) & ([]c | (d & ~d))")
    bad = lambda f: "d" in atoms(f)      # noqa: E731
    small = minimize(g, bad)
    assert bad(small) and size(small) < size(g)
    assert small in (Atom("d"), Not(Atom("d")))
