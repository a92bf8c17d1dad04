"""Engine dispatch, run reports and cross-checking.

Every engine takes NNF formulas ``g`` and optional global axiom ``h`` and
returns a :class:`~modalinv.verdict.Verdict`.  :func:`cross_check` runs all
engines that apply to an input and compares their verdicts; the deep check
also compares the inactive states of the explicit automaton with the
states represented by the plain inverse closure.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .automaton import (AutomatonTooLarge, DEFAULT_MAX_PATHS, build_automaton,
                        decide_automaton, inactive_closure)
from .formula import Formula, children, is_literal
from .inverse import SaturationConfig, concretization, decide, saturate
from .optimize import build_g_ordering
from .oracle import ClosureTooLarge, decide_tableau, decide_type_elimination
from .paths import build_path_table
from .verdict import ERROR, INCONCLUSIVE, Verdict

ENGINES = ("inverse", "inverse-opt", "automata", "tableau", "type-elim")
PLAIN_XCHECK = ("inverse", "inverse-opt", "automata", "tableau")
AXIOM_XCHECK = ("inverse", "automata", "type-elim")


class EngineRefused(ValueError):
    """The engine cannot handle this input (as opposed to failing on it)."""


@dataclass
class Budget:
    max_sequents: int = 1 << 20
    max_inferences: int = 1 << 24


def run_engine(name: str, g: Formula, h: Formula | None = None,
               budget: Budget | None = None, stop_on_goal: bool = True) -> Verdict:
    budget = budget or Budget()
    started = time.perf_counter()
    if name in ("inverse", "inverse-opt"):
        t = build_path_table(g, h)
        cfg = SaturationConfig(max_sequents=budget.max_sequents,
                               max_inferences=budget.max_inferences,
                               stop_on_goal=stop_on_goal)
        # the ordered calculus is only used without a global axiom
        if name == "inverse-opt" and h is None:
            cfg.ordering = build_g_ordering(t)
        v = decide(t, cfg, engine=name)
    elif name == "automata":
        v = decide_automaton(build_path_table(g, h))
    elif name == "tableau":
        if h is not None:
            raise EngineRefused("tableau does not support a global axiom; use type-elim")
        v = decide_tableau(g)
    elif name == "type-elim":
        v = decide_type_elimination(g, h)
    else:
        raise EngineRefused(f"unknown engine {name!r}")
    v.stats["ms"] = (time.perf_counter() - started) * 1000.0
    return v


def counts(v: Verdict) -> tuple[int, int]:
    """(sequents or states generated, inferences applied) for a report line."""
    s = v.stats
    if v.engine.startswith("inverse"):
        return s.get("kept", 0), s.get("attempted", 0)
    if v.engine == "automata":
        return s.get("states", 0), s.get("inactive", 0)
    if v.engine == "tableau":
        return s.get("labels", 0), 0
    if v.engine == "type-elim":
        return s.get("types", 0), s.get("rounds", 0)
    return 0, 0


def report_line(v: Verdict, name: str | None = None, timing: bool = True) -> str:
    seqs, infs = counts(v)
    head = f"file={name} " if name is not None else ""
    line = f"{head}engine={v.engine} verdict={v.status} seqs={seqs} infs={infs}"
    if timing:
        line += f" ms={v.stats.get('ms', 0.0):.1f}"
    return line


def error_verdict(engine: str, exc: Exception) -> Verdict:
    return Verdict(ERROR, engine, {"error": str(exc)})


@dataclass
class CrossCheck:
    verdicts: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)   # engine -> reason
    deep_checks: int = 0
    deep_mismatch: list = field(default_factory=list)  # automaton states

    @property
    def statuses(self) -> set:
        return {v.status for v in self.verdicts.values()}

    @property
    def agree(self) -> bool:
        decided = self.statuses - {INCONCLUSIVE}
        return len(decided) == 1 and not self.deep_mismatch and ERROR not in decided

    @property
    def status(self) -> str:
        decided = self.statuses - {INCONCLUSIVE}
        return decided.pop() if len(decided) == 1 else INCONCLUSIVE


def deep_check(g: Formula, h: Formula | None = None,
               max_paths: int = DEFAULT_MAX_PATHS) -> list[int]:
    """Automaton states on which the inactive set and the concretization of
    the plain closure differ (empty list when they coincide).

    With a global axiom the empty state is left out: it is always active,
    yet it lies in the concretization of the empty sequent.
    """
    t = build_path_table(g, h)
    a = build_automaton(t, max_paths=max_paths)
    inactive = inactive_closure(a).inactive
    conc = concretization(saturate(t), a)
    diff = inactive ^ conc
    if t.axiom:
        diff = {q for q in diff if a.states[q] != 0}
    return sorted(diff)


def cross_check(g: Formula, h: Formula | None = None, deep: bool = False,
                budget: Budget | None = None) -> CrossCheck:
    out = CrossCheck()
    for name in (PLAIN_XCHECK if h is None else AXIOM_XCHECK):
        try:
            out.verdicts[name] = run_engine(name, g, h, budget)
        except (AutomatonTooLarge, ClosureTooLarge, EngineRefused) as exc:
            out.skipped[name] = str(exc)
    if deep and "automata" not in out.skipped:
        out.deep_checks = 1
        out.deep_mismatch = deep_check(g, h)
    return out


def _shrinks(f: Formula):
    """Formulas obtained from *f* by replacing one subformula by a child."""
    if is_literal(f):
        return
    cs = children(f)
    yield from cs
    for i, c in enumerate(cs):
        for r in _shrinks(c):
            parts = list(cs)
            parts[i] = r
            yield type(f)(*parts)


def minimize(g: Formula, bad) -> Formula:
    """Greedy shrinking of *g* while ``bad(g)`` stays true."""
    changed = True
    while changed:
        changed = False
        for cand in _shrinks(g):
            if bad(cand):
                g, changed = cand, True
                break
    return g
