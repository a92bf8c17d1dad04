"""Satisfiability for modal logic K: path tables, formula automata and the
inverse method, with independent tableau and type-elimination oracles."""

from .automaton import (FormulaAutomaton, build_automaton, decide_automaton,
                        inactive_closure, is_empty)
from .engines import ENGINES, cross_check, run_engine
from .expansion import box_seed, contains_clash, expansions, is_prop_expanded
from .formula import ParseError, parse, render, to_nnf
from .inverse import SaturationConfig, concretization, decide, saturate
from .optimize import build_g_ordering, check_g_ordering, redundant, select_succ
from .oracle import KripkeModel, check_model, decide_tableau, decide_type_elimination
from .paths import PathTable, build_path_table
from .verdict import ERROR, INCONCLUSIVE, SAT, UNSAT, Verdict

__all__ = [
    "ENGINES", "ERROR", "INCONCLUSIVE", "SAT", "UNSAT",
    "FormulaAutomaton", "KripkeModel", "ParseError", "PathTable",
    "SaturationConfig", "Verdict",
    "box_seed", "build_automaton", "build_g_ordering", "build_path_table",
    "check_g_ordering", "check_model", "concretization", "contains_clash",
    "cross_check", "decide", "decide_automaton", "decide_tableau",
    "decide_type_elimination", "expansions", "inactive_closure", "is_empty",
    "is_prop_expanded", "parse", "redundant", "render", "run_engine",
    "saturate", "select_succ", "to_nnf",
]
