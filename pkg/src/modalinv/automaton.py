"""Explicit formula automata and the looping-automaton emptiness test.

States are the propositionally expanded subsets of the path table.  A
clash-free state's transitions are stored per diamond index as a *bucket*:
the set of expansions of the corresponding box seed.  The transition
relation is the product of the buckets, which is never materialised: a
state is inactive as soon as one bucket consists of inactive states only.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import compress

import numpy as np

from .expansion import expansions
from .optimize import conflict_masks
from .paths import PathTable, format_set, members
from .verdict import SAT, UNSAT, Verdict

DEFAULT_MAX_PATHS = 16


class AutomatonTooLarge(ValueError):
    pass


@dataclass
class FormulaAutomaton:
    table: PathTable
    states: list[int]
    index: dict[int, int]
    clash: list[bool]
    initial: list[int]
    arity: int
    # distinct buckets, and per state the position of each of its buckets
    # in that list (``bucket_ids[q][i - 1]`` for diamond index i)
    bucket_table: list[tuple]
    bucket_ids: list[tuple]
    reduced: bool = False

    def __len__(self):
        return len(self.states)

    @property
    def buckets(self) -> list[list[tuple]]:
        """Per state, its buckets in diamond order (empty for clash states)."""
        bt = self.bucket_table
        return [[bt[b] for b in row] for row in self.bucket_ids]


@dataclass
class InactiveClosure:
    inactive: set[int] = field(default_factory=set)
    # (state id, witnessing bucket index or None for a clash state)
    log: list[tuple] = field(default_factory=list)


def _pe_states(t: PathTable) -> np.ndarray:
    n = len(t)
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    for p, kids in t.and_kids.items():
        has = (masks >> p) & 1 == 1
        ok &= ~has | ((masks & kids) == kids)
    for p, kids in t.or_kids.items():
        has = (masks >> p) & 1 == 1
        ok &= ~has | ((masks & kids) != 0)
    if t.axiom:
        ok &= (masks == 0) | ((masks >> t.axiom_root) & 1 == 1)
    return masks[ok]


def _redundant_flags(masks: np.ndarray, t: PathTable) -> np.ndarray:
    bad = np.zeros(masks.shape, dtype=bool)
    for p, conf in enumerate(conflict_masks(t)):
        if conf:
            bad |= ((masks >> p) & 1 == 1) & ((masks & conf) != 0)
    return bad


def _seeds(masks: np.ndarray, t: PathTable) -> np.ndarray:
    """Box seed of every state for every diamond, one column per diamond."""
    bodies = np.zeros(masks.shape, dtype=np.int64)
    for p in members(t.box_mask):
        bodies |= np.where((masks >> p) & 1 == 1, 1 << t.children[p][0], 0)
    cols = [np.where((masks >> d) & 1 == 1, bodies | (1 << t.children[d][0]), 0)
            for d in t.diamonds]
    return np.stack(cols, axis=1) if cols else np.zeros((len(masks), 0), dtype=np.int64)


def build_automaton(t: PathTable, reduced: bool = False,
                    max_paths: int = DEFAULT_MAX_PATHS) -> FormulaAutomaton:
    """Construct the formula automaton (optionally with redundant states removed)."""
    if len(t) > max_paths:
        raise AutomatonTooLarge(
            f"{len(t)} paths exceed the explicit-construction bound of {max_paths}; "
            "use the inverse engine instead")
    if reduced and t.axiom:
        raise ValueError("the reduced automaton is only defined without a global axiom")
    masks = _pe_states(t)
    if reduced:
        masks = masks[~_redundant_flags(masks, t)]
    clash = np.zeros(masks.shape, dtype=bool)
    for pos, neg in t.clash_pairs:
        clash |= ((masks & pos) != 0) & ((masks & neg) != 0)
    states = masks.tolist()
    index = {m: i for i, m in enumerate(states)}
    arity = len(t.diamonds)
    seeds = _seeds(masks[~clash], t)
    uniq, inverse = np.unique(seeds, return_inverse=True)
    bucket_table = [tuple(sorted(index[e] for e in expansions(int(seed), t) if e in index))
                    for seed in uniq]
    rows = iter(inverse.reshape(seeds.shape).tolist())
    bucket_ids = [() if c else tuple(next(rows)) for c in clash.tolist()]
    initial = sorted(index[e] for e in expansions(1 << t.root, t) if e in index)
    return FormulaAutomaton(t, states, index, clash.tolist(), initial, arity,
                            bucket_table, bucket_ids, reduced)


def inactive_closure(a: FormulaAutomaton) -> InactiveClosure:
    """Least set containing the dead states and closed under: a state is
    inactive once some bucket of it holds inactive states only.

    A bucket's status does not depend on the state owning it, so the
    propagation runs over the distinct buckets: each keeps a counter of
    members not yet known to be inactive and a list of owning states.
    Linear in the total size of the distinct buckets plus states x arity.
    """
    clash = a.clash
    dead = list(compress(range(len(clash)), clash))
    out = InactiveClosure(set(dead), [(sid, None) for sid in dead])
    inactive, log = out.inactive, out.log
    bt = a.bucket_table
    owners: list[list[int]] = [[] for _ in bt]
    for sid, row in enumerate(a.bucket_ids):
        for b in set(row):
            owners[b].append(sid)
    # clash members are inactive from the start, so they are not counted
    remaining = [0] * len(bt)
    watchers: dict[int, list[int]] = defaultdict(list)
    for b, members in enumerate(bt):
        for m in members:
            if not clash[m]:
                remaining[b] += 1
                watchers[m].append(b)
    queue = []

    def kill(b):
        for sid in owners[b]:
            if sid not in inactive:
                inactive.add(sid)
                log.append((sid, a.bucket_ids[sid].index(b)))
                queue.append(sid)

    for b, n in enumerate(remaining):
        if n == 0:
            kill(b)
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for b in watchers[x]:
            remaining[b] -= 1
            if remaining[b] == 0:
                kill(b)
    return out


def naive_inactive_closure(a: FormulaAutomaton) -> set[int]:
    """Iterate-until-stable version of :func:`inactive_closure`."""
    inactive = {sid for sid in range(len(a)) if a.clash[sid]}
    buckets = a.buckets
    changed = True
    while changed:
        changed = False
        for sid in range(len(a)):
            if sid in inactive:
                continue
            if any(all(m in inactive for m in b) for b in buckets[sid]):
                inactive.add(sid)
                changed = True
    return inactive


def is_empty(a: FormulaAutomaton, closure: InactiveClosure | None = None) -> bool:
    closure = closure or inactive_closure(a)
    return all(q in closure.inactive for q in a.initial)


def decide_automaton(t: PathTable, reduced: bool = False,
                     max_paths: int = DEFAULT_MAX_PATHS) -> Verdict:
    """Satisfiable iff some initial state is active."""
    started = time.perf_counter()
    a = build_automaton(t, reduced=reduced, max_paths=max_paths)
    closure = inactive_closure(a)
    stats = {"states": len(a), "inactive": len(closure.inactive),
             "ms": (time.perf_counter() - started) * 1000.0}
    return Verdict(UNSAT if is_empty(a, closure) else SAT, "automata", stats)


def dump_automaton(a: FormulaAutomaton) -> str:
    lines = [f"states={len(a)} arity={a.arity} reduced={int(a.reduced)}"]
    init = set(a.initial)
    buckets = a.buckets
    for sid, s in enumerate(a.states):
        lines.append(f"state {sid} {format_set(s)} clash={int(a.clash[sid])} "
                     f"initial={int(sid in init)}")
        for i, b in enumerate(buckets[sid], start=1):
            lines.append(f"bucket {i}: {{{' '.join(map(str, b))}}}")
    return "\n".join(lines) + "\n"
