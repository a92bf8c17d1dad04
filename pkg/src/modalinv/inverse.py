"""Saturation under the inverse path calculus.

Rules, read bottom-up from premises to conclusion (``G`` is a set of paths):

    or     G_l, p.ol   G_r, p.or   =>  G_l, G_r, p
    and_l  G, p.al                 =>  G, p
    and_r  G, p.ar                 =>  G, p
    dia    Gbox, p.dia             =>  G, p      (G: box paths, Gbox their bodies)
    dia+   Gbox                    =>  G, p      (p any diamond path)
    ax     G, eH                   =>  G         (global-axiom mode only)

Axioms are the two-element clashes.  In every rule the context ``G`` is the
premise minus the principal path.  With an ordering the propositional rules
only fire when the principal child outranks the rest of its premise, and
conclusions that are redundant (see :mod:`modalinv.optimize`) are dropped.
"""

from __future__ import annotations

import time
from collections import defaultdict, deque
from dataclasses import dataclass, field

import numpy as np

from .automaton import FormulaAutomaton
from .optimize import GOrdering, conflict_masks
from .paths import DIA, PathTable, format_set, members
from .verdict import INCONCLUSIVE, SAT, UNSAT, Verdict

AXIOM, OR_RULE, AND_L, AND_R, DIA_RULE, DIA_PLUS, AX = (
    "axiom", "or", "and_l", "and_r", "dia", "dia+", "ax")


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class InferenceRecord:
    rule: str
    premises: tuple
    pi: int | None
    conclusion: int

    def format(self, closure: "Closure") -> str:
        prem = " ".join(map(str, self.premises))
        pi = "-" if self.pi is None else self.pi
        return (f"{self.conclusion} <- {self.rule}({prem}; pi={pi}) : "
                f"{format_set(closure.sequents[self.conclusion])}")


@dataclass
class SaturationConfig:
    ordering: GOrdering | None = None
    filters: bool | None = None          # defaults to "on" iff an ordering is given
    subsumption: bool = False
    max_sequents: int = 1 << 20
    max_inferences: int = 1 << 24
    queue: str = "fifo"
    stop_on_goal: bool = False

    @property
    def use_filters(self) -> bool:
        return self.ordering is not None if self.filters is None else self.filters


@dataclass
class Closure:
    table: PathTable
    sequents: list[int] = field(default_factory=list)
    ids: dict[int, int] = field(default_factory=dict)
    records: list[InferenceRecord] = field(default_factory=list)
    stats: dict = field(default_factory=lambda: defaultdict(int))
    complete: bool = True

    def __contains__(self, s) -> bool:
        return s in self.ids

    def __len__(self):
        return len(self.sequents)

    def goals(self) -> list[int]:
        """Kept sequents that decide unsatisfiability."""
        t = self.table
        cands = [1 << t.root] + ([0] if t.axiom else [])
        return [self.ids[c] for c in cands if c in self.ids]

    def trace(self, sid: int) -> list[InferenceRecord]:
        """Records of *sid* and all its transitive premises, oldest first."""
        seen, stack = set(), [sid]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(self.records[x].premises)
        return [self.records[x] for x in sorted(seen)]


def axioms(t: PathTable) -> list[int]:
    """All two-element clash sequents, in ascending order."""
    out = set()
    for pos, neg in t.clash_pairs:
        for a in members(pos):
            for b in members(neg):
                out.add((1 << a) | (1 << b))
    return sorted(out)


class _Partners:
    """Processed sequents holding a given or-child, with that child removed.

    The bodies are mirrored in a numpy array so that long partner lists can
    be combined with a new premise in one vector operation.
    """

    __slots__ = ("sids", "bodies", "array")

    def __init__(self):
        self.sids: list[int] = []
        self.bodies: list[int] = []
        self.array = np.empty(16, dtype=np.int64)

    def append(self, sid: int, body: int) -> None:
        k = len(self.sids)
        if k == len(self.array):
            self.array = np.resize(self.array, 2 * k)
        self.array[k] = body
        self.sids.append(sid)
        self.bodies.append(body)


# above this many paths the bitmap of derived sequents is not kept
_BITMAP_PATHS = 22
_VECTOR_MIN = 24


class _Rules:
    """Per-table lookup tables for rule matching."""

    def __init__(self, t: PathTable):
        self.parent = t.parents
        self.last = [t.last_symbol(p) for p in range(len(t))]
        self.sibling = [-1] * len(t)
        for p, kids in t.or_kids.items():
            a, b = t.children[p]
            self.sibling[a], self.sibling[b] = b, a
        self.box_kids = sum(1 << p for p in range(len(t)) if self.last[p] == "box")
        self.dia_kids = sum(1 << p for p in range(len(t)) if self.last[p] == "dia")
        self.diamonds = [p for p in range(len(t)) if t.kinds[p] == DIA]
        self.diamonds_by_ml = defaultdict(list)
        for p in self.diamonds:
            self.diamonds_by_ml[t.modal_lengths[p]].append(p)


def saturate(t: PathTable, cfg: SaturationConfig | None = None) -> Closure:
    """Fair worklist fixpoint of the (optionally ordered) inverse calculus."""
    cfg = cfg or SaturationConfig()
    rules = _Rules(t)
    rank = cfg.ordering.rank if cfg.ordering is not None else None
    filters = cfg.use_filters
    conflicts = conflict_masks(t) if filters else None
    axiom_root = t.axiom_root
    goal_masks = {1 << t.root} | ({0} if t.axiom else set())
    closure = Closure(t)
    stats = closure.stats
    seqs, ids, records = closure.sequents, closure.ids, closure.records
    queue = deque()
    pop = queue.popleft if cfg.queue == "fifo" else queue.pop
    # path id -> processed sequents that may serve as or-premise on that path
    partners: dict[int, _Partners] = defaultdict(_Partners)
    seen = np.zeros(1 << len(t), dtype=bool) if len(t) <= _BITMAP_PATHS else None
    started = time.perf_counter()

    def is_redundant(s: int) -> bool:
        for p in members(s):
            if conflicts[p] & s:
                return True
        return False

    attempted = rederived = 0
    max_inf = cfg.max_inferences

    def add(s: int, rule: str, premises: tuple, pi) -> None:
        # callers have already counted the attempt and ruled out re-derivation
        if filters and is_redundant(s):
            stats["filtered"] += 1
            return
        if cfg.subsumption and any(k & s == k for k in seqs):
            stats["subsumed"] += 1
            return
        if len(seqs) >= cfg.max_sequents:
            raise BudgetExceeded("sequent budget exceeded")
        sid = len(seqs)
        seqs.append(s)
        ids[s] = sid
        if seen is not None:
            seen[s] = True
        records.append(InferenceRecord(rule, premises, pi, sid))
        queue.append(sid)

    def over_budget():
        raise BudgetExceeded("inference budget exceeded")

    def principal_candidates(s: int):
        if rank is None:
            return members(s)
        top = max(members(s), key=rank.__getitem__)
        return (top,)

    last, parent, sibling = rules.last, rules.parent, rules.sibling
    try:
        for ax_mask in axioms(t):
            attempted += 1
            add(ax_mask, AXIOM, (), None)
        while queue:
            if cfg.stop_on_goal and goal_masks & ids.keys():
                break
            sid = pop()
            s = seqs[sid]
            cands = tuple(principal_candidates(s)) if s else ()
            for x in cands:
                if last[x] == "ol" or last[x] == "or":
                    partners[x].append(sid, s ^ (1 << x))
            for x in cands:
                sym = last[x]
                par = parent[x]
                if sym == "al" or sym == "ar":
                    c = (s ^ (1 << x)) | (1 << par)
                    attempted += 1
                    if c in ids:
                        rederived += 1
                    else:
                        add(c, AND_L if sym == "al" else AND_R, (sid,), par)
                elif sym == "ol" or sym == "or":
                    rest = (s ^ (1 << x)) | (1 << par)
                    others = partners[sibling[x]]
                    k = len(others.sids)
                    attempted += k
                    if seen is not None and k >= _VECTOR_MIN:
                        # nearly every pairing re-derives a kept sequent
                        concl = others.array[:k] | rest
                        fresh = np.flatnonzero(~seen[concl]).tolist()
                        rederived += k - len(fresh)
                        pairs = ((others.sids[i], int(concl[i])) for i in fresh)
                    else:
                        pairs = zip(others.sids, [rest | b for b in others.bodies])
                    for other, c in pairs:
                        if c in ids:
                            rederived += 1
                            continue
                        prem = (sid, other) if sym == "ol" else (other, sid)
                        add(c, OR_RULE, prem, par)
                if attempted > max_inf:
                    over_budget()
            box_part = s & rules.box_kids
            dia_part = s & rules.dia_kids
            if box_part | dia_part == s and dia_part & (dia_part - 1) == 0:
                ctx = 0
                for b in members(box_part):
                    ctx |= 1 << parent[b]
                if dia_part:
                    targets = (parent[dia_part.bit_length() - 1],)
                    rule = DIA_RULE
                elif filters and ctx:
                    targets = rules.diamonds_by_ml[t.modal_lengths[next(members(ctx))]]
                    rule = DIA_PLUS
                else:
                    targets = rules.diamonds
                    rule = DIA_PLUS
                attempted += len(targets)
                for d in targets:
                    c = ctx | (1 << d)
                    if c in ids:
                        rederived += 1
                    else:
                        add(c, rule, (sid,), d)
            if axiom_root is not None and s >> axiom_root & 1:
                c = s ^ (1 << axiom_root)
                attempted += 1
                if c in ids:
                    rederived += 1
                else:
                    add(c, AX, (sid,), axiom_root)
            if attempted > max_inf:
                over_budget()
    except BudgetExceeded as exc:
        closure.complete = False
        stats["budget"] = str(exc)
    stats["attempted"] += attempted
    stats["rederived"] += rederived
    stats["applied"] = len(seqs)
    if cfg.stop_on_goal and goal_masks & ids.keys():
        stats["stopped_on_goal"] = 1
    stats["kept"] = len(seqs)
    stats["ms"] = (time.perf_counter() - started) * 1000.0
    return closure


def decide(t: PathTable, cfg: SaturationConfig | None = None,
           engine: str | None = None) -> Verdict:
    """UNSAT iff the root sequent (or, with a global axiom, the empty sequent
    or the G-root sequent) is derivable."""
    cfg = cfg or SaturationConfig()
    closure = saturate(t, cfg)
    name = engine or ("inverse-opt" if cfg.ordering is not None else "inverse")
    stats = dict(closure.stats)
    goals = closure.goals()
    if goals:
        return Verdict(UNSAT, name, stats, closure.trace(min(goals)), proof=closure)
    if not closure.complete:
        return Verdict(INCONCLUSIVE, name, stats)
    return Verdict(SAT, name, stats)


def validate_record(rec: InferenceRecord, closure: Closure) -> bool:
    """Re-check that a record has the shape of the rule it names."""
    t = closure.table
    seqs = closure.sequents
    concl = seqs[rec.conclusion]
    prem = [seqs[p] for p in rec.premises]
    if rec.rule == AXIOM:
        return not prem and concl in set(axioms(t))
    pi = rec.pi
    if rec.rule in (AND_L, AND_R):
        kid = t.children[pi][0 if rec.rule == AND_L else 1]
        return (t.kinds[pi] == "and" and prem[0] >> kid & 1 == 1
                and concl == (prem[0] ^ (1 << kid)) | (1 << pi))
    if rec.rule == OR_RULE:
        if t.kinds[pi] != "or":
            return False
        left, right = t.children[pi]
        return (prem[0] >> left & 1 == 1 and prem[1] >> right & 1 == 1
                and concl == (prem[0] ^ (1 << left)) | (prem[1] ^ (1 << right)) | (1 << pi))
    if rec.rule in (DIA_RULE, DIA_PLUS):
        if t.kinds[pi] != DIA:
            return False
        body = 1 << t.children[pi][0]
        src = prem[0]
        if rec.rule == DIA_RULE:
            if not src & body:
                return False
            src ^= body
        ctx = 0
        for b in members(src):
            par = t.parents[b]
            if par < 0 or t.kinds[par] != "box":
                return False
            ctx |= 1 << par
        return concl == ctx | (1 << pi)
    if rec.rule == AX:
        return (pi == t.axiom_root and prem[0] >> pi & 1 == 1
                and concl == prem[0] ^ (1 << pi))
    return False


def concretization(seqs, a: FormulaAutomaton, table: PathTable | None = None) -> set[int]:
    """States of *a* that are supersets of some sequent in *seqs*."""
    if isinstance(seqs, Closure):
        table, seqs = seqs.table, seqs.sequents
    if table is not None and table.words != a.table.words:
        raise ValueError("sequents and automaton use different path tables")
    states = np.asarray(a.states, dtype=np.int64)
    hit = np.zeros(states.shape, dtype=bool)
    for s in seqs:
        hit |= (states & s) == s
    return {int(i) for i in np.flatnonzero(hit)}


def format_trace(records, closure: Closure) -> str:
    return "".join(r.format(closure) + "\n" for r in records)
