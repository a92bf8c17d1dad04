"""Redundancy predicates, path orderings and ordered selection.

The predicates here characterise path sets that cannot occur on any run
from an initial state (vee-forks, diamond-separated pairs, mixed modal
lengths).  Orderings are total orders on path ids that restrict which
propositional inferences the optimised calculus may apply.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .paths import AND, OR, PathTable, members

_SYMBOL_ORDER = {"al": 0, "ar": 1, "ol": 2, "or": 3, "box": 4, "dia": 5}
# eH sits below eG; the plain root "e" stands alone
_ROOT_ORDER = {"eH": 0, "eG": 1, "e": 0}


def _modal_len(word) -> int:
    return sum(1 for s in word[1:] if s in ("box", "dia"))


def is_vee_fork(p1: int, p2: int, t: PathTable) -> bool:
    w1, w2 = t.words[t.check(p1)], t.words[t.check(p2)]
    for a, b in zip(w1, w2):
        if a != b:
            return {a, b} == {"ol", "or"}
    return False


def is_diamond_separated(p1: int, p2: int, t: PathTable) -> bool:
    w1, w2 = t.words[t.check(p1)], t.words[t.check(p2)]
    heads1 = [w1[:i] for i in range(1, len(w1)) if w1[i] == "dia"]
    heads2 = [w2[:i] for i in range(1, len(w2)) if w2[i] == "dia"]
    return any(_modal_len(a) == _modal_len(b) and a != b
               for a in heads1 for b in heads2)


def conflict_masks(t: PathTable) -> list[int]:
    """Per path, the mask of paths it may not share a sequent with."""
    cached = getattr(t, "_conflicts", None)
    if cached is not None:
        return cached
    n = len(t)
    out = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if (t.modal_lengths[i] != t.modal_lengths[j] or is_vee_fork(i, j, t)
                    or is_diamond_separated(i, j, t)):
                out[i] |= 1 << j
                out[j] |= 1 << i
    t._conflicts = out
    return out


def redundant(s: int, t: PathTable) -> bool:
    """True iff some pair in the path set *s* is a vee-fork, diamond-separated,
    or of different modal length."""
    conf = conflict_masks(t)
    return any(conf[p] & s for p in members(s))


def are_brothers(p1: int, p2: int, t: PathTable) -> bool:
    t.check(p1), t.check(p2)
    par = t.parents[p1]
    return (p1 != p2 and par >= 0 and par == t.parents[p2]
            and t.kinds[par] in (AND, OR))


@dataclass(frozen=True)
class GOrdering:
    """A total order on path ids; ``order[k]`` is the path of rank ``k``."""
    order: tuple

    @cached_property
    def rank(self) -> list[int]:
        r = [0] * len(self.order)
        for k, p in enumerate(self.order):
            r[p] = k
        return r

    def above(self, p: int, s: int, rank=None) -> bool:
        """``p`` outranks every member of the path set ``s``."""
        rank = rank or self.rank
        return all(rank[p] > rank[q] for q in members(s))


def build_g_ordering(t: PathTable) -> GOrdering:
    def key(p):
        w = t.words[p]
        modal_last = len(w) == 1 or w[-1] in ("box", "dia")
        lex = (_ROOT_ORDER[w[0]],) + tuple(_SYMBOL_ORDER[s] for s in w[1:])
        return (t.modal_lengths[p], 0 if modal_last else 1, len(w), lex)
    return GOrdering(tuple(sorted(range(len(t)), key=key)))


def _is_prefix(short, long) -> bool:
    return len(short) <= len(long) and long[:len(short)] == short


def check_g_ordering(o: GOrdering, t: PathTable) -> bool:
    n = len(t)
    if sorted(o.order) != list(range(n)):
        return False
    rank = o.rank
    for a in range(n):
        wa, la = t.words[a], t.last_symbol(a)
        for b in range(n):
            if a == b:
                continue
            wb, lb = t.words[b], t.last_symbol(b)
            ma, mb = t.modal_lengths[a], t.modal_lengths[b]
            forced = (ma > mb
                      or (ma == mb and la in ("al", "ar", "ol", "or")
                          and lb in ("box", "dia"))
                      or (ma == mb and _is_prefix(wb, wa)))
            if forced and rank[a] < rank[b]:
                return False
    for p1 in range(n):
        for p3 in range(n):
            if not are_brothers(p1, p3, t):
                continue
            lo, hi = sorted((rank[p1], rank[p3]))
            if any(lo < rank[p2] < hi for p2 in range(n)):
                return False
    return True


def unexpanded(s: int, t: PathTable) -> list[int]:
    """Junction paths of *s* that are not propositionally expanded in *s*."""
    out = []
    for p in members(s & t.junction_mask):
        kids = t.and_kids.get(p)
        if kids is not None:
            if kids & s != kids:
                out.append(p)
        elif not t.or_kids[p] & s:
            out.append(p)
    return out


def select_succ(s: int, o: GOrdering, t: PathTable, rank=None) -> int:
    """Pick the unexpanded junction path whose children are the two smallest
    among all children of unexpanded junction paths."""
    cands = unexpanded(s, t)
    if not cands:
        raise ValueError("select_succ called on a propositionally expanded set")
    rank = rank or o.rank
    kids = sorted((rank[c], c) for p in cands for c in t.children[p])
    lowest = {kids[0][1], kids[1][1]} if len(kids) > 1 else {kids[0][1]}
    for p in cands:
        if set(t.children[p]) == lowest:
            return p
    raise ValueError("ordering does not keep brothers adjacent")


def is_compact(s: int, o: GOrdering, t: PathTable, rank=None) -> bool:
    rank = rank or o.rank
    top = max((rank[q] for q in members(s)), default=-1)
    return all(rank[c] > top for p in unexpanded(s, t) for c in t.children[p])
