"""Path-set algebra: clashes, propositional expansion and box seeds.

Sequents and automaton states are both plain ``int`` bitmasks over the ids
of a :class:`~modalinv.paths.PathTable`; use :func:`modalinv.paths.to_mask`
and :func:`modalinv.paths.members` to convert from and to id collections.
"""

from __future__ import annotations

from .optimize import GOrdering, is_compact, select_succ, unexpanded
from .paths import PathTable, to_mask


def _mask(s) -> int:
    return s if isinstance(s, int) else to_mask(s)


def contains_clash(s, t: PathTable) -> bool:
    s = _mask(s)
    return any(pos & s and neg & s for pos, neg in t.clash_pairs)


def is_prop_expanded(s, t: PathTable) -> bool:
    s = _mask(s)
    if t.axiom and s and not s >> t.axiom_root & 1:
        return False
    return not unexpanded(s, t)


class CompactnessViolation(AssertionError):
    pass


def expansions(seed, t: PathTable, ordering: GOrdering | None = None,
               check_compact: bool = False) -> frozenset:
    """All minimal propositionally expanded supersets of *seed*.

    Built as an expansion tree: repeatedly pick an unexpanded junction path
    (lowest id, or ``select_succ`` under *ordering*), add both children of a
    conjunction or branch on each child of a disjunction.  With
    *check_compact* every tree node is asserted to be compact under
    *ordering*; a failure raises :class:`CompactnessViolation`.
    """
    seed = _mask(seed)
    if t.axiom and seed:
        seed |= 1 << t.axiom_root
    rank = ordering.rank if ordering is not None else None
    leaves = set()
    stack = [seed]
    while stack:
        node = stack.pop()
        if check_compact and not is_compact(node, ordering, t, rank):
            raise CompactnessViolation(f"node {sorted_ids(node)} is not compact")
        open_ = unexpanded(node, t)
        if not open_:
            leaves.add(node)
            continue
        p = select_succ(node, ordering, t, rank) if ordering is not None else open_[0]
        kids = t.and_kids.get(p)
        if kids is not None:
            stack.append(node | kids)
        else:
            left, right = t.children[p]
            stack.append(node | 1 << right)
            stack.append(node | 1 << left)
    return frozenset(leaves)


def sorted_ids(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def box_seed(s, i: int, t: PathTable) -> int:
    """Seed of the i-th successor (1-based): the diamond body plus all box
    bodies of *s*, or the empty set when the i-th diamond path is absent."""
    if not 1 <= i <= len(t.diamonds):
        raise IndexError(f"invalid diamond index {i}")
    s = _mask(s)
    d = t.diamonds[i - 1]
    if not s >> d & 1:
        return 0
    out = 1 << t.children[d][0]
    boxes = s & t.box_mask
    while boxes:
        low = boxes & -boxes
        out |= 1 << t.children[low.bit_length() - 1][0]
        boxes ^= low
    return out
