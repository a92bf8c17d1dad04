"""Independent deciders and a Kripke model checker.

Nothing in here touches path tables: both deciders work on formulas
directly so that they can serve as ground truth for the path-based engines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .formula import And, Atom, Box, Dia, Formula, Not, Or, children
from .verdict import SAT, UNSAT, Verdict


@dataclass
class KripkeModel:
    succ: list[list[int]]
    valuation: dict[str, set] = field(default_factory=dict)

    @property
    def worlds(self) -> range:
        return range(len(self.succ))

    def __post_init__(self):
        n = len(self.succ)
        for w, vs in enumerate(self.succ):
            for v in vs:
                if not 0 <= v < n:
                    raise ValueError(f"edge {w}->{v} leaves the model")


def check_model(m: KripkeModel, w: int, f: Formula) -> bool:
    if w not in m.worlds:
        raise KeyError(f"unknown world {w}")
    if isinstance(f, Atom):
        return w in m.valuation.get(f.name, ())
    if isinstance(f, Not):
        return not check_model(m, w, f.child)
    if isinstance(f, And):
        return check_model(m, w, f.left) and check_model(m, w, f.right)
    if isinstance(f, Or):
        return check_model(m, w, f.left) or check_model(m, w, f.right)
    if isinstance(f, Box):
        return all(check_model(m, v, f.child) for v in m.succ[w])
    return any(check_model(m, v, f.child) for v in m.succ[w])


def dump_model(m: KripkeModel) -> str:
    lines = []
    for w in m.worlds:
        names = sorted(a for a, ws in m.valuation.items() if w in ws)
        lines.append(f"world {w}: atoms={{{', '.join(names)}}} "
                     f"succ={{{', '.join(map(str, m.succ[w]))}}}")
    return "\n".join(lines) + "\n"


# -- tableau -----------------------------------------------------------------

def _saturate(pending: list, done: frozenset):
    """Propositional saturation with left-first backtracking on disjunctions.

    Yields every clash-free saturated label reachable from *pending*.
    """
    done = set(done)
    pending = list(pending)
    while pending:
        f = pending.pop()
        if f in done:
            continue
        if isinstance(f, Atom) and Not(f) in done:
            return
        if isinstance(f, Not) and f.child in done:
            return
        done.add(f)
        if isinstance(f, And):
            pending += [f.right, f.left]
        elif isinstance(f, Or):
            if f.left in done or f.right in done:
                continue
            yield from _saturate(pending + [f.left], frozenset(done))
            yield from _saturate(pending + [f.right], frozenset(done))
            return
    yield frozenset(done)


def _tableau(label: frozenset, memo: dict):
    """Return a tree ``(atoms, [subtrees])`` satisfying *label*, or None."""
    if label in memo:
        return memo[label]
    result = None
    for node in _saturate(list(label), frozenset()):
        bodies = [f.child for f in node if isinstance(f, Box)]
        kids = []
        for d in sorted((f for f in node if isinstance(f, Dia)), key=repr):
            sub = _tableau(frozenset([d.child, *bodies]), memo)
            if sub is None:
                break
            kids.append(sub)
        else:
            result = (frozenset(f.name for f in node if isinstance(f, Atom)), kids)
            break
    memo[label] = result
    return result


def _tree_to_model(tree) -> KripkeModel:
    succ: list[list[int]] = []
    val: dict[str, set] = {}
    stack = [(tree, None)]
    while stack:
        (names, kids), parent = stack.pop()
        w = len(succ)
        succ.append([])
        if parent is not None:
            succ[parent].append(w)
        for a in names:
            val.setdefault(a, set()).add(w)
        for k in reversed(kids):
            stack.append((k, w))
    return KripkeModel(succ, val)


def decide_tableau(g: Formula) -> Verdict:
    """Depth-first K tableau; SAT verdicts carry a tree model rooted at world 0."""
    memo: dict = {}
    tree = _tableau(frozenset([g]), memo)
    stats = {"labels": len(memo)}
    if tree is None:
        return Verdict(UNSAT, "tableau", stats)
    return Verdict(SAT, "tableau", stats, model=_tree_to_model(tree))


# -- type elimination --------------------------------------------------------

class ClosureTooLarge(ValueError):
    pass


def _subformulas(f: Formula, out: dict):
    if f not in out:
        out[f] = len(out)
        for c in children(f):
            _subformulas(c, out)


def decide_type_elimination(g: Formula, h: Formula | None = None,
                            max_closure: int = 22, max_elementary: int = 16) -> Verdict:
    """Type elimination for K with an optional global axiom *h*.

    A type fixes the truth of every atom and modal subformula of the closure;
    the truth of the Boolean combinations follows.  Types violating *h* are
    dropped, then types with an unsupported diamond are removed until stable.
    """
    index: dict[Formula, int] = {}
    _subformulas(g, index)
    if h is not None:
        _subformulas(h, index)
    cl = list(index)
    if len(cl) > max_closure:
        raise ClosureTooLarge(f"closure has {len(cl)} formulas (bound {max_closure})")
    elementary = [f for f in cl if isinstance(f, (Atom, Box, Dia))]
    if len(elementary) > max_elementary:
        raise ClosureTooLarge(f"{len(elementary)} elementary formulas (bound {max_elementary})")
    # evaluate children before parents
    order = sorted(cl, key=lambda f: _height(f))

    def truth(assign: int) -> int:
        val = {}
        for k, e in enumerate(elementary):
            val[e] = bool(assign >> k & 1)
        for f in order:
            if isinstance(f, Not):
                val[f] = not val[f.child]
            elif isinstance(f, And):
                val[f] = val[f.left] and val[f.right]
            elif isinstance(f, Or):
                val[f] = val[f.left] or val[f.right]
        return sum(1 << index[f] for f in cl if val[f])

    types = [truth(a) for a in range(1 << len(elementary))]
    if h is not None:
        types = [ty for ty in types if ty >> index[h] & 1]
    dias = [(index[f], 1 << index[f.child]) for f in cl if isinstance(f, Dia)]
    boxes = [(index[f], 1 << index[f.child]) for f in cl if isinstance(f, Box)]

    def demands(ty: int) -> list[int]:
        body = 0
        for i, b in boxes:
            if ty >> i & 1:
                body |= b
        return [req | body for i, req in dias if ty >> i & 1]

    alive = set(range(len(types)))
    needs = [demands(ty) for ty in types]
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        for k in sorted(alive):
            for req in needs[k]:
                if not any(types[j] & req == req for j in alive):
                    alive.discard(k)
                    changed = True
                    break
    stats = {"types": len(types), "surviving": len(alive), "rounds": rounds}
    roots = [k for k in sorted(alive) if types[k] >> index[g] & 1]
    if not roots:
        return Verdict(UNSAT, "type-elim", stats)
    # model over the types reachable from the first g-type
    ids = {roots[0]: 0}
    succ: list[list[int]] = [[]]
    queue = [roots[0]]
    while queue:
        k = queue.pop(0)
        for req in needs[k]:
            j = next(j for j in sorted(alive) if types[j] & req == req)
            if j not in ids:
                ids[j] = len(succ)
                succ.append([])
                queue.append(j)
            if ids[j] not in succ[ids[k]]:
                succ[ids[k]].append(ids[j])
    val: dict[str, set] = {}
    for k, w in ids.items():
        for f in cl:
            if isinstance(f, Atom) and types[k] >> index[f] & 1:
                val.setdefault(f.name, set()).add(w)
    return Verdict(SAT, "type-elim", stats, model=KripkeModel(succ, val))


def _height(f: Formula) -> int:
    cs = children(f)
    return 1 + max(_height(c) for c in cs) if cs else 0
