"""Formula generators for the differential and exhaustive test corpora.

``exhaustive`` enumerates every NNF formula over a small alphabet up to a
path-count and height bound.  Leaves are literals (``p`` and ``~p`` both
have height 0).  Two formulas that only differ by the order of ``&``/``|``
operands, by a renaming of atoms, or by flipping the polarity of an atom
everywhere have isomorphic path tables, so by default only the least
member of each such class is produced.
"""

from __future__ import annotations

import itertools
import random

from .formula import And, Atom, Box, Dia, Formula, Not, Or, children

_LEAF, _NEG = 0, 1
_TAGS = {Box: 2, Dia: 3, And: 4, Or: 5}
_OPS = {v: k for k, v in _TAGS.items()}


class _Store:
    """Hash-consed formula nodes ``(tag, a, b)``; binary nodes keep their
    operand ids sorted, so commuted operands share one node."""

    def __init__(self):
        self.nodes: list[tuple] = []
        self.ids: dict[tuple, int] = {}

    def intern(self, node: tuple) -> int:
        i = self.ids.get(node)
        if i is None:
            i = self.ids[node] = len(self.nodes)
            self.nodes.append(node)
        return i

    def op(self, tag: int, a: int, b: int = -1) -> int:
        if b >= 0 and b < a:
            a, b = b, a
        return self.intern((tag, a, b))

    def build(self, i: int, memo: dict) -> Formula:
        f = memo.get(i)
        if f is None:
            tag, a, b = self.nodes[i]
            if tag == _LEAF:
                f = Atom(a)
            elif tag == _NEG:
                f = Not(Atom(a))
            elif b < 0:
                f = _OPS[tag](self.build(a, memo))
            else:
                f = _OPS[tag](self.build(a, memo), self.build(b, memo))
            memo[i] = f
        return f


def _literal_maps(atoms) -> list[dict]:
    """Every atom permutation combined with every polarity flip."""
    out = []
    for perm in itertools.permutations(atoms):
        for flips in itertools.product((False, True), repeat=len(atoms)):
            m = {}
            for a, b, flip in zip(atoms, perm, flips):
                m[(a, True)] = (b, not flip)
                m[(a, False)] = (b, flip)
            out.append(m)
    return out


def exhaustive(max_paths: int = 12, max_height: int = 3, atoms=("p", "q"),
               symmetry: bool = True) -> list[Formula]:
    """All NNF formulas with at most *max_paths* paths and height at most
    *max_height*, ordered by path count.

    ``&``/``|`` operands are always unordered.  With *symmetry* one formula
    is kept per class under atom renaming and polarity flips.
    """
    st = _Store()
    lits = [st.intern((_LEAF if pos else _NEG, a, -1))
            for a in atoms for pos in (True, False)]
    table: dict[tuple, list[int]] = {}

    def gen(h: int, n: int) -> list[int]:
        got = table.get((h, n))
        if got is not None:
            return got
        if n == 1:
            out = lits
        elif h == 0:
            out = []
        else:
            out = [st.op(tag, c) for tag in (2, 3) for c in gen(h - 1, n - 1)]
            for a in range(1, (n - 1) // 2 + 1):
                b = n - 1 - a
                for x in gen(h - 1, a):
                    for y in gen(h - 1, b):
                        if a == b and y < x:
                            continue
                        out.append(st.op(4, x, y))
                        out.append(st.op(5, x, y))
        table[(h, n)] = out
        return out

    maps = []
    for m in _literal_maps(tuple(atoms))[1:]:
        memo = {}
        for a in atoms:
            for pos in (True, False):
                name, sign = m[(a, pos)]
                memo[st.ids[(_LEAF if pos else _NEG, a, -1)]] = st.ids[
                    (_LEAF if sign else _NEG, name, -1)]
        maps.append(memo)

    def image(i: int, memo: dict) -> int:
        j = memo.get(i)
        if j is None:
            tag, a, b = st.nodes[i]
            j = st.op(tag, image(a, memo), image(b, memo) if b >= 0 else -1)
            memo[i] = j
        return j

    built: dict[int, Formula] = {}
    result = []
    for n in range(1, max_paths + 1):
        for i in gen(max_height, n):
            if symmetry and any(image(i, memo) < i for memo in maps):
                continue
            result.append(st.build(i, built))
    return result


def random_nnf(rng: random.Random, atoms=("p", "q", "r"), depth: int = 4,
               leaf_bias: float = 0.3) -> Formula:
    """Random NNF formula of height at most *depth*."""
    if depth == 0 or rng.random() < leaf_bias:
        a = Atom(rng.choice(atoms))
        return a if rng.random() < 0.5 else Not(a)
    op = rng.choice((And, Or, Box, Dia))
    if op in (Box, Dia):
        return op(random_nnf(rng, atoms, depth - 1, leaf_bias))
    return op(random_nnf(rng, atoms, depth - 1, leaf_bias),
              random_nnf(rng, atoms, depth - 1, leaf_bias))


def path_count(f: Formula) -> int:
    """Number of paths of *f*; a negated atom is a single path."""
    if isinstance(f, (Atom, Not)):
        return 1
    return 1 + sum(path_count(c) for c in children(f))


def random_pair(rng: random.Random, max_paths: int = 10, atoms=("p", "q"),
                depth: int = 3) -> tuple[Formula, Formula]:
    """Random ``(g, h)`` with at most *max_paths* paths in total."""
    while True:
        g = random_nnf(rng, atoms, depth, leaf_bias=0.4)
        h = random_nnf(rng, atoms, depth - 1, leaf_bias=0.5)
        if path_count(g) + path_count(h) <= max_paths:
            return g, h


def nested_family(k: int) -> Formula:
    """``◇(p ∧ ¬p)`` under *k* wrappers alternating ``□·`` and ``· ∧ ◇q``."""
    f: Formula = Dia(And(Atom("p"), Not(Atom("p"))))
    for i in range(k):
        f = Box(f) if i % 2 == 0 else And(f, Dia(Atom("q")))
    return f
