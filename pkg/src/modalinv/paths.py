"""Path tables: dense integer addresses for every subformula occurrence.

A path is a word over ``al ar ol or box dia`` prefixed by a root tag
(``e`` for a single formula, ``eG``/``eH`` for a formula with a global
axiom).  Ids are assigned in breadth-first order, stably grouped by modal
length, so that for ``<>~p1 & ([]p2 & [](~p2 | p1))`` the ids 0..4 are the
modal-length-0 paths and 5..9 the modal-length-1 paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .formula import And, Atom, Box, Dia, Formula, Not, Or, is_nnf, render

AND, OR, BOX, DIA, LIT = "and", "or", "box", "dia", "lit"
MODAL_SYMBOLS = ("box", "dia")


def _kind(f: Formula) -> str:
    if isinstance(f, And):
        return AND
    if isinstance(f, Or):
        return OR
    if isinstance(f, Box):
        return BOX
    if isinstance(f, Dia):
        return DIA
    return LIT


def _edges(f: Formula):
    """(symbol, branch index, child) triples of one node."""
    if isinstance(f, And):
        return (("al", 0, f.left), ("ar", 1, f.right))
    if isinstance(f, Or):
        return (("ol", 0, f.left), ("or", 1, f.right))
    if isinstance(f, Box):
        return (("box", 0, f.child),)
    if isinstance(f, Dia):
        return (("dia", 0, f.child),)
    return ()


@dataclass
class PathTable:
    words: list[tuple]
    formulas: list[Formula]
    kinds: list[str]
    parents: list[int]
    modal_lengths: list[int]
    children: list[tuple]
    diamonds: list[int]
    roots: dict[str, int]
    axiom: bool = False
    child_of: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.words)

    def __post_init__(self):
        n = len(self.words)
        self.full_mask = (1 << n) - 1
        self._diamond_pos = {p: i + 1 for i, p in enumerate(self.diamonds)}
        for p, cs in enumerate(self.children):
            for sym, c in zip((self.words[c][-1] for c in cs), cs):
                self.child_of[(p, sym)] = c
        # literal bookkeeping for clash tests
        self.pos_lits: dict[str, int] = {}
        self.neg_lits: dict[str, int] = {}
        for p, f in enumerate(self.formulas):
            if isinstance(f, Atom):
                self.pos_lits[f.name] = self.pos_lits.get(f.name, 0) | (1 << p)
            elif isinstance(f, Not):
                self.neg_lits[f.child.name] = self.neg_lits.get(f.child.name, 0) | (1 << p)
        self.clash_pairs = [(self.pos_lits[a], self.neg_lits[a])
                            for a in sorted(self.pos_lits) if a in self.neg_lits]
        # child masks of junction paths, keyed by path id
        self.and_kids = {p: (1 << cs[0]) | (1 << cs[1])
                         for p, cs in enumerate(self.children) if self.kinds[p] == AND}
        self.or_kids = {p: (1 << cs[0]) | (1 << cs[1])
                        for p, cs in enumerate(self.children) if self.kinds[p] == OR}
        self.junction_mask = sum(1 << p for p in (*self.and_kids, *self.or_kids))
        self.box_mask = sum(1 << p for p, k in enumerate(self.kinds) if k == BOX)

    @property
    def root(self) -> int:
        """The initial root: ``e`` in plain mode, ``eG`` in axiom mode."""
        return self.roots["eG" if self.axiom else "e"]

    @property
    def axiom_root(self) -> int | None:
        return self.roots.get("eH")

    def check(self, pid: int) -> int:
        if not 0 <= pid < len(self.words):
            raise KeyError(f"unknown path id {pid}")
        return pid

    def last_symbol(self, pid: int):
        w = self.words[self.check(pid)]
        return w[-1] if len(w) > 1 else None

    def word(self, pid: int) -> str:
        return ".".join(self.words[self.check(pid)])

    def is_junction(self, pid: int) -> bool:
        return self.kinds[pid] in (AND, OR)


def build_path_table(g: Formula, h: Formula | None = None) -> PathTable:
    """Enumerate every path of *g* (and of the global axiom *h*, if given)."""
    if not is_nnf(g) or (h is not None and not is_nnf(h)):
        raise ValueError("path tables are defined for NNF formulas only")
    tops = [("e", g)] if h is None else [("eG", g), ("eH", h)]
    raw = []  # (sort key, word, formula, parent raw index)
    for root_order, (tag, top) in enumerate(tops):
        stack = [((tag,), (), 0, top, -1)]
        while stack:
            word, branch, ml, f, parent = stack.pop()
            idx = len(raw)
            raw.append(((ml, len(branch), root_order, branch), word, f, parent))
            for sym, b, c in _edges(f):
                stack.append((word + (sym,), branch + (b,),
                              ml + (sym in MODAL_SYMBOLS), c, idx))
    order = sorted(range(len(raw)), key=lambda i: raw[i][0])
    new_id = {old: new for new, old in enumerate(order)}
    words, formulas, parents, mls = [], [], [], []
    for old in order:
        key, word, f, parent = raw[old]
        words.append(word)
        formulas.append(f)
        parents.append(new_id[parent] if parent >= 0 else -1)
        mls.append(key[0])
    kids: list[list[int]] = [[] for _ in words]
    for pid, par in enumerate(parents):
        if par >= 0:
            kids[par].append(pid)
    # left child first
    children = [tuple(sorted(k, key=lambda c: words[c][-1] in ("ar", "or"))) for k in kids]
    kinds = [_kind(f) for f in formulas]
    diamonds = [p for p, k in enumerate(kinds) if k == DIA]
    roots = {w[0]: p for p, w in enumerate(words) if len(w) == 1}
    return PathTable(words, formulas, kinds, parents, mls, children, diamonds,
                     roots, axiom=h is not None)


def subformula_at(t: PathTable, pid: int) -> Formula:
    return t.formulas[t.check(pid)]


def modal_length(t: PathTable, pid: int) -> int:
    return t.modal_lengths[t.check(pid)]


def diamond_index(t: PathTable, pid: int) -> int | None:
    """1-based position of *pid* in the fixed enumeration of diamond paths."""
    return t._diamond_pos.get(t.check(pid))


def members(mask: int):
    """Ids set in a bitmask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(ids) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def format_set(mask: int) -> str:
    return "{" + " ".join(str(i) for i in members(mask)) + "}"


def dump_paths(t: PathTable) -> str:
    """One line per path: ``<id> <word> <kind> <modal_length> <subformula>``."""
    lines = []
    for pid in range(len(t)):
        lines.append(f"{pid} {t.word(pid)} {t.kinds[pid]} {t.modal_lengths[pid]} "
                     f"{render(t.formulas[pid])}")
    return "\n".join(lines) + "\n"
