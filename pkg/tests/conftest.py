import itertools

import pytest
from hypothesis import strategies as st

from modalinv.formula import And, Atom, Box, Dia, Not, Or, parse
from modalinv.oracle import KripkeModel
from modalinv.paths import build_path_table

G_STAR_TEXT = "<>~p1 & ([]p2 & [](~p2 | p1))"


@pytest.fixture
def g_star():
    return parse(G_STAR_TEXT)


@pytest.fixture
def t_star(g_star):
    return build_path_table(g_star)


def mask(*ids):
    m = 0
    for i in ids:
        m |= 1 << i
    return m


ATOMS = ("p", "q")


def literals(atoms=ATOMS):
    return st.sampled_from([Atom(a) for a in atoms] + [Not(Atom(a)) for a in atoms])


def nnf_formulas(atoms=ATOMS, max_leaves=8):
    return st.recursive(
        literals(atoms),
        lambda kids: st.one_of(
            st.builds(And, kids, kids), st.builds(Or, kids, kids),
            st.builds(Box, kids), st.builds(Dia, kids)),
        max_leaves=max_leaves)


def general_formulas(atoms=ATOMS, max_leaves=8):
    return st.recursive(
        st.sampled_from([Atom(a) for a in atoms]),
        lambda kids: st.one_of(
            st.builds(Not, kids), st.builds(And, kids, kids), st.builds(Or, kids, kids),
            st.builds(Box, kids), st.builds(Dia, kids)),
        max_leaves=max_leaves)


@st.composite
def kripke_models(draw, atoms=ATOMS, max_worlds=3):
    n = draw(st.integers(1, max_worlds))
    succ = [sorted(draw(st.sets(st.integers(0, n - 1)))) for _ in range(n)]
    val = {a: draw(st.sets(st.integers(0, n - 1))) for a in atoms}
    return KripkeModel(succ, val)


def all_models(atoms, max_worlds):
    """Every Kripke model with up to *max_worlds* worlds (brute force)."""
    for n in range(1, max_worlds + 1):
        edges = [(w, v) for w in range(n) for v in range(n)]
        for emask in range(1 << len(edges)):
            succ = [[] for _ in range(n)]
            for k, (w, v) in enumerate(edges):
                if emask >> k & 1:
                    succ[w].append(v)
            for vals in itertools.product(range(1 << n), repeat=len(atoms)):
                val = {a: {w for w in range(n) if bits >> w & 1}
                       for a, bits in zip(atoms, vals)}
                yield KripkeModel(succ, val)
