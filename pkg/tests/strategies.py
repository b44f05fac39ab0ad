"""Hypothesis strategies for formulas and models."""

from __future__ import annotations

from hypothesis import strategies as st

from dyadic.formula import Atom, Bet, Box, Impl, Neg, Oblig
from dyadic.semantics import PreferenceModel

ATOMS = ("p", "q", "r")


def formulas(atom_names=ATOMS, max_leaves: int = 8, with_bet: bool = False):
    leaves = st.sampled_from(atom_names).map(Atom)

    def extend(inner):
        options = [
            inner.map(Neg),
            inner.map(Box),
            st.builds(Impl, inner, inner),
            st.builds(Oblig, inner, inner),
        ]
        if with_bet:
            options.append(inner.map(Bet))
        return st.one_of(*options)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@st.composite
def models(draw, atom_names=ATOMS, max_worlds: int = 4):
    n = draw(st.integers(1, max_worlds))
    worlds = tuple(range(1, n + 1))
    pairs = [(x, y) for x in worlds for y in worlds]
    succ = frozenset(p for p in pairs if draw(st.booleans()))
    valuation = {w: frozenset(a for a in atom_names if draw(st.booleans())) for w in worlds}
    return PreferenceModel(worlds, succ, valuation)
