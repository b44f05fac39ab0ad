"""Seeded random formulas and preference models for the property suites."""

from __future__ import annotations

import random

from dyadic.formula import Atom, Box, Formula, Impl, Neg, Oblig, size
from dyadic.semantics import PreferenceModel


def random_formula(rng: random.Random, atom_names, budget: int) -> Formula:
    """A core formula with ``size(f) <= budget``."""
    if budget <= 1 or rng.random() < 0.15:
        return Atom(rng.choice(atom_names))
    if budget == 2:
        kind = rng.choice(("neg", "box"))
    else:
        kind = rng.choice(("neg", "box", "impl", "impl", "oblig", "oblig"))
    if kind == "neg":
        return Neg(random_formula(rng, atom_names, budget - 1))
    if kind == "box":
        return Box(random_formula(rng, atom_names, budget - 1))
    left_budget = rng.randint(1, budget - 2)
    left = random_formula(rng, atom_names, left_budget)
    right = random_formula(rng, atom_names, budget - 1 - size(left))
    return Impl(left, right) if kind == "impl" else Oblig(left, right)


def formula_suite(seed: int, count: int, n_atoms: int, max_size: int) -> list[Formula]:
    rng = random.Random(seed)
    names = ["p", "q", "r"][:n_atoms]
    return [random_formula(rng, names, rng.randint(1, max_size)) for _ in range(count)]


def random_model(rng: random.Random, atom_names, max_worlds: int, edge_prob: float = 0.3) -> PreferenceModel:
    n = rng.randint(1, max_worlds)
    worlds = tuple(range(1, n + 1))
    succ = frozenset((x, y) for x in worlds for y in worlds if rng.random() < edge_prob)
    valuation = {w: frozenset(a for a in atom_names if rng.random() < 0.5) for w in worlds}
    return PreferenceModel(worlds, succ, valuation)
