"""Sequents and hypersequents.

A :class:`Sequent` keeps its formulas in insertion order so that rule
enumeration and printing are deterministic; equality ignores order and
multiplicity.  A :class:`Hypersequent` is an indexed list of components whose
positions never change: rules only modify components in place or append.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .formula import Atom, Bet, Box, Formula, Oblig, parse, render

__all__ = [
    "Sequent", "Hypersequent",
    "boxed_part", "oblig_part", "bet_drop", "is_initial",
    "hypersequent_to_json", "hypersequent_from_json", "parse_sequent",
]


def _dedupe(fs: Iterable[Formula]) -> tuple[Formula, ...]:
    return tuple(dict.fromkeys(fs))


@dataclass(frozen=True, eq=False)
class Sequent:
    """``ant => suc``.

    The tuples are stored as given; use :meth:`of` to build a duplicate-free
    component.  Multiplicities only matter to the replay checker.
    """

    ant: tuple[Formula, ...] = ()
    suc: tuple[Formula, ...] = ()
    ant_set: frozenset[Formula] = field(init=False, repr=False)
    suc_set: frozenset[Formula] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ant", tuple(self.ant))
        object.__setattr__(self, "suc", tuple(self.suc))
        object.__setattr__(self, "ant_set", frozenset(self.ant))
        object.__setattr__(self, "suc_set", frozenset(self.suc))

    @classmethod
    def of(cls, ant: Iterable[Formula] = (), suc: Iterable[Formula] = ()) -> Sequent:
        return cls(_dedupe(ant), _dedupe(suc))

    def __eq__(self, other):
        if not isinstance(other, Sequent):
            return NotImplemented
        return self.ant_set == other.ant_set and self.suc_set == other.suc_set

    def __hash__(self):
        return hash((self.ant_set, self.suc_set))

    def add_ant(self, *fs: Formula) -> Sequent:
        new = [f for f in fs if f not in self.ant_set]
        return Sequent(self.ant + _dedupe(new), self.suc) if new else self

    def add_suc(self, *fs: Formula) -> Sequent:
        new = [f for f in fs if f not in self.suc_set]
        return Sequent(self.ant, self.suc + _dedupe(new)) if new else self

    def formula_count(self) -> int:
        return len(self.ant_set) + len(self.suc_set)

    def __str__(self) -> str:
        left = ", ".join(render(f) for f in self.ant)
        right = ", ".join(render(f) for f in self.suc)
        return f"{left} => {right}".strip()


@dataclass(frozen=True)
class Hypersequent:
    components: tuple[Sequent, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("a hypersequent needs at least one component")

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, index: int) -> Sequent:
        """1-based component access."""
        if not 1 <= index <= len(self.components):
            raise IndexError(f"no component {index}")
        return self.components[index - 1]

    def replace(self, index: int, comp: Sequent) -> Hypersequent:
        comps = list(self.components)
        comps[index - 1] = comp
        return Hypersequent(tuple(comps))

    def append(self, comp: Sequent) -> Hypersequent:
        return Hypersequent(self.components + (comp,))

    def __str__(self) -> str:
        return " | ".join(str(c) for c in self.components)


def boxed_part(s: Sequent) -> tuple[Formula, ...]:
    return tuple(f for f in s.ant if isinstance(f, Box))


def oblig_part(s: Sequent) -> tuple[Formula, ...]:
    return tuple(f for f in s.ant if isinstance(f, Oblig))


def bet_drop(s: Sequent) -> tuple[Formula, ...]:
    """Bodies of the ``Bet`` formulas in the antecedent, prefix stripped."""
    return tuple(f.child for f in s.ant if isinstance(f, Bet))


def is_initial(h: Hypersequent) -> bool:
    """True iff some component has the same atom on both sides."""
    for c in h.components:
        for f in c.ant_set:
            if isinstance(f, Atom) and f in c.suc_set:
                return True
    return False


# ---------------------------------------------------------------- JSON

def sequent_to_json(s: Sequent) -> dict:
    return {"ant": [render(f) for f in s.ant], "suc": [render(f) for f in s.suc]}


def hypersequent_to_json(h: Hypersequent) -> dict:
    return {"components": [sequent_to_json(c) for c in h.components]}


def sequent_from_json(data: dict) -> Sequent:
    return Sequent(
        tuple(parse(t, allow_bet=True) for t in data["ant"]),
        tuple(parse(t, allow_bet=True) for t in data["suc"]),
    )


def hypersequent_from_json(data: dict) -> Hypersequent:
    return Hypersequent(tuple(sequent_from_json(c) for c in data["components"]))


def single(ant: Sequence[Formula] = (), suc: Sequence[Formula] = ()) -> Hypersequent:
    """One-component hypersequent ``ant => suc``."""
    return Hypersequent((Sequent.of(ant, suc),))


def _split_top_level(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:k])
            start = k + 1
    parts.append(text[start:])
    return [p for p in (s.strip() for s in parts) if p]


def parse_sequent(text: str, allow_bet: bool = False) -> Sequent:
    """Parse ``"A, B |- C, D"``; either side may be empty."""
    if text.count("|-") != 1:
        raise ValueError("a sequent needs exactly one '|-'")
    left, right = text.split("|-")
    return Sequent.of(
        [parse(t, allow_bet) for t in _split_top_level(left)],
        [parse(t, allow_bet) for t in _split_top_level(right)],
    )
