"""The invertible, kleene'd calculus used for proof search.

Every rule copies its principal formula (and component) into the premises, so
a backward application only ever adds formulas or components.  An
application is *redundant* when the hypersequent already meets the rule's
saturation condition; the search never makes redundant applications.
Among the rest it prefers applications with the fewest open premises.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .formula import Bet, Box, Formula, Impl, Neg, Oblig
from .hypersequent import Hypersequent, Sequent, bet_drop, is_initial

__all__ = [
    "RuleTag", "RuleInstance", "NotApplicable",
    "instantiate", "is_redundant", "open_premises", "iter_instances", "applicable_instances",
    "first_instance", "is_saturated",
]


class RuleTag(str, enum.Enum):
    NegL = "NegL"
    NegR = "NegR"
    ImplL = "ImplL"
    ImplR = "ImplR"
    ObligR_plus = "ObligR+"
    ObligL_plus = "ObligL+"
    ObligL2 = "ObligL2"
    BetPlus = "Bet+"
    BoxR_plus = "BoxR+"
    BoxL_plus = "BoxL+"
    BoxL2 = "BoxL2"

    def __str__(self) -> str:
        return self.value


# rule -> (side of principal formula, connective, takes a secondary component)
_SHAPE = {
    RuleTag.NegL: ("ant", Neg, False),
    RuleTag.NegR: ("suc", Neg, False),
    RuleTag.ImplL: ("ant", Impl, False),
    RuleTag.ImplR: ("suc", Impl, False),
    RuleTag.ObligR_plus: ("suc", Oblig, False),
    RuleTag.ObligL_plus: ("ant", Oblig, False),
    RuleTag.ObligL2: ("ant", Oblig, True),
    RuleTag.BetPlus: ("suc", Bet, False),
    RuleTag.BoxR_plus: ("suc", Box, False),
    RuleTag.BoxL_plus: ("ant", Box, False),
    RuleTag.BoxL2: ("ant", Box, True),
}


class NotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class RuleInstance:
    tag: RuleTag
    principal_component: int
    principal_formula: Formula
    secondary_component: int | None
    premises: tuple[Hypersequent, ...]


def _check(h: Hypersequent, tag: RuleTag, i: int, f: Formula, j: int | None) -> None:
    try:
        tag = RuleTag(tag)
    except ValueError:
        raise NotApplicable(f"unknown rule {tag!r}") from None
    side, kind, needs_secondary = _SHAPE[tag]
    if not 1 <= i <= len(h):
        raise NotApplicable(f"{tag}: no component {i}")
    if not isinstance(f, kind):
        raise NotApplicable(f"{tag}: principal formula has the wrong shape")
    comp = h[i]
    if f not in (comp.ant_set if side == "ant" else comp.suc_set):
        raise NotApplicable(f"{tag}: principal formula not in the {side} of component {i}")
    if needs_secondary:
        if j is None or not 1 <= j <= len(h) or j == i:
            raise NotApplicable(f"{tag}: needs a secondary component other than {i}")
    elif j is not None:
        raise NotApplicable(f"{tag}: takes no secondary component")


def instantiate(h: Hypersequent, tag: RuleTag, i: int, f: Formula, j: int | None = None) -> RuleInstance:
    """Build the premises of a backward application of ``tag`` to ``f`` in component ``i``.

    Components created by the rule are appended at the end.
    """
    _check(h, tag, i, f, j)
    tag = RuleTag(tag)
    comp = h[i]
    if tag is RuleTag.NegL:
        premises = (h.replace(i, comp.add_suc(f.child)),)
    elif tag is RuleTag.NegR:
        premises = (h.replace(i, comp.add_ant(f.child)),)
    elif tag is RuleTag.ImplL:
        premises = (h.replace(i, comp.add_suc(f.left)), h.replace(i, comp.add_ant(f.right)))
    elif tag is RuleTag.ImplR:
        premises = (h.replace(i, comp.add_ant(f.left).add_suc(f.right)),)
    elif tag is RuleTag.ObligR_plus:
        a = f.antecedent
        premises = (h.append(Sequent.of((a, Bet(Neg(a))), (f.consequent,))),)
    elif tag in (RuleTag.ObligL_plus, RuleTag.ObligL2):
        k = i if tag is RuleTag.ObligL_plus else j
        target = h[k]
        a = f.antecedent
        premises = (
            h.replace(k, target.add_suc(a)),
            h.replace(k, target.add_suc(Bet(Neg(a)))),
            h.replace(k, target.add_ant(f.consequent)),
        )
    elif tag is RuleTag.BetPlus:
        premises = (h.append(Sequent.of(bet_drop(comp), (f.child,))),)
    elif tag is RuleTag.BoxR_plus:
        premises = (h.append(Sequent.of((), (f.child,))),)
    elif tag is RuleTag.BoxL_plus:
        premises = (h.replace(i, comp.add_ant(f.child)),)
    else:  # BoxL2
        premises = (h.replace(j, h[j].add_ant(f.child)),)
    return RuleInstance(tag, i, f, j, premises)


def _oblig_done(f: Oblig, target: Sequent) -> bool:
    a = f.antecedent
    return a in target.suc_set or Bet(Neg(a)) in target.suc_set or f.consequent in target.ant_set


def _redundant(h: Hypersequent, tag: RuleTag, i: int, f, j: int | None) -> bool:
    comp = h[i]
    if tag is RuleTag.NegL:
        return f.child in comp.suc_set
    if tag is RuleTag.NegR:
        return f.child in comp.ant_set
    if tag is RuleTag.ImplL:
        return f.left in comp.suc_set or f.right in comp.ant_set
    if tag is RuleTag.ImplR:
        return f.left in comp.ant_set and f.right in comp.suc_set
    if tag is RuleTag.ObligL_plus:
        return _oblig_done(f, comp)
    if tag is RuleTag.ObligL2:
        return _oblig_done(f, h[j])
    if tag is RuleTag.ObligR_plus:
        a = f.antecedent
        bet = Bet(Neg(a))
        return any(
            a in c.ant_set and bet in c.ant_set and f.consequent in c.suc_set for c in h.components
        )
    if tag is RuleTag.BetPlus:
        drop = set(bet_drop(comp))
        return any(f.child in c.suc_set and drop <= c.ant_set for c in h.components)
    if tag is RuleTag.BoxR_plus:
        return any(f.child in c.suc_set for c in h.components)
    if tag is RuleTag.BoxL_plus:
        return f.child in comp.ant_set
    return f.child in h[j].ant_set  # BoxL2


def is_redundant(h: Hypersequent, tag: RuleTag, i: int, f: Formula, j: int | None = None) -> bool:
    """True iff the saturation condition of this application already holds in ``h``."""
    _check(h, tag, i, f, j)
    return _redundant(h, RuleTag(tag), i, f, j)


def _candidates(h: Hypersequent) -> Iterator[tuple[RuleTag, int, Formula, int | None]]:
    """All rule applications in the fixed strategy order, redundant or not."""
    comps = h.components
    n = len(comps)
    # 1. propositional rules
    for i, c in enumerate(comps, 1):
        for f in c.ant:
            if isinstance(f, Neg):
                yield RuleTag.NegL, i, f, None
            elif isinstance(f, Impl):
                yield RuleTag.ImplL, i, f, None
        for f in c.suc:
            if isinstance(f, Neg):
                yield RuleTag.NegR, i, f, None
            elif isinstance(f, Impl):
                yield RuleTag.ImplR, i, f, None
    # 2. local left modal rules
    for i, c in enumerate(comps, 1):
        for f in c.ant:
            if isinstance(f, Box):
                yield RuleTag.BoxL_plus, i, f, None
            elif isinstance(f, Oblig):
                yield RuleTag.ObligL_plus, i, f, None
    # 3. cross-component left rules
    for i, c in enumerate(comps, 1):
        for f in c.ant:
            if isinstance(f, (Box, Oblig)):
                tag = RuleTag.BoxL2 if isinstance(f, Box) else RuleTag.ObligL2
                for j in range(1, n + 1):
                    if j != i:
                        yield tag, i, f, j
    # 4. component-creating right rules
    for i, c in enumerate(comps, 1):
        for f in c.suc:
            if isinstance(f, Box):
                yield RuleTag.BoxR_plus, i, f, None
            elif isinstance(f, Oblig):
                yield RuleTag.ObligR_plus, i, f, None
            elif isinstance(f, Bet):
                yield RuleTag.BetPlus, i, f, None


def open_premises(h: Hypersequent, tag: RuleTag, i: int, f: Formula, j: int | None = None) -> int:
    """How many premises of this application do not immediately repeat a formula across sides.

    A premise whose new formula already sits on the opposite side of its
    component is closed by an identity subderivation, so it costs little.
    """
    c = h[i]
    if tag is RuleTag.NegL:
        return int(f.child not in c.ant_set)
    if tag is RuleTag.NegR:
        return int(f.child not in c.suc_set)
    if tag is RuleTag.ImplR:
        return int(f.left not in c.suc_set and f.right not in c.ant_set)
    if tag is RuleTag.ImplL:
        return (f.left not in c.ant_set) + (f.right not in c.suc_set)
    if tag in (RuleTag.ObligL_plus, RuleTag.ObligL2):
        t = c if j is None else h[j]
        a = f.antecedent
        return (a not in t.ant_set) + (Bet(Neg(a)) not in t.ant_set) + (f.consequent not in t.suc_set)
    if tag in (RuleTag.BoxL_plus, RuleTag.BoxL2):
        t = c if j is None else h[j]
        return int(f.child not in t.suc_set)
    return 1


def _ranked(h: Hypersequent) -> list[tuple[int, int, tuple]]:
    ranked = []
    for k, cand in enumerate(_candidates(h)):
        if not _redundant(h, *cand):
            ranked.append((open_premises(h, *cand), k, cand))
    ranked.sort(key=lambda r: (r[0], r[1]))
    return ranked


def iter_instances(h: Hypersequent) -> Iterator[RuleInstance]:
    """Yield the non-redundant instances in strategy order (none for axioms).

    Instances are ranked by :func:`open_premises`, then by the phase order
    of :func:`_candidates`.
    """
    if is_initial(h):
        return
    for _, _, cand in _ranked(h):
        yield instantiate(h, *cand)


def applicable_instances(h: Hypersequent) -> list[RuleInstance]:
    return list(iter_instances(h))


def first_instance(h: Hypersequent) -> RuleInstance | None:
    """The instance the search applies: the head of :func:`iter_instances`."""
    if is_initial(h):
        return None
    best = None
    for cand in _candidates(h):
        if _redundant(h, *cand):
            continue
        score = open_premises(h, *cand)
        if best is None or score < best[0]:
            best = (score, cand)
            if score == 0:
                break
    return None if best is None else instantiate(h, *best[1])


def is_saturated(h: Hypersequent) -> bool:
    if is_initial(h):
        return False
    return all(_redundant(h, tag, i, f, j) for tag, i, f, j in _candidates(h))
