"""Preference models: evaluation, countermodel extraction and a brute-force oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping

from .formula import Atom, Bet, Box, Formula, Impl, Neg, Oblig, atoms, children, is_bet_free
from .hypersequent import Hypersequent, bet_drop
from .rules import is_saturated

__all__ = [
    "PreferenceModel", "UnknownWorld", "NotSaturated", "EnumerationBudgetExceeded",
    "eval_formula", "best", "is_valid_in", "extension", "extract_model", "truth_lemma_check",
    "bounded_refute", "iter_models", "model_to_json", "model_from_json",
]


class UnknownWorld(KeyError):
    pass


class NotSaturated(ValueError):
    pass


class EnumerationBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PreferenceModel:
    """Worlds, a betterness relation and a valuation.

    ``succ`` holds pairs ``(better, worse)``.  No property of the relation is
    assumed: reflexive pairs and cycles are allowed.
    """

    worlds: tuple[int, ...]
    succ: frozenset[tuple[int, int]]
    valuation: Mapping[int, frozenset[str]]

    def __post_init__(self):
        if not self.worlds:
            raise ValueError("a preference model needs at least one world")
        ws = set(self.worlds)
        for x, y in self.succ:
            if x not in ws or y not in ws:
                raise ValueError(f"relation pair {(x, y)} mentions an unknown world")
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(self, "succ", frozenset(self.succ))
        object.__setattr__(
            self, "valuation", {w: frozenset(self.valuation.get(w, ())) for w in self.worlds}
        )

    def __hash__(self):
        return hash((self.worlds, self.succ))

    def better_than(self, x: int) -> list[int]:
        return [y for y, z in self.succ if z == x]


def extension(m: PreferenceModel, f: Formula, cache: dict | None = None) -> frozenset[int]:
    """The set of worlds of ``m`` where ``f`` holds."""
    if cache is None:
        cache = {}
    hit = cache.get(f)
    if hit is not None:
        return hit
    if isinstance(f, Atom):
        out = frozenset(w for w in m.worlds if f.name in m.valuation[w])
    elif isinstance(f, Neg):
        out = frozenset(m.worlds) - extension(m, f.child, cache)
    elif isinstance(f, Impl):
        left = extension(m, f.left, cache)
        right = extension(m, f.right, cache)
        out = frozenset(w for w in m.worlds if w not in left or w in right)
    elif isinstance(f, Box):
        out = frozenset(m.worlds) if len(extension(m, f.child, cache)) == len(m.worlds) else frozenset()
    elif isinstance(f, Bet):
        inner = extension(m, f.child, cache)
        out = frozenset(w for w in m.worlds if all(y in inner for y in m.better_than(w)))
    elif isinstance(f, Oblig):
        ok = _best(m, f.antecedent, cache) <= extension(m, f.consequent, cache)
        out = frozenset(m.worlds) if ok else frozenset()
    else:
        raise TypeError(f"not a formula: {f!r}")
    cache[f] = out
    return out


def _best(m: PreferenceModel, a: Formula, cache: dict) -> frozenset[int]:
    ext = extension(m, a, cache)
    return frozenset(y for y in ext if not any(z in ext for z in m.better_than(y)))


def best(m: PreferenceModel, f: Formula) -> frozenset[int]:
    """Worlds satisfying ``f`` with no strictly better ``f``-world."""
    return _best(m, f, {})


def eval_formula(m: PreferenceModel, w: int, f: Formula) -> bool:
    if w not in m.valuation:
        raise UnknownWorld(w)
    return w in extension(m, f)


def is_valid_in(m: PreferenceModel, f: Formula) -> bool:
    return len(extension(m, f)) == len(m.worlds)


# ---------------------------------------------------------------- countermodels

def extract_model(h: Hypersequent) -> PreferenceModel:
    """Read a model off a saturated hypersequent, one world per component.

    ``j`` is better than ``i`` when the Bet-bodies of antecedent ``i`` are all in
    antecedent ``j`` and some ``Bet C`` of succedent ``i`` has ``C`` in succedent ``j``.
    """
    if not is_saturated(h):
        raise NotSaturated("countermodels are only read off saturated hypersequents")
    return model_of(h)


def model_of(h: Hypersequent) -> PreferenceModel:
    """The same construction as :func:`extract_model`, without the saturation check."""
    comps = h.components
    worlds = tuple(range(1, len(comps) + 1))
    valuation = {
        i: frozenset(f.name for f in c.ant if isinstance(f, Atom)) for i, c in enumerate(comps, 1)
    }
    succ = set()
    for i, ci in enumerate(comps, 1):
        drop = set(bet_drop(ci))
        bets = [f.child for f in ci.suc if isinstance(f, Bet)]
        if not bets:
            continue
        for j, cj in enumerate(comps, 1):
            if drop <= cj.ant_set and any(b in cj.suc_set for b in bets):
                succ.add((j, i))
    return PreferenceModel(worlds, frozenset(succ), valuation)


def truth_lemma_check(h: Hypersequent, m: PreferenceModel) -> bool:
    """Every Bet-free antecedent formula of component ``i`` holds at world ``i``
    and every Bet-free succedent formula fails there."""
    if len(h) != len(m.worlds):
        return False
    cache: dict = {}
    for i, c in enumerate(h.components, 1):
        for f in c.ant:
            if is_bet_free(f) and i not in extension(m, f, cache):
                return False
        for f in c.suc:
            if is_bet_free(f) and i in extension(m, f, cache):
                return False
    return True


# ---------------------------------------------------------------- oracle

def _postorder(f: Formula) -> list[Formula]:
    out: dict[Formula, None] = {}

    def visit(g):
        if g in out:
            return
        for c in children(g):
            visit(c)
        out[g] = None

    visit(f)
    return list(out)


def _holds_mask(order, n, above, val_masks, full) -> int:
    """Mask of worlds where the last formula of ``order`` holds, computed on bitmasks."""
    ext: dict[Formula, int] = {}
    for g in order:
        if isinstance(g, Atom):
            v = val_masks[g.name]
        elif isinstance(g, Neg):
            v = full & ~ext[g.child]
        elif isinstance(g, Impl):
            v = (full & ~ext[g.left]) | ext[g.right]
        elif isinstance(g, Box):
            v = full if ext[g.child] == full else 0
        elif isinstance(g, Bet):
            inner = ext[g.child]
            v = 0
            for x in range(n):
                if above[x] & ~inner == 0:
                    v |= 1 << x
        else:
            a = ext[g.antecedent]
            best_mask = 0
            for y in range(n):
                if a >> y & 1 and above[y] & a == 0:
                    best_mask |= 1 << y
            v = full if best_mask & ~ext[g.consequent] == 0 else 0
        ext[g] = v
    return ext[order[-1]]


def iter_models(atom_names: list[str], max_worlds: int) -> Iterator[PreferenceModel]:
    """Every model with 1..max_worlds worlds over ``atom_names``, in a fixed order."""
    for n in range(1, max_worlds + 1):
        pairs = [(x, y) for x in range(1, n + 1) for y in range(1, n + 1)]
        for rel_bits in range(1 << len(pairs)):
            succ = frozenset(p for k, p in enumerate(pairs) if rel_bits >> k & 1)
            for vals in itertools.product(range(1 << len(atom_names)), repeat=n):
                valuation = {
                    w + 1: frozenset(a for k, a in enumerate(atom_names) if vals[w] >> k & 1)
                    for w in range(n)
                }
                yield PreferenceModel(tuple(range(1, n + 1)), succ, valuation)


def count_models(n_atoms: int, max_worlds: int) -> int:
    return sum((1 << (n * n)) * (1 << (n_atoms * n)) for n in range(1, max_worlds + 1))


def bounded_refute(
    f: Formula,
    max_worlds: int,
    atom_budget: int = 3,
    model_budget: int = 10**7,
) -> PreferenceModel | None:
    """Search all models with at most ``max_worlds`` worlds for one falsifying ``f``.

    Enumeration order: world count, then relation, then valuation.  Returns the
    first falsifying model or ``None``.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    names = atoms(f)
    if len(names) > atom_budget:
        raise ValueError(f"{len(names)} atoms exceed the budget of {atom_budget}")
    if count_models(len(names), max_worlds) > model_budget:
        raise EnumerationBudgetExceeded(
            f"{count_models(len(names), max_worlds)} models exceed the budget of {model_budget}"
        )
    order = _postorder(f)
    for n in range(1, max_worlds + 1):
        full = (1 << n) - 1
        pairs = [(x, y) for x in range(n) for y in range(n)]
        for rel_bits in range(1 << len(pairs)):
            above = [0] * n  # above[y]: worlds better than y
            for k, (x, y) in enumerate(pairs):
                if rel_bits >> k & 1:
                    above[y] |= 1 << x
            for vals in itertools.product(range(1 << len(names)), repeat=n):
                val_masks = {}
                for k, a in enumerate(names):
                    mask = 0
                    for w in range(n):
                        if vals[w] >> k & 1:
                            mask |= 1 << w
                    val_masks[a] = mask
                if _holds_mask(order, n, above, val_masks, full) != full:
                    succ = frozenset(
                        (x + 1, y + 1) for k, (x, y) in enumerate(pairs) if rel_bits >> k & 1
                    )
                    valuation = {
                        w + 1: frozenset(a for k, a in enumerate(names) if vals[w] >> k & 1)
                        for w in range(n)
                    }
                    return PreferenceModel(tuple(range(1, n + 1)), succ, valuation)
    return None


# ---------------------------------------------------------------- JSON

MODEL_SCHEMA = {
    "type": "object",
    "required": ["worlds", "succ", "valuation"],
    "properties": {
        "worlds": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
        "succ": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        },
        "valuation": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "string"}},
        },
    },
}


def model_to_json(m: PreferenceModel) -> dict:
    return {
        "worlds": list(m.worlds),
        "succ": [list(p) for p in sorted(m.succ)],
        "valuation": {str(w): sorted(m.valuation[w]) for w in m.worlds},
    }


def model_from_json(data: dict) -> PreferenceModel:
    import jsonschema

    jsonschema.validate(data, MODEL_SCHEMA)
    worlds = tuple(data["worlds"])
    valuation = {int(k): frozenset(v) for k, v in data["valuation"].items()}
    unknown = set(valuation) - set(worlds)
    if unknown:
        raise ValueError(f"valuation mentions unknown worlds {sorted(unknown)}")
    return PreferenceModel(worlds, frozenset(tuple(p) for p in data["succ"]), valuation)
