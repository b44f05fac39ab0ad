"""Backward proof search: the decision procedure.

The search always applies the first non-redundant rule instance in the fixed
strategy order and expands every premise depth-first, left to right.  All
rules are invertible, so no choice is ever revisited.  The result is either a
closed proof tree or the first saturated leaf, from which a countermodel is
read off.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field

from .formula import Formula, is_bet_free, parse, render
from .hypersequent import Hypersequent, Sequent, hypersequent_from_json, hypersequent_to_json, is_initial
from .rules import first_instance
from .semantics import PreferenceModel, extract_model

__all__ = [
    "Principal", "ProofNode", "SearchStats", "Proven", "Refuted", "Verdict", "StepLimitExceeded",
    "decide", "decide_formula", "proof_to_json", "proof_from_json", "DEFAULT_MAX_STEPS",
]

DEFAULT_MAX_STEPS = 10**6
MAX_STEPS_ENV = "DYADIC_MAX_STEPS"


class StepLimitExceeded(RuntimeError):
    """The node-expansion cap fired.  On Bet-free input this indicates a bug."""

    def __init__(self, max_steps: int, stats: SearchStats):
        super().__init__(f"search exceeded {max_steps} node expansions")
        self.max_steps = max_steps
        self.stats = stats


@dataclass(frozen=True)
class Principal:
    component: int
    formula: Formula
    secondary: int | None = None


@dataclass
class ProofNode:
    conclusion: Hypersequent
    rule: str | None = None
    principal: Principal | None = None
    children: list[ProofNode] = field(default_factory=list)

    def size(self) -> int:
        count, stack = 0, [self]
        while stack:
            node = stack.pop()
            count += 1
            stack.extend(node.children)
        return count


@dataclass
class SearchStats:
    max_components: int = 0
    max_component_formulas: int = 0
    max_branch_length: int = 0
    nodes_expanded: int = 0

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class Proven:
    root: Sequent
    proof: ProofNode
    stats: SearchStats


@dataclass
class Refuted:
    root: Sequent
    saturated: Hypersequent
    model: PreferenceModel
    falsifying_world: int
    stats: SearchStats


Verdict = Proven | Refuted


def default_max_steps() -> int:
    value = os.environ.get(MAX_STEPS_ENV)
    return int(value) if value else DEFAULT_MAX_STEPS


def decide(root: Sequent, max_steps: int | None = None, allow_bet: bool = False) -> Verdict:
    """Decide the sequent ``root`` by irredundant backward search.

    Raises :class:`StepLimitExceeded` when more than ``max_steps`` nodes are
    expanded (default: ``$DYADIC_MAX_STEPS`` or 10**6).
    """
    if max_steps is None:
        max_steps = default_max_steps()
    if not allow_bet:
        for f in root.ant + root.suc:
            if not is_bet_free(f):
                raise ValueError(f"Bet is not part of the object language: {render(f)}")
    root = Sequent.of(root.ant, root.suc)
    stats = SearchStats()
    top = ProofNode(Hypersequent((root,)))
    stack = [(top, 0)]
    while stack:
        node, depth = stack.pop()
        h = node.conclusion
        stats.nodes_expanded += 1
        if stats.nodes_expanded > max_steps:
            raise StepLimitExceeded(max_steps, stats)
        stats.max_components = max(stats.max_components, len(h))
        stats.max_component_formulas = max(
            stats.max_component_formulas, max(c.formula_count() for c in h.components)
        )
        stats.max_branch_length = max(stats.max_branch_length, depth)
        if is_initial(h):
            continue
        inst = first_instance(h)
        if inst is None:
            model = extract_model(h)
            return Refuted(root, h, model, _falsifying_component(h, root), stats)
        node.rule = inst.tag
        node.principal = Principal(inst.principal_component, inst.principal_formula, inst.secondary_component)
        node.children = [ProofNode(p) for p in inst.premises]
        stack.extend((child, depth + 1) for child in reversed(node.children))
    return Proven(root, top, stats)


def _falsifying_component(h: Hypersequent, root: Sequent) -> int:
    for i, c in enumerate(h.components, 1):
        if root.ant_set <= c.ant_set and root.suc_set <= c.suc_set:
            return i
    raise AssertionError("root component lost during search")


def decide_formula(f: Formula, max_steps: int | None = None, allow_bet: bool = False) -> Verdict:
    return decide(Sequent.of((), (f,)), max_steps=max_steps, allow_bet=allow_bet)


# ---------------------------------------------------------------- JSON

PROOF_SCHEMA = {
    "$defs": {
        "formulas": {"type": "array", "items": {"type": "string"}},
        "hypersequent": {
            "type": "object",
            "required": ["components"],
            "properties": {
                "components": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["ant", "suc"],
                        "properties": {
                            "ant": {"$ref": "#/$defs/formulas"},
                            "suc": {"$ref": "#/$defs/formulas"},
                        },
                    },
                }
            },
        },
        "node": {
            "type": "object",
            "required": ["conclusion", "rule", "children"],
            "properties": {
                "conclusion": {"$ref": "#/$defs/hypersequent"},
                "rule": {"type": ["string", "null"]},
                "principal": {
                    "type": ["object", "null"],
                    "required": ["component", "formula"],
                    "properties": {
                        "component": {"type": "integer"},
                        "formula": {"type": "string"},
                        "secondary": {"type": ["integer", "null"]},
                    },
                },
                "children": {"type": "array", "items": {"$ref": "#/$defs/node"}},
            },
        },
    },
    "$ref": "#/$defs/node",
}


def proof_to_json(node: ProofNode) -> dict:
    principal = None
    if node.principal is not None:
        principal = {
            "component": node.principal.component,
            "formula": render(node.principal.formula),
            "secondary": node.principal.secondary,
        }
    return {
        "conclusion": hypersequent_to_json(node.conclusion),
        "rule": None if node.rule is None else str(node.rule),
        "principal": principal,
        "children": [proof_to_json(c) for c in node.children],
    }


def proof_from_json(data: dict, validate: bool = True) -> ProofNode:
    """Rebuild a proof tree; formulas are parsed with Bet allowed."""
    if validate:
        import jsonschema

        jsonschema.validate(data, PROOF_SCHEMA)
    principal = None
    if data.get("principal") is not None:
        p = data["principal"]
        principal = Principal(p["component"], parse(p["formula"], allow_bet=True), p.get("secondary"))
    return ProofNode(
        hypersequent_from_json(data["conclusion"]),
        data["rule"],
        principal,
        [proof_from_json(c, validate=False) for c in data["children"]],
    )
