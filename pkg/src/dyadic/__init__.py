"""Proof search and countermodel construction for dyadic deontic logic E."""

from .formula import Atom, Bet, Box, Formula, Impl, Neg, Oblig, ParseError, parse, render
from .hypersequent import Hypersequent, Sequent, parse_sequent
from .search import Proven, Refuted, decide, decide_formula
from .semantics import PreferenceModel, eval_formula, is_valid_in

__all__ = [
    "Atom", "Bet", "Box", "Formula", "Impl", "Neg", "Oblig", "ParseError", "parse", "render",
    "Hypersequent", "Sequent", "parse_sequent",
    "Proven", "Refuted", "decide", "decide_formula",
    "PreferenceModel", "eval_formula", "is_valid_in",
]
