from __future__ import annotations

import pytest
from hypothesis import given

from dyadic.formula import (
    BOTTOM, TOP, Atom, Bet, BetNotAllowed, Box, Impl, Neg, Oblig, ParseError,
    atoms, complexity, parse, render, size, sub_plus, subformulas,
)
from strategies import formulas

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_parse_obligation():
    assert parse("O(q/p)") == Oblig(q, p)


def test_parse_s5_axiom_shape():
    assert parse("~[]p -> []~[]p") == Impl(Neg(Box(p)), Box(Neg(Box(p))))


def test_conjunction_desugars():
    assert parse("p & q") == Neg(Impl(p, Neg(q)))


def test_other_sugar():
    assert parse("p | q") == Impl(Neg(p), q)
    assert parse("<>p") == Neg(Box(Neg(p)))
    assert parse("p <-> q") == parse("(p -> q) & (q -> p)")
    assert parse("true") == TOP
    assert parse("false") == BOTTOM == Neg(TOP)


def test_precedence():
    assert parse("p & q | r") == parse("(p & q) | r")
    assert parse("p | q -> r") == parse("(p | q) -> r")
    assert parse("p -> q -> r") == Impl(p, Impl(q, r))
    assert parse("~p -> q") == Impl(Neg(p), q)
    assert parse("[]p -> q") == Impl(Box(p), q)
    assert parse("p -> q <-> r") == parse("(p -> q) <-> r")


def test_obligation_arguments_are_full_formulas():
    assert parse("O(p -> q/r & p)") == Oblig(Impl(p, q), parse("r & p"))


@pytest.mark.parametrize("text, pos", [
    ("p ->", 4),
    ("(p", 2),
    ("p q", 2),
    ("O(p)", 3),
    ("p $ q", 2),
    ("", 0),
    ("P", 0),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == pos


def test_bet_needs_permission():
    with pytest.raises(BetNotAllowed):
        parse("Bet p")
    assert parse("Bet ~p", allow_bet=True) == Bet(Neg(p))


def test_render_examples():
    assert render(Oblig(q, p)) == "O(q/p)"
    assert render(Box(Neg(p))) == "[]~p"
    assert render(Bet(Neg(p))) == "Bet ~p"
    assert render(Impl(Impl(p, q), r)) == "(p -> q) -> r"
    assert render(Impl(p, Impl(q, r))) == "p -> q -> r"
    assert render(Neg(Impl(p, q))) == "~(p -> q)"
    assert render(Oblig(Neg(p), TOP)) == "O(~p/true)"
    assert render(BOTTOM) == "false"


@given(formulas(with_bet=True))
def test_render_parse_roundtrip(f):
    assert parse(render(f), allow_bet=True) == f


def test_sub_plus():
    assert sub_plus(Oblig(q, p)) == {p, q, Oblig(q, p), Bet(Neg(p))}
    assert sub_plus(p) == {p}
    assert sub_plus(Neg(p)) == {p, Neg(p)}


def test_complexity():
    assert complexity(p) == 0
    assert complexity(Oblig(p, q)) == 3
    assert complexity(Box(Neg(p))) == 2


def test_size_counts_nodes():
    assert size(p) == 1
    assert size(Oblig(q, Impl(p, p))) == 5


def test_atoms_in_first_occurrence_order():
    assert atoms(parse("O(r/q) -> p -> r")) == ["r", "q", "p"]


@given(formulas())
def test_subformulas_contain_self_and_children(f):
    subs = subformulas(f)
    assert f in subs
    assert len(subs) <= size(f)
    assert sub_plus(f) >= subs


@given(formulas(with_bet=True))
def test_formulas_hash_structurally(f):
    g = parse(render(f), allow_bet=True)
    assert g == f and hash(g) == hash(f)
