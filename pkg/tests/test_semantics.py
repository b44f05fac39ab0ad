from __future__ import annotations

import pytest
from hypothesis import given, settings

from dyadic.formula import Atom, Bet, Box, Impl, Neg, Oblig, parse
from dyadic.hypersequent import single
from dyadic.semantics import (
    EnumerationBudgetExceeded, NotSaturated, PreferenceModel, UnknownWorld, best,
    bounded_refute, count_models, eval_formula, extract_model, is_valid_in, iter_models,
    model_from_json, model_of, model_to_json, truth_lemma_check,
)
from gentle import MODEL, MODEL_EMPTY, SATURATED_1, SATURATED_2
from strategies import formulas, models

p = Atom("p")


def test_bet_is_vacuous_without_better_worlds():
    m = PreferenceModel((1,), frozenset(), {1: frozenset()})
    assert eval_formula(m, 1, Bet(p))


def test_bet_looks_at_better_worlds():
    m = PreferenceModel((1, 2), frozenset({(2, 1)}), {1: frozenset(), 2: frozenset({"p"})})
    assert eval_formula(m, 1, Bet(p))
    assert not eval_formula(m, 1, Bet(Neg(p)))


def test_reference_model():
    assert eval_formula(MODEL, 1, parse("O(g/k)"))
    assert eval_formula(MODEL, 2, parse("O(~k/true)"))
    assert eval_formula(MODEL, 1, parse("[](g->k)"))
    assert is_valid_in(MODEL, parse("O(g/k)"))
    assert not is_valid_in(MODEL, parse("O(k/true)"))
    assert best(MODEL, parse("true")) == {2}


def test_empty_relation_model_fails_killing_obligation():
    assert not eval_formula(MODEL_EMPTY, 1, parse("O(k/true)"))
    assert not eval_formula(MODEL_EMPTY, 2, parse("O(k/true)"))


def test_validity():
    assert is_valid_in(MODEL, parse("p -> p"))
    assert not is_valid_in(MODEL, parse("k"))


def test_unknown_world():
    with pytest.raises(UnknownWorld):
        eval_formula(MODEL, 7, p)


def test_relation_must_stay_inside_worlds():
    with pytest.raises(ValueError):
        PreferenceModel((1,), frozenset({(1, 2)}), {})


@pytest.mark.parametrize("h, model", [(SATURATED_1, MODEL), (SATURATED_2, MODEL_EMPTY)],
                         ids=["consistency", "non-derivability"])
def test_extraction_matches_reference_models(h, model):
    m = extract_model(h)
    assert m.worlds == model.worlds
    assert m.succ == model.succ
    assert m.valuation == model.valuation
    assert truth_lemma_check(h, m)


def test_single_component_extraction():
    m = extract_model(single([p], [Atom("q")]))
    assert m.worlds == (1,) and m.succ == frozenset() and m.valuation[1] == {"p"}


def test_extraction_refuses_unsaturated():
    with pytest.raises(NotSaturated):
        extract_model(single([], [Impl(p, p)]))


def test_corrupted_model_breaks_truth_lemma():
    broken = PreferenceModel(MODEL.worlds, MODEL.succ, {1: frozenset({"k"}), 2: frozenset()})
    assert not truth_lemma_check(SATURATED_1, broken)


def test_model_of_skips_saturation_check():
    assert model_of(single([], [Impl(p, p)])).worlds == (1,)


def test_bounded_refute_examples():
    m = bounded_refute(Box(p), 1)
    assert m.worlds == (1,) and m.valuation[1] == frozenset()
    assert bounded_refute(Impl(p, p), 3) is None
    assert bounded_refute(parse("O(q/p) -> O(q/p & r)"), 3) is not None


def test_bounded_refute_limits():
    with pytest.raises(ValueError):
        bounded_refute(p, 0)
    with pytest.raises(ValueError):
        bounded_refute(parse("a & b & c & d"), 1)
    with pytest.raises(EnumerationBudgetExceeded):
        bounded_refute(parse("p & q & r"), 4, model_budget=1000)


def test_iter_models_count():
    assert sum(1 for _ in iter_models(["p"], 2)) == count_models(1, 2) == 2 * 2 + 16 * 4


@settings(max_examples=40, deadline=None)
@given(formulas(("p", "q"), max_leaves=5))
def test_bounded_refute_agrees_with_evaluator(f):
    # the bitmask oracle and the set evaluator are independent implementations
    found = bounded_refute(f, 2)
    expected = next((m for m in iter_models(["p", "q"], 2) if not is_valid_in(m, f)), None)
    assert (found is None) == (expected is None)
    if found is not None:
        assert not is_valid_in(found, f)


@given(models())
def test_model_json_roundtrip(m):
    assert model_from_json(model_to_json(m)) == m


@settings(max_examples=50, deadline=None)
@given(formulas(max_leaves=6), models())
def test_s5_box_and_dyadic_obligation_are_global(f, m):
    for g in (Box(f), Oblig(f, p)):
        values = {eval_formula(m, w, g) for w in m.worlds}
        assert len(values) == 1
