import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chargedcodes.errors import InvalidInput
from chargedcodes.language import (
    FactorSet,
    classify_words,
    complexity,
    extension_graph,
    is_recurrent_up_to,
    is_uniformly_recurrent_up_to,
    rauzy_graph,
)
from chargedcodes.words import Alphabet

AB = Alphabet.of("ab")


def naive_uniform_R(F, k):
    """Least R with every k-factor inside every R-factor, by linear scan."""
    target = set(F.words(k))
    for R in range(k, F.max_length + 1):
        if all(target <= {w[i:i + k] for i in range(R - k + 1)} for w in F.words(R)):
            return R
    return None


def test_fibonacci_is_dendric(fib_F):
    c = classify_words(fib_F, 8)
    assert c.dendric and c.connected


def test_s012_letter_one_is_disconnected(F012, s012):
    one = s012.alphabet.word("1")
    g = extension_graph(F012, one)
    assert set(g.edges) == {(0, 2), (2, 0)}
    assert g.shape() == "disconnected"
    c = classify_words(F012, 3)
    assert not c.connected and c.first_with("disconnected") == one


def test_extension_graph_window_check(fib_F):
    with pytest.raises(InvalidInput):
        extension_graph(fib_F, fib_F.words(19)[0])
    with pytest.raises(InvalidInput):
        extension_graph(fib_F, AB.word("bb"))


def test_rauzy_graph_edges(fib_F):
    g = rauzy_graph(fib_F, 2)
    assert len(g.vertices) == 3 and len(g.edges) == 4


def test_recurrence_of_substitution_languages(fib_F, tm_F):
    assert is_recurrent_up_to(fib_F, 10).recurrent
    assert is_recurrent_up_to(tm_F, 10).recurrent


def test_non_recurrent_language():
    # factors of a^inf b^inf: no path from b back to a
    F = FactorSet.from_words(AB, [AB.word("a" * 12 + "b" * 12)], 8)
    r = is_recurrent_up_to(F, 3)
    assert not r.recurrent and r.failing_order == 1


def test_periodic_language_complexity():
    F = FactorSet.from_periodic(AB, AB.word("ab"), 10)
    assert [complexity(F, k) for k in range(11)] == [1] + [2] * 10
    assert is_uniformly_recurrent_up_to(F, 3).R == 4


@pytest.mark.parametrize("k", range(1, 6))
def test_uniform_recurrence_matches_linear_scan(fib_F, tm_F, k):
    assert is_uniformly_recurrent_up_to(fib_F, k).uniform
    for F in (fib_F, tm_F):
        u = is_uniformly_recurrent_up_to(F, k)
        expected = naive_uniform_R(F, k)
        assert u.R == expected and u.uniform == (expected is not None)


def test_uniform_recurrence_failure_reports_counterexample():
    F = FactorSet.from_words(AB, [AB.word("a" * 12 + "b" * 12)], 8)
    u = is_uniformly_recurrent_up_to(F, 1)
    assert not u.uniform
    assert u.counterexample not in {u.witness_window[i:i + 1] for i in range(8)}


def test_uniform_recurrence_range_errors(fib_F):
    with pytest.raises(InvalidInput):
        is_uniformly_recurrent_up_to(fib_F, 20)
    with pytest.raises(InvalidInput):
        is_uniformly_recurrent_up_to(fib_F, 0)


def test_json_round_trip(F012):
    text = F012.dumps()
    assert FactorSet.from_json(json.loads(text)) == F012
    assert F012.restrict(5).max_length == 5


def test_from_json_rejects_non_factorial():
    with pytest.raises(InvalidInput):
        FactorSet.from_json({"alphabet": ["a", "b"], "L": 2, "factors": [["a"], ["ab"]]})


@given(st.lists(st.sampled_from("ab"), min_size=1, max_size=30).map("".join), st.integers(1, 8))
def test_from_words_is_factorial(text, L):
    F = FactorSet.from_words(AB, [AB.word(text)], L)
    assert F.is_factorial()
    for k in range(1, L + 1):
        assert set(F.words(k)) == {AB.word(text[i:i + k]) for i in range(len(text) - k + 1)}


@given(st.lists(st.sampled_from("ab"), min_size=1, max_size=6).map("".join), st.integers(0, 6))
def test_periodic_words_are_uniformly_recurrent(period, extra):
    # a window of length |period| + 1 already holds every letter of the period
    L = len(period) + 1 + extra
    F = FactorSet.from_periodic(AB, AB.word(period), L)
    assert is_recurrent_up_to(F, L - 1).recurrent
    assert is_uniformly_recurrent_up_to(F, 1).uniform
