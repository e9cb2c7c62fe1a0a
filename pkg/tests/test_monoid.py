from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from chargedcodes.code import FiniteCode, PowerCode, classify_code, parse
from chargedcodes.errors import NotInStar, ResourceLimit
from chargedcodes.monoid import (
    Dfa,
    dfa_of_star,
    egg_box,
    egg_box_text,
    eta,
    green_summary,
    is_group_code,
    syntactic_monoid,
    transition_monoid,
)
from chargedcodes.words import Alphabet

AB = Alphabet.of("ab")
SHORT_WORDS = [w for w in oracles.all_words(2, 3) if w]


def in_star(X, w):
    try:
        parse(X, w)
        return True
    except NotInStar:
        return False


def small_codes():
    for r in (1, 2, 3):
        for words in combinations(SHORT_WORDS, r):
            X = FiniteCode(AB, words)
            if classify_code(X).is_code:
                yield X


def as_partition(blocks):
    return frozenset(frozenset(b) for b in blocks)


def test_square_code_monoid_is_cyclic_of_order_two():
    M = syntactic_monoid(PowerCode(2), AB)
    assert len(M) == 2
    assert green_summary(M).is_group
    assert eta(M, AB.word("ab")) == M.identity == eta(M, ())
    assert eta(M, AB.word("a")) == eta(M, AB.word("b"))


@pytest.mark.parametrize("n", range(1, 9))
def test_power_codes_are_group_codes(n):
    r = is_group_code(PowerCode(n), AB)
    assert r.group and r.order == n


def test_non_group_code():
    assert not is_group_code(FiniteCode.parse("a,ba", AB)).group


def test_prefix_code_monoid_shape():
    X = FiniteCode.parse("a,ba", AB)
    dfa = dfa_of_star(X)
    assert dfa.states == 3
    M = transition_monoid(dfa)
    G = green_summary(M)
    assert len(M) == 6
    assert [M.show(i) for i in G.minimal_ideal] == ["bb"]
    assert "J-class" in egg_box_text(M, G)
    assert sum(box["size"] for box in egg_box(M, G)) == len(M)


def test_dfa_json_round_trip():
    dfa = dfa_of_star(FiniteCode.parse("ab,ba", AB))
    assert Dfa.from_json(dfa.to_json(), AB) == dfa


def test_monoid_cap():
    with pytest.raises(ResourceLimit):
        transition_monoid(dfa_of_star(PowerCode(8), AB), cap=3)


def test_star_dfa_matches_unique_parsing():
    for X in list(small_codes())[::7]:
        dfa = dfa_of_star(X)
        for w in oracles.all_words(2, 7):
            assert dfa.accepts(w) == in_star(X, w)


@given(st.sets(st.sampled_from(SHORT_WORDS), min_size=1, max_size=3))
def test_transition_monoid_product_is_concatenation(words):
    X = FiniteCode(AB, tuple(words))
    M = syntactic_monoid(X)
    dfa = dfa_of_star(X)
    for i in range(len(M)):
        for j in range(len(M)):
            w = M.representatives[i] + M.representatives[j]
            assert M.mul(i, j) == eta(M, w)
            assert M.elements[M.mul(i, j)] == tuple(dfa.run(w, q) for q in range(dfa.states))


def test_green_matches_naive_oracle_on_small_codes():
    checked = 0
    for X in small_codes():
        M = syntactic_monoid(X)
        if len(M) > 60:
            continue
        G = green_summary(M)
        ref = oracles.naive_green(M.mul, len(M))
        for name in ("R", "L", "J", "H"):
            assert as_partition(getattr(G, name)) == ref[name], (X.show(), name)
        # the minimal ideal is the least J-class: contained in every two-sided ideal
        z = G.minimal_ideal[0]
        assert all(any(M.mul(M.mul(x, i), y) == z for x in range(len(M)) for y in range(len(M)))
                   for i in range(len(M)))
        e = next(i for i in G.max_subgroup if M.is_idempotent(i))
        assert all(M.mul(e, g) == g == M.mul(g, e) for g in G.max_subgroup)
        checked += 1
    assert checked > 300
