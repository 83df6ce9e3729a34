"""Forbidden-language rules, minimality, and recurrence bounds for SFTs."""

from __future__ import annotations

import random

import pytest

from quasivariety import ParseError, SaturationEngine, replay_rules
from quasivariety.subshift import (
    FIBONACCI,
    Alphabet,
    SftPresentation,
    WindowOperator,
    budget_for_length,
    forbidden_seeds,
    forbidden_words,
    format_sft_file,
    is_minimal_sft,
    minimal_complement_hint,
    oracle_from_sft,
    parse_sft_file,
    quasiperiodicity,
    sft_language_oracle,
    subshift_rules,
    substitution_stream,
    word_rank,
    word_unrank,
    words_up_to,
)

AB = Alphabet("ab")
ORBIT = SftPresentation(AB, frozenset({(0, 0), (1, 1)}))  # orbit of (ab)^infinity
GOLDEN_MEAN = SftPresentation(AB, frozenset({(1, 1)}))
FULL = SftPresentation(AB, frozenset())


def test_word_rank_roundtrip():
    for size in (1, 2, 3):
        for r in range(300):
            assert word_rank(size, word_unrank(size, r)) == r


def test_alphabet_string_codec():
    assert AB.word_to_str(()) == "-"
    assert AB.word_from_str("-") == ()
    assert AB.word_from_str("abba") == (0, 1, 1, 0)
    with pytest.raises(ValueError):
        AB.word_from_str("abc")


def test_language_oracle_on_orbit():
    lang = sft_language_oracle(ORBIT, 4)
    assert {w for w in lang if len(w) == 4} == {(0, 1, 0, 1), (1, 0, 1, 0)}
    assert () in lang
    assert (0, 0) not in lang


def test_forbidden_words_complement_the_language():
    for p in (ORBIT, GOLDEN_MEAN, FULL):
        for length in range(5):
            admissible = sft_language_oracle(p, length)
            everything = {word_unrank(2, r)
                          for r in range(words_up_to(2, length - 1), words_up_to(2, length))}
            assert forbidden_words(p, length) >= everything - admissible or length == 0


def test_engine_derives_exactly_the_forbidden_language():
    rng = random.Random(2)
    for _ in range(8):
        forb = set()
        for _ in range(rng.randint(0, 3)):
            forb.add(tuple(rng.randrange(2) for _ in range(rng.randint(1, 3))))
        p = SftPresentation(AB, frozenset(forb))
        length = 5
        eng = SaturationEngine(forbidden_seeds(p), subshift_rules(AB))
        eng.advance(budget_for_length(AB, length))
        window = range(words_up_to(2, length))
        got = {r for r in eng.derived if r in window}
        want = {word_rank(2, w) for w in forbidden_words(p, length)}
        assert got == want


def test_derivations_replay_to_forbidden_seeds():
    eng = SaturationEngine(forbidden_seeds(ORBIT), subshift_rules(AB))
    eng.advance(budget_for_length(AB, 4))
    stream = subshift_rules(AB)
    seeds = set(forbidden_seeds(ORBIT))
    for atom in sorted(eng.derived)[:40]:
        seq = eng.derivation_sequence(atom)
        assert replay_rules(stream, seq, atom) <= seeds | {atom}


def test_minimality_check():
    assert is_minimal_sft(ORBIT)
    assert not is_minimal_sft(GOLDEN_MEAN)
    assert not is_minimal_sft(FULL)


def test_quasiperiodicity_of_the_orbit():
    lang = oracle_from_sft(ORBIT)
    assert quasiperiodicity(lang, 1, 32) == 2
    assert quasiperiodicity(lang, 2, 32) == 3
    assert quasiperiodicity(lang, 3, 32) == 4
    # a too-small search cap reports no bound
    assert quasiperiodicity(lang, 3, 2) is None


def test_quasiperiodicity_bound_is_tight():
    lang = oracle_from_sft(ORBIT)
    for n in (1, 2, 3):
        g = quasiperiodicity(lang, n, 32)
        for big in lang(g):
            for small in lang(n):
                assert any(big[i : i + n] == small for i in range(g - n + 1))
        assert any(
            all(big[i : i + n] != small for i in range(g - 1 - n + 1))
            for big in lang(g - 1)
            for small in lang(n)
        )


def test_complement_hint_replays_for_admissible_words():
    stream = subshift_rules(AB)
    hint = minimal_complement_hint(ORBIT, 10)
    seeds = {word_rank(2, w) for w in forbidden_words(ORBIT, 10)}
    lang = oracle_from_sft(ORBIT)
    for length in range(7):
        for w in lang(length):
            atom = word_rank(2, w)
            base = frozenset(seeds | {atom})
            seq = hint(stream, 0, base)
            assert seq is not None, w
            assert replay_rules(stream, seq, 0) <= base


def test_window_operator_certifies_via_the_bound():
    op = WindowOperator(AB, max_window=8)
    forb = {word_rank(2, w) for w in forbidden_words(ORBIT, 8)}
    # every length-3 word omitting ab is forbidden: certifies ab admissible
    ev = op.eval(word_rank(2, (0, 1)), 3)
    assert ev is not None and ev <= forb
    # no window certifies the forbidden word aa within the cap
    for n in range(9):
        ev = op.eval(word_rank(2, (0, 0)), n)
        if ev is not None:
            assert not ev <= forb
    assert op.eval(0, 9) is None


def test_fibonacci_substitution_language():
    lang, forb = substitution_stream(FIBONACCI, AB, 4)
    assert lang(1) == {(0,), (1,)}
    assert lang(2) == {(0, 0), (0, 1), (1, 0)}
    assert quasiperiodicity(lang, 1, 32) == 3
    # the enumeration lists the complement; bb is its first word
    assert forb.atom_at(0) == word_rank(2, (1, 1))


def test_substitution_requires_primitivity():
    with pytest.raises(ValueError):
        substitution_stream({0: (0,), 1: (1,)}, AB, 4)


def test_sft_file_roundtrip():
    assert parse_sft_file(format_sft_file(ORBIT)) == ORBIT
    assert parse_sft_file("universe subshift ab\n") == FULL


def test_sft_file_errors():
    with pytest.raises(ParseError, match="line 1"):
        parse_sft_file("universe subshift\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_sft_file("universe subshift ab\nforbid xz\n")
