"""Free group codec, normal closures, and the simple-quotient decision."""

from __future__ import annotations

import random

import pytest

from quasivariety import (
    ParseError,
    SaturationEngine,
    complement_op_below_family,
    complement_witness,
    presentation_operator,
    replay_rules,
)
from quasivariety.groups import (
    Decision,
    GroupPresentation,
    conjugate,
    decide_word_simple,
    format_group_file,
    group_rules,
    icosahedral_oracle,
    icosahedral_presentation,
    inverse,
    parse_group_file,
    product,
    reduce_word,
    reduced_count,
    reduced_up_to,
    simple_membership_test,
    simplicity_profile,
    word_from_str,
    word_rank,
    word_to_str,
    word_unrank,
    z_certificate_budget,
    z_family,
)


def test_reduce_word_cancels_adjacent_inverses():
    assert reduce_word((0, 1)) == ()
    assert reduce_word((0, 2, 3, 1)) == ()
    assert reduce_word((0, 0, 1)) == (0,)


def test_word_group_laws():
    rng = random.Random(1)
    words = [tuple(rng.randrange(4) for _ in range(rng.randrange(6))) for _ in range(50)]
    for w in words:
        w = reduce_word(w)
        assert product(w, inverse(w)) == ()
        assert inverse(inverse(w)) == w
    u, v = reduce_word((0, 2)), reduce_word((2, 2, 1))
    assert conjugate(u, v) == reduce_word(v + u + inverse(v))


def test_reduced_count_formula():
    assert reduced_count(2, 0) == 1
    for n in range(1, 6):
        assert reduced_count(2, n) == 4 * 3 ** (n - 1)
    assert reduced_up_to(2, 6) == 1457


def test_word_rank_roundtrip():
    for k in (1, 2, 3):
        for r in range(400):
            assert word_rank(k, word_unrank(k, r)) == r


def test_word_rank_orders_by_length():
    prev_len = 0
    for r in range(200):
        w = word_unrank(2, r)
        assert len(w) >= prev_len
        prev_len = len(w)


def test_word_string_codec():
    assert word_to_str(()) == "-"
    assert word_from_str("-", 2) == ()
    assert word_from_str("abAB", 2) == (0, 2, 1, 3)
    assert word_to_str((0, 2, 1, 3)) == "abAB"
    with pytest.raises(ValueError):
        word_from_str("c", 1)


def test_icosahedral_relator_ranks():
    assert icosahedral_presentation().relator_ranks() == [5, 43, 46746]


def test_presentation_rejects_unreduced_relators():
    with pytest.raises(ValueError):
        GroupPresentation(1, frozenset({(0, 1)}))


def test_oracle_is_the_sixty_element_group():
    oracle = icosahedral_oracle()
    assert oracle.order == 60
    for r in icosahedral_presentation().relators:
        assert oracle.word_is_identity(r)
    assert not oracle.word_is_identity(word_from_str("ab", 2))


def test_normal_closure_emissions_are_kernel_words():
    pres = icosahedral_presentation()
    oracle = icosahedral_oracle()
    eng = SaturationEngine(pres.relator_ranks(), group_rules(2))
    eng.advance(4000)
    stream = group_rules(2)
    relators = set(pres.relator_ranks())
    for atom in list(eng.derived)[:60]:
        assert oracle.word_is_identity(word_unrank(2, atom))
        seq = eng.derivation_sequence(atom)
        assert replay_rules(stream, seq, atom) <= relators | {atom}


def test_decide_matches_oracle_on_short_words():
    pres = icosahedral_presentation()
    oracle = icosahedral_oracle()
    for r in range(reduced_up_to(2, 3)):
        w = word_unrank(2, r)
        verdict = decide_word_simple(pres, w)
        want = Decision.EQUAL if oracle.word_is_identity(w) else Decision.NOT_EQUAL
        assert verdict is want, word_to_str(w)


def test_decide_examples_and_cap_semantics():
    pres = icosahedral_presentation()
    assert decide_word_simple(pres, word_from_str("aa", 2)) is Decision.EQUAL
    assert decide_word_simple(pres, word_from_str("ab", 2)) is Decision.NOT_EQUAL
    assert decide_word_simple(pres, word_from_str("ab", 2), cap=0) is Decision.UNDECIDED


def test_decide_on_prime_cyclic_quotient():
    z5 = GroupPresentation(1, frozenset({(0,) * 5}))
    assert decide_word_simple(z5, ()) is Decision.EQUAL
    assert decide_word_simple(z5, (0,) * 5) is Decision.EQUAL
    for m in (1, 2, 3, 4, 6, 7):
        assert decide_word_simple(z5, (0,) * m) is Decision.NOT_EQUAL


def test_simplicity_profile_ball_maxima():
    prof = simplicity_profile(icosahedral_oracle(), 3, 4)
    assert prof.ball_maxima == {1: 4, 2: 4, 3: 4}


def test_simple_membership_test_matches_oracle():
    oracle = icosahedral_oracle()
    for text in ("aa", "bbb", "ab", "ba", "abab"):
        w = word_from_str(text, 2)
        assert simple_membership_test(oracle, w, 6) == oracle.word_is_identity(w)


def test_z_family_certifies_powers_of_the_generator():
    g = complement_op_below_family(presentation_operator(group_rules(1)), z_family())
    seen = frozenset({word_rank(1, ())})
    for m in (1, 2, 3, -1, -2):
        letters = (0,) * m if m > 0 else (1,) * (-m)
        atom = word_rank(1, letters)
        wit = complement_witness(g, atom, seen, budget=z_certificate_budget(m))
        assert wit is not None, m
    # the empty word lies in the point itself
    assert complement_witness(g, word_rank(1, ()), seen, budget=1) is None


def test_z_certificate_budget_values():
    assert z_certificate_budget(3) == 1
    assert z_certificate_budget(-2) == 14


def test_group_file_roundtrip():
    pres = icosahedral_presentation()
    assert parse_group_file(format_group_file(pres)) == pres


def test_group_file_errors():
    with pytest.raises(ParseError, match="line 1"):
        parse_group_file("universe group\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_group_file("universe group 1\nrelator c\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_group_file("universe group 2\nrelator aA\n")
