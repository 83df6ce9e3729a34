"""Exact rational polynomials: arithmetic, codecs, and the ideal rules."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from quasivariety import GuardError, ParseError, SaturationEngine, replay_rules
from quasivariety.polyideal import (
    ONE_POLY,
    ZERO_POLY,
    bezout_cofactors,
    check_irreducible,
    format_ideal_file,
    ideal_rules,
    parse_ideal_file,
    poly,
    poly_add,
    poly_count,
    poly_degree,
    poly_divmod,
    poly_from_str,
    poly_height,
    poly_mul,
    poly_rank,
    poly_sub,
    poly_to_str,
    poly_unrank,
    poly_xgcd,
    principal_membership,
    rational_at,
    rational_index,
    rational_root,
    scaling_rule_index,
    unit_derivation,
)


def _random_poly(rng: random.Random, max_deg: int = 4) -> tuple:
    deg = rng.randint(0, max_deg)
    coeffs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(deg + 1)]
    return poly(coeffs)


def test_poly_constructor_strips_leading_zeros():
    assert poly([1, 2, 0, 0]) == poly([1, 2])
    assert poly([0, 0]) == ZERO_POLY
    assert poly_degree(ZERO_POLY) == -1
    assert poly_degree(poly([3, 0, 5])) == 2


def test_ring_laws_on_random_samples():
    rng = random.Random(9)
    for _ in range(60):
        a, b, c = (_random_poly(rng) for _ in range(3))
        assert poly_add(a, b) == poly_add(b, a)
        assert poly_mul(a, b) == poly_mul(b, a)
        assert poly_mul(a, poly_add(b, c)) == poly_add(poly_mul(a, b), poly_mul(a, c))
        assert poly_sub(a, a) == ZERO_POLY


def test_divmod_invariant():
    rng = random.Random(10)
    for _ in range(80):
        p = _random_poly(rng)
        q = _random_poly(rng)
        if q == ZERO_POLY:
            continue
        quot, rem = poly_divmod(p, q)
        assert poly_add(poly_mul(quot, q), rem) == p
        assert poly_degree(rem) < poly_degree(q)


def test_divmod_rejects_zero_divisor():
    with pytest.raises(GuardError):
        poly_divmod(ONE_POLY, ZERO_POLY)


def test_principal_membership_is_divisibility():
    rng = random.Random(11)
    for _ in range(80):
        p = _random_poly(rng, 3)
        q = _random_poly(rng, 4)
        if p == ZERO_POLY:
            continue
        _, rem = poly_divmod(q, p)
        assert principal_membership(p, q) == (rem == ZERO_POLY)


def test_xgcd_bezout_identity():
    rng = random.Random(12)
    for _ in range(60):
        a, b = _random_poly(rng), _random_poly(rng)
        g, x, y = poly_xgcd(a, b)
        assert poly_add(poly_mul(x, a), poly_mul(y, b)) == g
        if g != ZERO_POLY:
            assert g[-1] == 1  # monic


def test_bezout_cofactors_for_coprime_pairs():
    p, q = poly([1, 0, 1]), poly([0, 1])  # t^2+1 and t share no root
    got = bezout_cofactors(p, q)
    assert got is not None
    r, s = got
    assert poly_add(poly_mul(r, q), poly_mul(s, p)) == ONE_POLY
    assert bezout_cofactors(p, p) is None


def test_poly_string_literals():
    assert poly_from_str("0") == ZERO_POLY
    assert poly_from_str("3/2t^2-1t+4") == poly([4, -1, Fraction(3, 2)])
    assert poly_from_str("t^3+t") == poly([0, 1, 0, 1])
    assert poly_to_str(poly([4, -1, Fraction(3, 2)])) == "3/2t^2-1t+4"
    assert poly_to_str(ZERO_POLY) == "0"
    with pytest.raises(ParseError):
        poly_from_str("2x+1")


def test_poly_string_roundtrip_random():
    rng = random.Random(13)
    for _ in range(300):
        p = _random_poly(rng)
        assert poly_from_str(poly_to_str(p)) == p


def test_rational_codec_roundtrip():
    for i in range(1000):
        assert rational_index(rational_at(i)) == i
    rng = random.Random(14)
    for _ in range(200):
        r = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        assert rational_at(rational_index(r)) == r


def test_poly_rank_roundtrip_and_landmarks():
    for r in range(2000):
        assert poly_rank(poly_unrank(r)) == r
    assert poly_rank(ZERO_POLY) == 0
    assert poly_rank(ONE_POLY) == 2
    assert poly_rank(poly([1, 0, 1])) == 100
    assert poly_count(2) == 343
    assert poly_count(4) == 6436343


def test_poly_rank_respects_height():
    for r in range(poly_count(2)):
        assert poly_height(poly_unrank(r)) <= 2


def test_ideal_closure_is_sound_and_reaches_multiples():
    gen = poly([1, 0, 1])
    stream = ideal_rules()
    idx = scaling_rule_index(poly_rank(poly([0, 1])), poly_rank(gen))
    eng = SaturationEngine([poly_rank(gen)], stream)
    eng.advance(idx + 1)
    assert poly_rank(poly([0, 1, 0, 1])) in eng.derived  # t * (t^2+1)
    for atom in list(eng.derived)[:200]:
        assert principal_membership(gen, poly_unrank(atom))


def test_unit_ideal_closure_swallows_small_polys():
    stream = ideal_rules()
    idx = scaling_rule_index(poly_rank(poly([0, 1])), poly_rank(ONE_POLY))
    eng = SaturationEngine([poly_rank(ONE_POLY)], stream)
    eng.advance(idx + 1)
    assert poly_rank(poly([0, 1])) in eng.derived


def test_unit_derivation_replays():
    p, q = poly([1, 0, 1]), poly([0, 1])
    seq = unit_derivation(p, q)
    assert seq is not None
    leaves = replay_rules(ideal_rules(), seq, poly_rank(ONE_POLY))
    assert leaves is not None
    assert leaves <= {poly_rank(p), poly_rank(q)}
    assert unit_derivation(p, p) is None
    assert unit_derivation(p, ZERO_POLY) is None


def test_rational_root_search():
    assert rational_root(poly([-3, 2])) == Fraction(3, 2)
    assert rational_root(poly([-1, 0, 1])) in (1, -1)
    assert rational_root(poly([1, 0, 1])) is None
    assert rational_root(poly([0, 1])) == 0


def test_check_irreducible():
    check_irreducible(poly([1, 0, 1]))
    check_irreducible(poly([-1, 1]))  # linear polynomials always pass
    with pytest.raises(GuardError):
        check_irreducible(poly([-1, 0, 1]))
    with pytest.raises(GuardError):
        check_irreducible(poly([5]))
    with pytest.raises(GuardError):
        check_irreducible(ZERO_POLY)


def test_ideal_file_roundtrip():
    gens = (poly([1, 0, 1]), poly([0, Fraction(1, 2)]))
    assert parse_ideal_file(format_ideal_file(gens)) == gens
