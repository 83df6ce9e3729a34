"""Finite universes: lattice structure, pattern conversion, file formats."""

from __future__ import annotations

import random

import pytest

from quasivariety import GuardError, ParseError, PreconditionError
from quasivariety.finite import (
    FiniteQuasivariety,
    PartialMap,
    PartialMapFamily,
    all_points,
    brute_closure,
    check_intersection_closed,
    finite_quasivariety,
    format_partial_map_file,
    format_rule_file,
    is_discriminator,
    is_point,
    join,
    maximal_points,
    meet,
    parse_partial_map_file,
    parse_rule_file,
    pi01_to_rules,
    random_quasivariety,
)


def _instances(count: int = 25):
    rng = random.Random(0)
    return [random_quasivariety(rng) for _ in range(count)]


def test_all_points_contains_universe_and_is_intersection_closed():
    for q in _instances():
        points = all_points(q)
        assert q.universe() in points
        pset = set(points)
        for a in points:
            for b in points:
                assert a & b in pset


def test_meet_join_lattice_laws():
    for q in _instances(10):
        points = all_points(q)
        sample = points[:: max(1, len(points) // 6)]
        for a in sample:
            for b in sample:
                lo, hi = meet(q, a, b), join(q, a, b)
                assert lo == a & b
                assert is_point(q, lo) and is_point(q, hi)
                assert lo <= a <= hi and lo <= b <= hi
                assert join(q, a, lo) == a and meet(q, a, hi) == a


def test_meet_rejects_non_points():
    q = finite_quasivariety(3, [([0], 1)])
    with pytest.raises(ValueError):
        meet(q, frozenset({0}), frozenset({1}))
    with pytest.raises(ValueError):
        join(q, frozenset(), frozenset({0}))


def test_maximal_points_have_only_the_universe_above():
    for q in _instances(10):
        points = set(all_points(q))
        for m in maximal_points(q):
            above = {p for p in points if m < p}
            assert above == {q.universe()} or (m == q.universe() and not above)


def test_discriminator_definition():
    # 0 -> 1 on three atoms: X = closure({0}) = {0, 1}
    q = finite_quasivariety(3, [([0], 1)])
    x = brute_closure(q, [0])
    assert is_discriminator(q, x, frozenset({2}))
    assert not is_discriminator(q, x, frozenset())
    # a discriminator may not meet X itself
    assert not is_discriminator(q, x, frozenset({0, 2}))


def test_pi01_single_zero_maps_convert_verbatim():
    fam = PartialMapFamily(
        (PartialMap(frozenset({0}), frozenset({1})),
         PartialMap(frozenset({1, 2}), frozenset({0}))),
        3,
    )
    q = pi01_to_rules(fam)
    got = {(tuple(sorted(r.premises)), r.conclusion) for r in q.rules}
    assert got == {((0,), 1), ((1, 2), 0)}


def test_pi01_multi_zero_maps_need_completion():
    # jointly the two maps force atom 2 into every member
    fam = PartialMapFamily(
        (PartialMap(frozenset({1}), frozenset({2})),
         PartialMap(frozenset(), frozenset({1, 2}))),
        3,
    )
    q = pi01_to_rules(fam)
    assert set(all_points(q)) == set(fam.class_members())
    assert all(2 in p for p in all_points(q))


def test_pi01_point_sets_match_on_seeded_families():
    rng = random.Random(5)
    done = 0
    while done < 40:
        n = rng.randint(1, 4)
        maps = []
        for _ in range(rng.randint(1, 3)):
            atoms = rng.sample(range(n), rng.randint(1, n))
            split = rng.randint(0, len(atoms) - 1)
            ones, zeros = frozenset(atoms[:split]), frozenset(atoms[split:])
            maps.append(PartialMap(ones, zeros))
        fam = PartialMapFamily(tuple(maps), n)
        if not check_intersection_closed(fam):
            continue
        q = pi01_to_rules(fam)
        assert set(all_points(q)) == set(fam.class_members())
        done += 1


def test_pi01_rejects_family_excluding_the_universe():
    fam = PartialMapFamily((PartialMap(frozenset({0}), frozenset()),), 1)
    with pytest.raises(PreconditionError) as err:
        pi01_to_rules(fam)
    assert err.value.witness is not None


def test_pi01_rejects_non_intersection_closed_family():
    # only the empty set is excluded; {0} and {1} are members
    fam = PartialMapFamily((PartialMap(frozenset(), frozenset({0, 1})),), 2)
    with pytest.raises(PreconditionError) as err:
        pi01_to_rules(fam)
    a, b = err.value.witness
    assert a & b not in set(fam.class_members())


def test_rule_file_roundtrip():
    for q in _instances(10):
        assert parse_rule_file(format_rule_file(q)) == q


def test_rule_file_accepts_comments_and_empty_premises():
    text = "# two atoms\nuniverse finite 2\n-> 0  # axiom\n0 -> 1\n"
    q = parse_rule_file(text)
    assert brute_closure(q, []) == frozenset({0, 1})


def test_rule_file_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 1"):
        parse_rule_file("universe finite\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_rule_file("universe finite 2\n0 1\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_rule_file("universe finite 2\n0 -> 7\n")


def test_partial_map_file_roundtrip():
    fam = PartialMapFamily(
        (PartialMap(frozenset({0}), frozenset({1})),
         PartialMap(frozenset({2}), frozenset({0, 1}))),
        3,
    )
    assert parse_partial_map_file(format_partial_map_file(fam)) == fam


def test_partial_map_rejects_overlap():
    with pytest.raises(ValueError):
        PartialMap(frozenset({0}), frozenset({0}))


def test_random_quasivariety_is_seed_deterministic():
    a = random_quasivariety(random.Random(42))
    b = random_quasivariety(random.Random(42))
    assert a == b


def test_class_members_guard():
    fam = PartialMapFamily((PartialMap(frozenset({0}), frozenset()),), 25)
    with pytest.raises(GuardError):
        fam.class_members()
