"""Engine, codec, and operator behavior on small hand-checkable instances."""

from __future__ import annotations

import random

import pytest

from quasivariety import (
    AtomEnumeration,
    GuardError,
    SaturationEngine,
    apply_operator,
    closure,
    complement_op_maximal,
    complement_op_uniform,
    complement_witness,
    converse_maximal_rules,
    converse_presentation_rules,
    derivation_decode,
    enumeration_of,
    find_derivation,
    g_map,
    identity_operator,
    pair,
    presentation_operator,
    recover_from_bound,
    replay_rules,
    rule,
    sequence_code,
    stream_from_rules,
    unpair,
)
from quasivariety.finite import brute_closure, brute_reduction, random_quasivariety
from quasivariety.operators import TableOperator


def test_pairing_roundtrip():
    for code in range(2000):
        x, n = unpair(code)
        assert pair(x, n) == code
    rng = random.Random(7)
    for _ in range(200):
        x, n = rng.randrange(10**6), rng.randrange(10**6)
        assert unpair(pair(x, n)) == (x, n)


def test_stream_from_rules_dedup_and_bounds():
    rs = stream_from_rules([rule([0], 1), rule([0], 1), rule([1], 2)])
    assert rs.declared_finite == 2
    assert rs.rule_at(0) == rule([0], 1)
    assert rs.rule_at(5) is None
    with pytest.raises(ValueError):
        rs.rule_at(-1)


def test_closure_matches_brute_force_on_seeded_instances():
    for seed in range(30):
        q = random_quasivariety(random.Random(seed), max_n=6, max_rules=12)
        stream = q.stream()
        for mask in range(1 << q.n):
            seeds = [i for i in range(q.n) if mask >> i & 1]
            got = closure(seeds, stream, len(q.rules))
            assert got.derived == brute_closure(q, seeds)
            assert got.fixpoint_certified


def test_closure_budget_monotone():
    q = random_quasivariety(random.Random(3), max_n=6, max_rules=12)
    stream = q.stream()
    prev: frozenset[int] = frozenset()
    for budget in range(len(q.rules) + 1):
        cur = closure([0], stream, budget).derived
        assert prev <= cur
        prev = cur


def test_engine_emission_log_is_stable_prefixwise():
    rs = stream_from_rules([rule([], 0), rule([0], 1), rule([1], 2)])
    eng = SaturationEngine([], rs)
    eng.advance(1)
    first = eng.enumeration().emits
    eng.advance(2)
    assert eng.enumeration().emits[: len(first)] == first
    assert eng.derived == {0, 1, 2}


def test_derivation_sequence_replays():
    rs = stream_from_rules([rule([0], 1), rule([1, 0], 2), rule([2], 3)])
    eng = SaturationEngine([0], rs)
    eng.advance(3)
    # seeds carry the empty derivation
    assert eng.derivation_sequence(0) == ()
    for atom in (1, 2, 3):
        seq = eng.derivation_sequence(atom)
        assert replay_rules(rs, seq, atom) == frozenset({0})


def test_replay_rejects_wrong_target_and_gaps():
    rs = stream_from_rules([rule([0], 1), rule([1], 2)])
    assert replay_rules(rs, (0, 1), 2) == frozenset({0})
    assert replay_rules(rs, (0, 1), 1) is None  # last conclusion must be the target
    assert replay_rules(rs, (9,), 1) is None  # index past the stream
    assert replay_rules(rs, (), 0) == frozenset({0})  # reflexive axiom


def test_sequence_code_roundtrips_through_decode():
    rs = stream_from_rules([rule([0], 1), rule([1], 2)])
    code = sequence_code((0, 1))
    assert code is not None
    assert derivation_decode(rs, 2, code) == frozenset({0})
    # over the bits cap the codec refuses rather than building a huge int
    assert sequence_code((1 << 20,), bits_cap=8) is None


def test_find_derivation_validates_hints():
    rs = stream_from_rules([rule([0], 1), rule([1], 2)])

    def bad_hint(stream, target, base):
        return (1, 0)  # wrong order, does not replay to target

    seq = find_derivation(rs, 2, frozenset({0}), hint=bad_hint)
    assert seq is not None
    assert replay_rules(rs, seq, 2) <= frozenset({0})


def test_presentation_operator_presents_closure():
    rs = stream_from_rules([rule([0], 1), rule([1], 2)])
    f = presentation_operator(rs)
    # membership in the closure of {0} shows up at some code
    hits = {x for x in range(3) for n in range(64) if (s := f.eval(x, n)) is not None and s <= {0}}
    assert hits == {0, 1, 2}


def test_apply_operator_identity_recovers_source():
    src = enumeration_of([4, 1, 3])
    out = apply_operator(identity_operator(), src, 40)
    assert set(out.atoms()) == {4, 1, 3}


def test_enumeration_rejects_duplicates_and_disorder():
    with pytest.raises(ValueError):
        AtomEnumeration(((1, 0), (1, 1)))
    with pytest.raises(ValueError):
        AtomEnumeration(((1, 5), (2, 3)))


def test_complement_witness_maximal_point():
    # universe {0,1,2}; X = {0,1} is maximal: adding 2 forces everything
    rs = stream_from_rules([rule([0], 1), rule([2], 0), rule([2], 1)])
    f = presentation_operator(rs)
    g = complement_op_maximal(f, anchor=2)
    assert complement_witness(g, 2, frozenset({0, 1})) is not None
    assert complement_witness(g, 1, frozenset({0, 1})) is None


def test_complement_witness_uniform_anchors():
    rs = stream_from_rules([rule([0], 1), rule([2], 0), rule([2], 1)])
    f = presentation_operator(rs)
    g = complement_op_uniform(f, anchors=[0, 1, 2])
    wit = complement_witness(g, 2, frozenset({0, 1}))
    assert wit is not None


def _table_instance():
    # certifies the complement of X = {0, 1}: g(2) = 1, g(3) = 0
    table = {
        (2, 0): frozenset({3}),
        (2, 1): frozenset({0, 1}),
        (3, 0): frozenset({0}),
        (0, 0): frozenset({2}),
    }
    return TableOperator(table, code_bound=2)


def test_g_map_reports_least_codes():
    f = _table_instance()
    entries = g_map(f, enumeration_of([0, 1]), 64)
    values = {e.atom: e.value for e in entries}
    assert values == {2: 1, 3: 0}


def test_recover_from_bound_reconstructs_the_point():
    table = _table_instance()

    def eval_fn(x: int, n: int):
        # atoms past the universe stay out by certifying themselves
        if x >= 4:
            return frozenset({x}) if n == 0 else None
        return table.eval(x, n)

    from quasivariety import FunctionOperator

    f = FunctionOperator(eval_fn)
    got = recover_from_bound(f, lambda x: 2, enumeration_of([2, 3]), 64)
    assert set(got.atoms()) == {0, 1}


def test_converse_presentation_rules_reproduce_points():
    rng = random.Random(11)
    for _ in range(10):
        q = random_quasivariety(rng, max_n=5, max_rules=8)
        b = frozenset(rng.sample(range(q.n), rng.randint(0, q.n)))
        a = brute_closure(q, b) | b
        f = brute_reduction(a, b, q.n)
        back = converse_presentation_rules(f, atom_bound=q.n)
        got = closure(sorted(b), back, 2 * q.n).derived
        assert got == a


def test_converse_maximal_rules_make_the_set_maximal():
    universe = range(4)
    a = {0, 2}
    f = brute_reduction(sorted(set(universe) - a), sorted(a), 4)
    rs = converse_maximal_rules(f, atom_bound=4)
    stream_budget = 4 * 4 * 2
    assert closure(sorted(a), rs, stream_budget).derived == frozenset(a)
    for x in set(universe) - a:
        got = closure(sorted(a | {x}), rs, stream_budget).derived
        assert got == frozenset(universe)


def test_closure_rejects_negative_budget():
    rs = stream_from_rules([rule([0], 1)])
    with pytest.raises(ValueError):
        closure([0], rs, -1)
