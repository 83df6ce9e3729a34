"""Named acceptance suites shared by the CLI and the test battery.

Each suite checks one theorem-backed behaviour end to end at desk scale,
against independent brute-force oracles, and reports a pass/fail flag
plus a deterministic count string.  Seeded randomness only; identical
seeds give identical reports.  Suites with a published wall-clock limit
fail when they exceed it.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from . import finite, groups, polyideal, subshift
from .certify import certified_complement, complement_witness, sequence_code
from .engine import SaturationEngine, closure
from .enumeration import enumeration_of
from .operators import (
    FunctionOperator,
    apply_operator,
    complement_op_below_family,
    complement_op_discriminated,
    complement_op_maximal,
    complement_op_uniform,
    converse_maximal_rules,
    converse_presentation_rules,
    family_from_sets,
    g_map,
    presentation_operator,
    recover_from_bound,
)

INSTANCE_COUNT = 50
SOUNDNESS_SCAN = 256  # operator codes exhaustively scanned per atom

TIME_LIMITS: dict[str, float] = {
    "closure-laws": 10.0,
    "presentation": 60.0,
    "simple-group": 300.0,
    "pi01": 60.0,
}


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


class _Tally:
    """Check counter that keeps the first few failure descriptions."""

    def __init__(self) -> None:
        self.checks = 0
        self.failures: list[str] = []

    def check(self, ok: bool, label: str) -> None:
        self.checks += 1
        if not ok and len(self.failures) < 5:
            self.failures.append(label)

    def report(self, summary: str) -> tuple[bool, str]:
        if self.failures:
            return False, f"{summary}; failed: " + " | ".join(self.failures)
        return True, summary


def _seeded_instances(seed: int) -> list[finite.FiniteQuasivariety]:
    rng = random.Random(seed)
    return [finite.random_quasivariety(rng) for _ in range(INSTANCE_COUNT)]


def _subsets(n: int) -> Iterable[frozenset[int]]:
    for mask in range(1 << n):
        yield frozenset(i for i in range(n) if mask >> i & 1)


# ---------------------------------------------------------------------------
# 1. Closure-operator laws, engine against brute-force fixpoint


def _closure_laws(seed: int) -> tuple[bool, str]:
    instances = _seeded_instances(seed)
    t = _Tally()
    subsets = 0
    for q in instances:
        stream = q.stream()
        by_mask: dict[int, frozenset[int]] = {}
        for mask in range(1 << q.n):
            y = frozenset(i for i in range(q.n) if mask >> i & 1)
            brute = finite.brute_closure(q, y)
            res = closure(y, stream, len(q.rules))
            t.check(res.derived == brute, f"engine != brute at n={q.n} seeds={sorted(y)}")
            t.check(res.fixpoint_certified, "finite run left fixpoint uncertified")
            t.check(y <= brute, f"not extensive at seeds={sorted(y)}")
            t.check(finite.brute_closure(q, brute) == brute, f"not idempotent at seeds={sorted(y)}")
            by_mask[mask] = brute
            subsets += 1
        for mask in range(1 << q.n):
            sub = mask
            while True:
                t.check(by_mask[sub] <= by_mask[mask], "not monotone")
                if sub == 0:
                    break
                sub = (sub - 1) & mask
    return t.report(f"{len(instances)} instances, {subsets} subsets, {t.checks} checks")


# ---------------------------------------------------------------------------
# 2. Derivation codes present exactly the closure of every subset


def _presentation(seed: int) -> tuple[bool, str]:
    instances = _seeded_instances(seed)
    t = _Tally()
    max_code_bits = 0
    for q in instances:
        stream = q.stream()
        f = presentation_operator(stream)
        scanned: dict[tuple[int, int], frozenset[int]] = {}
        for a in range(q.n):
            for n in range(SOUNDNESS_SCAN):
                e = f.eval(a, n)
                if e is not None:
                    scanned[(a, n)] = e
        for y in _subsets(q.n):
            brute = finite.brute_closure(q, y)
            eng = SaturationEngine(y, stream)
            eng.advance(len(q.rules))
            reached: set[int] = set()
            for a in sorted(brute):
                code = sequence_code(eng.derivation_sequence(a))
                t.check(code is not None, "derivation code exceeded the bit cap")
                if code is None:
                    continue
                ev = f.eval(a, code)
                t.check(ev is not None and ev <= y,
                        f"explicit code fails at atom {a}, seeds={sorted(y)}")
                max_code_bits = max(max_code_bits, code.bit_length())
                reached.add(a)
            hits = {a for (a, _n), e in scanned.items() if e <= y}
            t.check(hits <= brute, f"scanned code certifies a non-member, seeds={sorted(y)}")
            t.check(reached == brute, f"presented set mismatch, seeds={sorted(y)}")
    return t.report(
        f"{len(instances)} instances, codes to {SOUNDNESS_SCAN} scanned, "
        f"witness codes up to {max_code_bits} bits, {t.checks} checks"
    )


# ---------------------------------------------------------------------------
# 3. Reduction tables induce spaces whose least point over B is A


def _converse_presentation(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    t = _Tally()
    for trial in range(50):
        n = rng.randint(2, 6)
        a_set = frozenset(i for i in range(n) if rng.getrandbits(1))
        b_set = frozenset(x for x in a_set if rng.random() < 0.6)
        f = finite.brute_reduction(a_set, b_set, n)
        stream = converse_presentation_rules(f, atom_bound=n)
        res = closure(b_set, stream, 2 * n)
        t.check(res.derived == a_set | b_set,
                f"trial {trial}: closure({sorted(b_set)}) != {sorted(a_set)}")
    return t.report(f"50 seeded pairs, {t.checks} checks")


# ---------------------------------------------------------------------------
# 4. Complements of maximal points, anchored and uniform operators


def _maximal_complement(seed: int) -> tuple[bool, str]:
    instances = _seeded_instances(seed)
    t = _Tally()
    maximal_seen = 0
    for q in instances:
        f = presentation_operator(q.stream())
        universe = q.universe()
        for x in finite.maximal_points(q):
            maximal_seen += 1
            comp = universe - x
            anchored = certified_complement(
                complement_op_maximal(f, min(comp)), range(q.n), x)
            t.check(set(anchored) == comp, f"anchored complement mismatch at X={sorted(x)}")
            uniform = certified_complement(
                complement_op_uniform(f, sorted(universe)), range(q.n), x)
            t.check(set(uniform) == comp, f"uniform complement mismatch at X={sorted(x)}")
            for wit in itertools.chain(anchored.values(), uniform.values()):
                t.check(wit.evaluation <= x, f"evaluation leaks outside X={sorted(x)}")
    return t.report(
        f"{len(instances)} instances, {maximal_seen} maximal points, {t.checks} checks")


# ---------------------------------------------------------------------------
# 5. Complement below a presented family: the free-group demo and finite spaces


def _below_family(seed: int) -> tuple[bool, str]:
    t = _Tally()
    f1 = presentation_operator(groups.group_rules(1))
    gz = complement_op_below_family(f1, groups.z_family())
    point = frozenset({groups.word_rank(1, ())})
    for m in [*range(1, 11), *range(-1, -11, -1)]:
        w = (0,) * m if m > 0 else (1,) * (-m)
        wit = complement_witness(gz, groups.word_rank(1, w), point,
                                 budget=groups.z_certificate_budget(m))
        t.check(
            wit is not None and wit.evaluation <= point and wit.family_index == abs(m) - 1,
            f"power {m} not certified")

    rng = random.Random(seed)
    instances = _seeded_instances(seed)
    covered = 0
    for q in instances:
        points = finite.all_points(q)
        universe = q.universe()
        proper = sorted((p for p in points if p != universe), key=lambda s: (len(s), sorted(s)))
        if not proper:
            continue
        picks = {proper[-1], rng.choice(proper), rng.choice(proper)}
        f = presentation_operator(q.stream())
        for x in sorted(picks, key=lambda s: (len(s), sorted(s))):
            above = sorted((p for p in points if x < p), key=lambda s: (len(s), sorted(s)))
            fam = family_from_sets(above)
            wits = certified_complement(complement_op_below_family(f, fam), range(q.n), x)
            t.check(set(wits) == universe - x, f"family complement mismatch at X={sorted(x)}")
            covered += 1
    return t.report(f"20 powers, {covered} finite points, {t.checks} checks")


# ---------------------------------------------------------------------------
# 6. Converse-maximality rules make every chosen subset maximal


def _converse_maximality(seed: int) -> tuple[bool, str]:
    t = _Tally()
    universe = frozenset(range(5))
    total_points = 0
    for a_set in _subsets(5):
        f = finite.brute_reduction(universe - a_set, a_set, 5)
        stream = converse_maximal_rules(f, atom_bound=5)
        rules = [r for r in (stream.rule_at(i) for i in range(50)) if r is not None]
        space = finite.FiniteQuasivariety(5, tuple(rules))
        points = finite.all_points(space)
        total_points += len(points)
        t.check(a_set in points, f"A={sorted(a_set)} lost point status")
        t.check(all(p == universe for p in points if a_set < p),
                f"A={sorted(a_set)} not maximal")
    return t.report(f"32 subsets, {total_points} points checked, {t.checks} checks")


# ---------------------------------------------------------------------------
# 7. Discriminator-driven complements on finite spaces


def _discriminator(seed: int) -> tuple[bool, str]:
    instances = _seeded_instances(seed)
    t = _Tally()
    pairs = 0
    for q in instances:
        f = presentation_operator(q.stream())
        universe = q.universe()
        points = finite.all_points(q)
        sample = sorted(points, key=lambda s: (len(s), sorted(s)))[:12]
        for x in sample:
            comp = universe - x
            t.check(finite.is_discriminator(q, x, comp),
                    f"complement of X={sorted(x)} rejected as discriminator")
            comp_list = sorted(comp)
            found: list[frozenset[int]] = []
            for mask in range(1 << len(comp_list)):
                y = frozenset(comp_list[i] for i in range(len(comp_list)) if mask >> i & 1)
                if finite.is_discriminator(q, x, y):
                    found.append(y)
                    if len(found) == 3:
                        break
            if comp not in found:
                found.append(comp)
            for y in found:
                gd = complement_op_discriminated(f, enumeration_of(sorted(y)))
                wits = certified_complement(gd, range(q.n), x)
                t.check(set(wits) == comp,
                        f"X={sorted(x)} Y={sorted(y)} complement mismatch")
                pairs += 1
    return t.report(f"{len(instances)} instances, {pairs} (X, Y) pairs, {t.checks} checks")


# ---------------------------------------------------------------------------
# 8. Word problem of the (2,3,5) triangle quotient, against permutations


def _simple_group(seed: int) -> tuple[bool, str]:
    pres = groups.icosahedral_presentation()
    oracle = groups.icosahedral_oracle()
    total = agree = undecided = 0
    for rank in range(groups.reduced_up_to(2, 6)):
        w = groups.word_unrank(2, rank)
        verdict = groups.decide_word_simple(pres, w, oracle=oracle)
        total += 1
        if verdict is groups.Decision.UNDECIDED:
            undecided += 1
        elif (verdict is groups.Decision.EQUAL) == oracle.word_is_identity(w):
            agree += 1
    passed = undecided == 0 and agree == total
    return passed, f"{total} words to length 6, {agree} agree, {undecided} undecided"


# ---------------------------------------------------------------------------
# 9. Minimal subshift: complement sweep, bound recovery, Fibonacci value


def _minimal_subshift(seed: int) -> tuple[bool, str]:
    t = _Tally()
    alpha = subshift.Alphabet("ab")
    p = subshift.SftPresentation(alpha, frozenset({(0, 0), (1, 1)}))
    t.check(subshift.is_minimal_sft(p), "orbit presentation not recognized as minimal")

    seen = frozenset(subshift.word_rank(2, w) for w in subshift.forbidden_words(p, 12))
    g = complement_op_maximal(
        presentation_operator(subshift.subshift_rules(alpha)), subshift.word_rank(2, ()))
    hint = subshift.minimal_complement_hint(p, 12)
    certified = certified_complement(
        g, range(subshift.words_up_to(2, 10)), seen, budget=None, hint=hint)
    admissible = {subshift.word_rank(2, w) for w in subshift.sft_language_oracle(p, 10)}
    t.check(set(certified) == admissible,
            f"certified {len(certified)} words, expected {len(admissible)}")

    raw = apply_operator(g, enumeration_of(sorted(seen)), 600)
    raw_atoms = {a for a, _ in raw.emits}
    t.check(raw_atoms <= admissible and subshift.word_rank(2, ()) in raw_atoms,
            "raw dovetail unsound or missed the empty word")

    lang = subshift.oracle_from_sft(p)
    bound = {n: subshift.quasiperiodicity(lang, n, 12) for n in range(9)}
    t.check(all(v is not None for v in bound.values()), "quasiperiodicity cap exceeded")
    t.check(bound[1] == 2 and bound[2] == 3, f"unexpected bounds {bound[1]}, {bound[2]}")
    recovered: set[int] = set()
    if all(v is not None for v in bound.values()):
        win = subshift.WindowOperator(alpha, max_window=12)
        comp_src = enumeration_of(
            sorted(subshift.word_rank(2, w) for n in range(10) for w in lang(n)))
        rec = recover_from_bound(
            win, lambda x: bound[len(subshift.word_unrank(2, x))], comp_src,
            subshift.words_up_to(2, 8))
        recovered = {a for a, _ in rec.emits}
        forbidden = {subshift.word_rank(2, w) for w in subshift.forbidden_words(p, 8)}
        t.check(recovered == forbidden,
                f"recovered {len(recovered)} forbidden words, expected {len(forbidden)}")

    fib_lang, _ = subshift.substitution_stream(subshift.FIBONACCI, subshift.Alphabet("ab"), 6)
    t.check(subshift.quasiperiodicity(fib_lang, 1, 8) == 3, "Fibonacci bound at 1 is not 3")
    return t.report(
        f"{len(certified)} complement words, {len(recovered)} recovered, {t.checks} checks")


# ---------------------------------------------------------------------------
# 10. Least-success maps: emitted values exact, bound recovery exact


def _g_map(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    t = _Tally()
    for trial in range(30):
        n = rng.randint(2, 5)
        universe = frozenset(range(n))
        x_set = frozenset(i for i in range(n)
                          if rng.getrandbits(1)) & frozenset(range(n - 1))
        comp = universe - x_set
        cb = rng.randint(1, 3)
        table: dict[tuple[int, int], frozenset[int]] = {}
        for atom in range(n):
            for i in range(cb):
                if rng.random() < 0.6:
                    table[(atom, i)] = frozenset(rng.sample(range(n), rng.randint(0, n)))
        for atom in comp:
            if not any(table.get((atom, i), universe) <= x_set for i in range(cb)):
                table[(atom, rng.randrange(cb))] = frozenset(
                    s for s in x_set if rng.random() < 0.7)
        for atom in x_set:
            for i in range(cb):
                e = table.get((atom, i))
                if e is not None and e <= x_set:
                    table[(atom, i)] = e | {min(comp)}

        def eval_fn(a: int, i: int, tab=table, nn=n) -> Optional[frozenset[int]]:
            if a < nn:
                return tab.get((a, i))
            return frozenset({a}) if i == 0 else None

        f = FunctionOperator(eval_fn)
        exact = {atom: min(i for i in range(cb) if table.get((atom, i), universe) <= x_set)
                 for atom in comp}
        entries = g_map(f, enumeration_of(sorted(x_set)), 64)
        t.check({e.atom for e in entries} == comp, f"trial {trial}: wrong atom set")
        t.check(all(e.value == exact[e.atom] for e in entries),
                f"trial {trial}: value above the exhaustive minimum")
        rec = recover_from_bound(f, lambda a: exact.get(a, 0), enumeration_of(sorted(comp)), 64)
        t.check({a for a, _ in rec.emits} == x_set, f"trial {trial}: recovery mismatch")
    return t.report(f"30 seeded operators, {t.checks} checks")


# ---------------------------------------------------------------------------
# 11. Effectively closed classes convert to rules with identical points


def _all_partial_maps(n: int) -> list[finite.PartialMap]:
    out = []
    for assign in itertools.product((0, 1, 2), repeat=n):
        ones = frozenset(i for i, a in enumerate(assign) if a == 1)
        zeros = frozenset(i for i, a in enumerate(assign) if a == 2)
        if ones or zeros:
            out.append(finite.PartialMap(ones, zeros))
    return out


def _pi01(seed: int) -> tuple[bool, str]:
    t = _Tally()
    maps3 = _all_partial_maps(3)
    total = passing = 0
    for k in range(4):
        for combo in itertools.combinations(maps3, k):
            total += 1
            fam = finite.PartialMapFamily(tuple(combo), 3)
            if not finite.check_intersection_closed(fam):
                continue
            passing += 1
            converted = finite.pi01_to_rules(fam)
            t.check(set(finite.all_points(converted)) == set(fam.class_members()),
                    f"n=3 family {[(sorted(m.ones), sorted(m.zeros)) for m in combo]}")
    rng = random.Random(seed)
    maps4 = _all_partial_maps(4)
    sampled = 0
    while sampled < 200:
        fam = finite.PartialMapFamily(tuple(rng.sample(maps4, rng.randint(1, 3))), 4)
        if not finite.check_intersection_closed(fam):
            continue
        sampled += 1
        converted = finite.pi01_to_rules(fam)
        t.check(set(finite.all_points(converted)) == set(fam.class_members()),
                "n=4 seeded family mismatch")
    return t.report(
        f"{total} families exhaustive at n=3 ({passing} pass the precondition), "
        f"{sampled} seeded at n=4, {t.checks} checks")


# ---------------------------------------------------------------------------
# 12. Principal-ideal demo agrees with the division oracle through height 4


def _ideal_demo(seed: int) -> tuple[bool, str]:
    rep = polyideal.maximal_ideal_demo(polyideal.poly([1, 0, 1]))
    detail = (
        f"budget {rep.budget}: {rep.emitted} sound emissions, "
        f"{len(rep.certified)} certificates (complete: {rep.certificates_complete}), "
        f"sweep {rep.sweep_total} polynomials / {rep.sweep_members} members, "
        f"{rep.sweep_disagreements} disagreements, {rep.identity_failures} identity failures, "
        f"{rep.replayed} replayed ({rep.replay_failures} failed)"
    )
    return rep.ok, detail


# ---------------------------------------------------------------------------
# Registry and runners


SUITES: dict[str, Callable[[int], tuple[bool, str]]] = {
    "closure-laws": _closure_laws,
    "presentation": _presentation,
    "converse-presentation": _converse_presentation,
    "maximal-complement": _maximal_complement,
    "below-family": _below_family,
    "converse-maximality": _converse_maximality,
    "discriminator": _discriminator,
    "simple-group": _simple_group,
    "minimal-subshift": _minimal_subshift,
    "g-map": _g_map,
    "pi01": _pi01,
    "ideal-demo": _ideal_demo,
}


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    """Run one named suite; enforces its wall-clock limit if it has one."""
    fn = SUITES[name]
    start = time.perf_counter()
    passed, detail = fn(seed)
    elapsed = time.perf_counter() - start
    limit = TIME_LIMITS.get(name)
    if limit is not None and elapsed >= limit:
        passed = False
        detail += f"; exceeded the {limit:.0f}s limit"
    return SuiteResult(name, passed, detail, elapsed)


def run_suites(names: Optional[Iterable[str]] = None, seed: int = 0) -> list[SuiteResult]:
    return [run_suite(name, seed) for name in (names if names is not None else SUITES)]
