"""Enumeration operators and the constructions between closure points.

An enumeration operator is a computable ``eval(x, n)`` returning either a
finite set of atoms or bottom (``None`` here).  ``x`` is a member of the
induced set exactly when some code n makes ``eval(x, n)`` a subset of the
source set.  Bottom never certifies anything; an empty set certifies
unconditionally.

The complement constructions below turn an operator presenting a point X
into an operator enumerating the complement of X, under various lattice
hypotheses (X maximal, X maximal below a uniformly presented family, X
discriminated).  Misuse is not detected: if the hypothesis fails the
operator is still total and deterministic, just unsound for X's complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .enumeration import AtomEnumeration
from .pairing import decode_sequence, decode_tuple, pair, unpair
from .rules import HornRule, RuleStream

Evaluation = Optional[frozenset[int]]  # None is bottom


class EnumerationOperator:
    """Base class; subclasses implement ``eval``."""

    def eval(self, x: int, n: int) -> Evaluation:
        raise NotImplementedError


class FunctionOperator(EnumerationOperator):
    def __init__(self, fn: Callable[[int, int], Evaluation], code_bound: Optional[int] = None):
        self._fn = fn
        # Exhaustive scans may stop here: eval is bottom at codes >= bound.
        self.code_bound = code_bound

    def eval(self, x: int, n: int) -> Evaluation:
        return self._fn(x, n)


class TableOperator(EnumerationOperator):
    """Finite lookup table, bottom outside it.  Test and oracle helper."""

    def __init__(self, table: dict[tuple[int, int], frozenset[int]], code_bound: int):
        self.table = dict(table)
        self.code_bound = code_bound

    def eval(self, x: int, n: int) -> Evaluation:
        return self.table.get((x, n))


def identity_operator() -> EnumerationOperator:
    """eval(x, n) = {x}; induces Y itself from any source Y."""
    return FunctionOperator(lambda x, n: frozenset((x,)), code_bound=1)


def replay_rules(stream: RuleStream, indices: Sequence[int], target: int) -> Evaluation:
    """Replay stream rules in order; return the leaf set, or bottom.

    Maintains the set D of conclusions so far.  A premise not in D when
    first needed is a leaf.  Bottom when an index has no rule or when the
    last conclusion is not ``target``.  The empty sequence is the
    reflexive axiom: it derives ``target`` from the leaf {target}.
    """
    if not indices:
        return frozenset((target,))
    derived: set[int] = set()
    leaves: set[int] = set()
    last = -1
    for i in indices:
        r = stream.rule_at(i)
        if r is None:
            return None
        for p in r.premises:
            if p not in derived and p not in leaves:
                leaves.add(p)
        derived.add(r.conclusion)
        last = r.conclusion
    if last != target:
        return None
    return frozenset(leaves)


def derivation_decode(stream: RuleStream, atom: int, code: int) -> Evaluation:
    """Decode ``code`` as a rule-index sequence and replay it toward ``atom``.

    Code 0 is the empty sequence, reserved for the reflexive axiom: its leaf
    set is {atom} itself.
    """
    return replay_rules(stream, decode_sequence(code), atom)


class PresentationOperator(EnumerationOperator):
    """The derivation-based operator of a rule stream.

    ``eval(a, n)`` is the leaf set of the n-th coded derivation ending at
    ``a``; consequently a is in the closure of Y exactly when some code
    evaluates to a subset of Y.
    """

    def __init__(self, stream: RuleStream):
        self.stream = stream

    def eval(self, x: int, n: int) -> Evaluation:
        return derivation_decode(self.stream, x, n)


def presentation_operator(stream: RuleStream) -> PresentationOperator:
    return PresentationOperator(stream)


class MaximalComplementOperator(EnumerationOperator):
    """Complement of a maximal point X, anchored at some atom outside X."""

    def __init__(self, f: EnumerationOperator, anchor: int):
        self.f = f
        self.anchor = anchor

    def eval(self, x: int, n: int) -> Evaluation:
        s = self.f.eval(self.anchor, n)
        if s is None:
            return None
        return s - {x}


class UniformComplementOperator(EnumerationOperator):
    """Complement of a maximal point via a finite presentation of the top.

    ``anchors`` finitely present the full universe; a code is a tuple of
    per-anchor codes for ``f``.
    """

    def __init__(self, f: EnumerationOperator, anchors: Sequence[int]):
        if not anchors:
            raise ValueError("anchor set must be nonempty")
        self.f = f
        self.anchors = tuple(sorted(set(anchors)))

    def eval(self, x: int, n: int) -> Evaluation:
        parts = decode_tuple(len(self.anchors), n)
        out: set[int] = set()
        for a, ni in zip(self.anchors, parts):
            s = self.f.eval(a, ni)
            if s is None:
                return None
            out |= s
        return frozenset(out) - {x}


@dataclass(frozen=True)
class FiniteFamily:
    """Uniformly computable family of finite presentations S_p."""

    sets_at: Callable[[int], frozenset[int]]
    size_at: Callable[[int], int]
    search_limit: Optional[int] = None  # certificate searches try p below this


def family_from_sets(sets: Sequence[frozenset[int]]) -> FiniteFamily:
    frozen = tuple(frozenset(s) for s in sets)
    return FiniteFamily(
        sets_at=lambda p: frozen[p] if p < len(frozen) else frozenset(),
        size_at=lambda p: len(frozen[p]) if p < len(frozen) else 0,
        search_limit=len(frozen),
    )


class BelowFamilyComplementOperator(EnumerationOperator):
    """Complement of a point maximal below a presented family of points.

    A code picks a family member p and one f-code per generator of S_p; the
    evaluation is the union of the generator leaf sets, minus x.
    """

    def __init__(self, f: EnumerationOperator, family: FiniteFamily):
        self.f = f
        self.family = family

    def eval(self, x: int, n: int) -> Evaluation:
        p, rest = unpair(n)
        atoms = sorted(self.family.sets_at(p))
        parts = decode_tuple(len(atoms), rest)
        out: set[int] = set()
        for a, ni in zip(atoms, parts):
            s = self.f.eval(a, ni)
            if s is None:
                return None
            out |= s
        return frozenset(out) - {x}


class DiscriminatedComplementOperator(EnumerationOperator):
    """Complement of a point discriminated by an enumerated set Y.

    A code picks a position m into the discriminator log and an f-code for
    that atom.  The m-th atom must have been emitted within
    (m + 1) * step_margin source steps, else the evaluation is bottom; this
    keeps eval independent of how far the log happens to be materialized,
    as long as logs are supplied at least that deep.
    """

    def __init__(self, f: EnumerationOperator, discr: AtomEnumeration, step_margin: int = 64):
        if step_margin < 1:
            raise ValueError("step margin must be positive")
        self.f = f
        self.discr = discr
        self.step_margin = step_margin

    def eval(self, x: int, n: int) -> Evaluation:
        m, rest = unpair(n)
        if m >= len(self.discr.emits):
            return None
        atom, step = self.discr.emits[m]
        if step > (m + 1) * self.step_margin:
            return None
        s = self.f.eval(atom, rest)
        if s is None:
            return None
        return s - {x}


def complement_op_maximal(f: EnumerationOperator, anchor: int) -> MaximalComplementOperator:
    return MaximalComplementOperator(f, anchor)


def complement_op_uniform(f: EnumerationOperator, anchors: Sequence[int]) -> UniformComplementOperator:
    return UniformComplementOperator(f, anchors)


def complement_op_below_family(f: EnumerationOperator, family: FiniteFamily) -> BelowFamilyComplementOperator:
    return BelowFamilyComplementOperator(f, family)


def complement_op_discriminated(
    f: EnumerationOperator, discr: AtomEnumeration, step_margin: int = 64
) -> DiscriminatedComplementOperator:
    return DiscriminatedComplementOperator(f, discr, step_margin)


def apply_operator(f: EnumerationOperator, source: AtomEnumeration, budget: int) -> AtomEnumeration:
    """Dovetailed application of ``f`` to an enumerated source set.

    Sweep s first advances the source prefix by one element, then visits
    pair codes 0..s in increasing order; ``unpair`` splits a code into
    (atom, f-code).  An atom is emitted the first time one of its codes
    evaluates inside the source prefix seen so far.  The budget counts
    sweeps; budget 0 returns the empty enumeration.
    """
    seen: set[int] = set()
    emitted: set[int] = set()
    log: list[tuple[int, int]] = []
    cache: dict[int, Evaluation] = {}
    dead: set[int] = set()  # codes that are bottom, or whose atom is emitted
    for sweep in range(budget):
        if sweep < len(source.emits):
            seen.add(source.emits[sweep][0])
        for code in range(sweep + 1):
            if code in dead:
                continue
            x, n = unpair(code)
            if x in emitted:
                dead.add(code)
                continue
            if code not in cache:
                cache[code] = f.eval(x, n)
            s = cache[code]
            if s is None:
                dead.add(code)
                continue
            if s <= seen:
                emitted.add(x)
                log.append((x, sweep))
                dead.add(code)
    return AtomEnumeration(tuple(log))


@dataclass(frozen=True)
class GMapEntry:
    """Resolved least-success code for one atom."""

    atom: int
    value: int
    step: int


def g_map(f: EnumerationOperator, source: AtomEnumeration, budget: int) -> tuple[GMapEntry, ...]:
    """Least code at which ``f`` certifies each atom against the source set.

    Against the growing source prefix X_seen, an atom x first gets an upper
    bound (some n with eval(x, n) inside X_seen).  Every code below the
    bound must then be resolved: either it evaluates inside X_seen too (the
    bound improves), or it is refuted, meaning bottom, or meeting an atom
    already certified as a complement member by this very run.  The entry
    is emitted once everything below the final bound is refuted.
    """
    seen: set[int] = set()
    cache: dict[tuple[int, int], Evaluation] = {}
    bound: dict[int, int] = {}
    done: set[int] = set()
    entries: list[GMapEntry] = []

    def ev(x: int, n: int) -> Evaluation:
        key = (x, n)
        if key not in cache:
            cache[key] = f.eval(x, n)
        return cache[key]

    for sweep in range(budget):
        if sweep < len(source.emits):
            seen.add(source.emits[sweep][0])
        for code in range(sweep + 1):
            x, n = unpair(code)
            if x in done:
                continue
            s = ev(x, n)
            if s is not None and s <= seen and n < bound.get(x, n + 1):
                bound[x] = n
        # Certified complement members so far: any atom with an upper bound.
        certified = set(bound)
        for x in sorted(bound):
            if x in done:
                continue
            resolved = True
            i = 0
            while i < bound[x]:
                s = ev(x, i)
                if s is None:
                    i += 1
                    continue
                if s <= seen:
                    bound[x] = i  # improved; restart below the new bound
                    i = 0
                    continue
                if s & certified:
                    i += 1
                    continue
                resolved = False
                break
            if resolved:
                done.add(x)
                entries.append(GMapEntry(x, bound[x], sweep))
    return tuple(entries)


BoundFunction = Callable[[int], int]


def recover_from_bound(
    f: EnumerationOperator,
    h: BoundFunction,
    complement_source: AtomEnumeration,
    budget: int,
) -> AtomEnumeration:
    """Recover the point X from a bound on g and an enumeration of its complement.

    Atom x is emitted once every code n <= h(x) is ruled out against the
    complement prefix seen so far: the evaluation is bottom, or it meets a
    known complement member.  With h dominating the least-success map g,
    members of the complement are never ruled out at their witness code, so
    the emitted set converges to X exactly.
    """
    comp_seen: set[int] = set()
    emitted: set[int] = set()
    log: list[tuple[int, int]] = []
    # codes of x not yet ruled out; populated once when atom x enters the sweep
    pending: dict[int, set[int]] = {}
    by_member: dict[int, list[tuple[int, int]]] = {}

    for sweep in range(budget):
        if sweep < len(complement_source.emits):
            c = complement_source.emits[sweep][0]
            if c not in comp_seen:
                comp_seen.add(c)
                for x, n in by_member.pop(c, ()):
                    pending[x].discard(n)
        if sweep not in pending:
            open_codes: set[int] = set()
            for n in range(h(sweep) + 1):
                s = f.eval(sweep, n)
                if s is None or s & comp_seen:
                    continue
                open_codes.add(n)
                for c in s:
                    by_member.setdefault(c, []).append((sweep, n))
            pending[sweep] = open_codes
        for x in range(sweep + 1):
            if x not in emitted and not pending[x]:
                emitted.add(x)
                log.append((x, sweep))
    return AtomEnumeration(tuple(log))


def converse_presentation_rules(
    f: EnumerationOperator, atom_bound: Optional[int] = None
) -> RuleStream:
    """Rules "if eval(x, n) is inside X then x is in X", fairly enumerated.

    With an atom bound B the stream lays pairs out as index = n * B + x;
    without one it dovetails pairs through ``unpair``.  Bottom evaluations
    leave gaps.  The generated closure space has the same points as the
    quasivariety f presents.
    """

    def at(i: int) -> Optional[HornRule]:
        if atom_bound is not None:
            x, n = i % atom_bound, i // atom_bound
        else:
            x, n = unpair(i)
        s = f.eval(x, n)
        if s is None:
            return None
        return HornRule(s, x)

    return RuleStream(at, description="converse-presentation")


def converse_maximal_rules(
    f: EnumerationOperator, atom_bound: Optional[int] = None
) -> RuleStream:
    """Rules forcing every point that strictly exceeds the induced set to be full.

    For every triple (x, n, y) the rule has premises {x} plus eval(x, n) and
    conclusion y: once some x joins a point together with a certificate that
    x was reachable from the point, everything follows.  The induced set
    itself remains a point; everything strictly above it collapses to the
    full universe, which makes the induced set maximal in the generated
    space.
    """

    def at(i: int) -> Optional[HornRule]:
        if atom_bound is not None:
            y = i % atom_bound
            x = (i // atom_bound) % atom_bound
            n = i // (atom_bound * atom_bound)
        else:
            t, y = unpair(i)
            x, n = unpair(t)
        s = f.eval(x, n)
        if s is None:
            return None
        return HornRule(s | {x}, y)

    return RuleStream(at, description="converse-maximal")
