"""Directed construction and verification of operator witnesses.

Derivation codes nest one pairing per replayed rule, so their magnitude
doubles in bit length with every extra rule: a ten-rule derivation already
codes in the tens of kilobits, and a fifty-rule one cannot be written down
at all.  Dovetailed scans therefore only ever find witnesses for one- or
two-rule derivations.  To certify complement membership at useful scale,
the helpers here search for derivations directly (with the saturation
engine, or an instance-supplied hint), then verify the witness end to end:
the replayed leaf sets must evaluate inside the allowed set, and whenever
the sequence codes fit in ``code_bits_cap`` bits the materialized code is
additionally pushed through the operator's own ``eval``.

A returned :class:`Witness` is always verified; ``None`` means no witness
was found within the search budget, never that verification was skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .engine import SaturationEngine
from .operators import (
    BelowFamilyComplementOperator,
    DiscriminatedComplementOperator,
    EnumerationOperator,
    MaximalComplementOperator,
    PresentationOperator,
    UniformComplementOperator,
    replay_rules,
)
from .pairing import encode_sequence, encode_tuple, pair
from .rules import RuleStream

# hint(stream, target, base) -> replayable stream-index sequence, or None
DerivationHint = Callable[[RuleStream, int, frozenset[int]], Optional[Sequence[int]]]

DEFAULT_CODE_BITS_CAP = 1 << 18


@dataclass(frozen=True)
class Witness:
    """A verified complement certificate for one atom.

    ``sequences`` holds one rule-index derivation per operator anchor (in
    anchor order).  ``code`` is the corresponding operator code when it is
    small enough to materialize.  ``evaluation`` is what the operator's
    eval produces at that code; it was checked to sit inside the allowed
    set before the witness was returned.
    """

    atom: int
    sequences: tuple[tuple[int, ...], ...]
    evaluation: frozenset[int]
    code: Optional[int]
    family_index: Optional[int] = None
    discriminator_position: Optional[int] = None


def find_derivation(
    stream: RuleStream,
    target: int,
    base: frozenset[int],
    budget: Optional[int] = None,
    hint: Optional[DerivationHint] = None,
) -> Optional[tuple[int, ...]]:
    """A replayable derivation of ``target`` from ``base``, or None.

    Tries the hint first, validating whatever it returns; falls back to a
    budgeted engine run.  For finite streams the default budget is the
    declared rule count, which makes the search complete.
    """
    if target in base:
        return ()
    if hint is not None:
        seq = hint(stream, target, base)
        if seq is not None:
            leaves = replay_rules(stream, tuple(seq), target)
            if leaves is not None and leaves <= base:
                return tuple(seq)
    if budget is None:
        budget = stream.declared_finite
    if budget is None:
        return None
    engine = SaturationEngine(base, stream)
    engine.advance(budget)
    if target not in engine:
        return None
    seq = engine.derivation_sequence(target)
    leaves = replay_rules(stream, seq, target)
    if leaves is None or not (leaves <= base):
        return None
    return seq


def sequence_code(seq: Sequence[int], bits_cap: int = DEFAULT_CODE_BITS_CAP) -> Optional[int]:
    """Length-prefixed code of a derivation, or None when it exceeds the cap.

    Every pairing step roughly doubles the bit length, so the size is
    estimated first and the code is only materialized when it fits.
    """
    vals = tuple(seq)
    est = max((v.bit_length() for v in vals), default=1) + 2
    for _ in vals:
        est *= 2
        if est > 4 * bits_cap:
            return None
    full = encode_sequence(vals)
    if full.bit_length() > bits_cap:
        return None
    return full


def _replay_leaves(
    stream: RuleStream, target: int, seq: Sequence[int]
) -> Optional[frozenset[int]]:
    return replay_rules(stream, tuple(seq), target)


def complement_witness(
    g: EnumerationOperator,
    x: int,
    seen: frozenset[int],
    budget: Optional[int] = None,
    hint: Optional[DerivationHint] = None,
    code_bits_cap: int = DEFAULT_CODE_BITS_CAP,
) -> Optional[Witness]:
    """Search and verify one certificate that ``x`` lies outside the point.

    ``seen`` is the enumerated prefix of the point the operator works
    against.  Structured complement operators are taken apart: a derivation
    of each anchor from ``seen`` plus {x} is searched, the leaf sets are
    replayed and must land inside ``seen`` plus {x} with the anchor-union
    minus {x} inside ``seen``.  When the combined code fits under the bit
    cap it is also evaluated through ``g.eval`` and compared bit for bit.
    """
    allowed = seen | {x}

    def anchor_sequences(f: EnumerationOperator, anchors: Sequence[int]):
        seqs = []
        for a in anchors:
            if not isinstance(f, PresentationOperator):
                return None
            seq = find_derivation(f.stream, a, allowed, budget, hint)
            if seq is None:
                return None
            seqs.append(seq)
        return tuple(seqs)

    def union_eval(f: PresentationOperator, anchors: Sequence[int], seqs) -> Optional[frozenset[int]]:
        out: set[int] = set()
        for a, seq in zip(anchors, seqs):
            leaves = _replay_leaves(f.stream, a, seq)
            if leaves is None:
                return None
            out |= leaves
        return frozenset(out) - {x}

    if isinstance(g, MaximalComplementOperator) and isinstance(g.f, PresentationOperator):
        seqs = anchor_sequences(g.f, (g.anchor,))
        if seqs is None:
            return None
        ev = union_eval(g.f, (g.anchor,), seqs)
        if ev is None or not (ev <= seen):
            return None
        code = sequence_code(seqs[0], code_bits_cap)
        if code is not None and g.eval(x, code) != ev:
            return None
        return Witness(x, seqs, ev, code)

    if isinstance(g, UniformComplementOperator) and isinstance(g.f, PresentationOperator):
        seqs = anchor_sequences(g.f, g.anchors)
        if seqs is None:
            return None
        ev = union_eval(g.f, g.anchors, seqs)
        if ev is None or not (ev <= seen):
            return None
        part_codes = [sequence_code(s, code_bits_cap) for s in seqs]
        code = None
        if all(c is not None for c in part_codes):
            combined = encode_tuple([c for c in part_codes if c is not None])
            if combined.bit_length() <= code_bits_cap:
                code = combined
                if g.eval(x, code) != ev:
                    return None
        return Witness(x, seqs, ev, code)

    if isinstance(g, BelowFamilyComplementOperator) and isinstance(g.f, PresentationOperator):
        limit = g.family.search_limit
        if limit is None:
            return None
        for p in range(limit):
            anchors = tuple(sorted(g.family.sets_at(p)))
            seqs = anchor_sequences(g.f, anchors)
            if seqs is None:
                continue
            ev = union_eval(g.f, anchors, seqs)
            if ev is None or not (ev <= seen):
                continue
            part_codes = [sequence_code(s, code_bits_cap) for s in seqs]
            code = None
            if all(c is not None for c in part_codes):
                combined = pair(p, encode_tuple([c for c in part_codes if c is not None]))
                if combined.bit_length() <= code_bits_cap:
                    code = combined
                    if g.eval(x, code) != ev:
                        return None
            return Witness(x, seqs, ev, code, family_index=p)
        return None

    if isinstance(g, DiscriminatedComplementOperator) and isinstance(g.f, PresentationOperator):
        for m, (atom, step) in enumerate(g.discr.emits):
            if step > (m + 1) * g.step_margin:
                continue
            seq = find_derivation(g.f.stream, atom, allowed, budget, hint)
            if seq is None:
                continue
            leaves = _replay_leaves(g.f.stream, atom, seq)
            if leaves is None:
                continue
            ev = leaves - {x}
            if not (ev <= seen):
                continue
            part = sequence_code(seq, code_bits_cap)
            code = None
            if part is not None:
                combined = pair(m, part)
                if combined.bit_length() <= code_bits_cap:
                    code = combined
                    if g.eval(x, code) != ev:
                        return None
            return Witness(x, (seq,), ev, code, discriminator_position=m)
        return None

    # Unstructured operator: exhaustive scan below a declared code bound.
    bound = getattr(g, "code_bound", None)
    if bound is None:
        f = getattr(g, "f", None)
        bound = getattr(f, "code_bound", None)
    if bound is None:
        return None
    for n in range(bound):
        ev = g.eval(x, n)
        if ev is not None and ev <= seen:
            return Witness(x, (), ev, n)
    return None


def certified_complement(
    g: EnumerationOperator,
    candidates: Sequence[int],
    seen: frozenset[int],
    budget: Optional[int] = None,
    hint: Optional[DerivationHint] = None,
) -> dict[int, Witness]:
    """Witnesses for every certifiable candidate, in candidate order."""
    out: dict[int, Witness] = {}
    for x in candidates:
        w = complement_witness(g, x, seen, budget=budget, hint=hint)
        if w is not None:
            out[x] = w
    return out
