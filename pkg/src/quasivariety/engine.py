"""Forward-chaining saturation over a rule stream.

The closure of a seed set is computed incrementally: step t fetches the
rule at stream index t - 1, then saturates the derived set under every
rule fetched so far.  The budget counts fetched indices, so the result at
budget b is exactly the fixpoint under the first b rules of the stream.
Seeds are emitted at step 0 in ascending atom order; saturation uses a
FIFO worklist, which fixes the emission order within a step.

The engine also records, for every derived atom, the first rule that
concluded it.  ``derivation_sequence`` extracts from those records a
minimal replayable derivation (a list of stream indices in dependency
order), which is how complement certificates are constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .enumeration import AtomEnumeration
from .rules import HornRule, RuleStream


@dataclass(frozen=True)
class ClosureResult:
    """Outcome of a budgeted closure run."""

    derived: frozenset[int]
    enumeration: AtomEnumeration
    fixpoint_certified: bool
    budget: int


class SaturationEngine:
    """Single-consumer incremental closure engine."""

    def __init__(self, seeds: Iterable[int], stream: RuleStream) -> None:
        self.stream = stream
        self.fetched = 0
        self._derived: set[int] = set()
        self._emits: list[tuple[int, int]] = []
        # atom -> (stream index, rule) that first concluded it; None for seeds
        self._origin: dict[int, Optional[tuple[int, HornRule]]] = {}
        # premise atom -> indices into self._rules still waiting on it
        self._waiting: dict[int, list[int]] = {}
        self._rules: list[tuple[int, HornRule]] = []
        self._missing: list[int] = []  # unsatisfied premise count per rule
        self._queue: list[int] = []
        self._pending: dict[int, tuple[int, HornRule]] = {}
        for atom in sorted(set(seeds)):
            self._derived.add(atom)
            self._emits.append((atom, 0))
            self._origin[atom] = None

    @property
    def derived(self) -> frozenset[int]:
        return frozenset(self._derived)

    def __contains__(self, atom: int) -> bool:
        return atom in self._derived

    def advance(self, steps: int) -> list[int]:
        """Fetch ``steps`` more stream indices; return atoms emitted."""
        emitted: list[int] = []
        for _ in range(steps):
            index = self.fetched
            self.fetched += 1
            r = self.stream.rule_at(index)
            if r is None:
                continue
            self._register(index, r)
            emitted.extend(self._drain(step=self.fetched))
        return emitted

    def _register(self, index: int, r: HornRule) -> None:
        rid = len(self._rules)
        self._rules.append((index, r))
        missing = 0
        for p in r.premises:
            if p not in self._derived:
                missing += 1
                self._waiting.setdefault(p, []).append(rid)
        self._missing.append(missing)
        if missing == 0:
            self._fire(rid)

    def _fire(self, rid: int) -> None:
        index, r = self._rules[rid]
        c = r.conclusion
        if c not in self._derived and c not in self._pending:
            self._pending[c] = (index, r)
            self._queue.append(c)

    def _drain(self, step: int) -> list[int]:
        emitted: list[int] = []
        head = 0
        while head < len(self._queue):
            atom = self._queue[head]
            head += 1
            self._derived.add(atom)
            self._origin[atom] = self._pending.pop(atom)
            self._emits.append((atom, step))
            emitted.append(atom)
            for rid in self._waiting.pop(atom, ()):  # rules unblocked by atom
                self._missing[rid] -= 1
                if self._missing[rid] == 0:
                    self._fire(rid)
        self._queue.clear()
        return emitted

    def enumeration(self) -> AtomEnumeration:
        return AtomEnumeration(tuple(self._emits))

    def result(self) -> ClosureResult:
        fin = self.stream.declared_finite
        return ClosureResult(
            derived=frozenset(self._derived),
            enumeration=self.enumeration(),
            fixpoint_certified=fin is not None and self.fetched >= fin,
            budget=self.fetched,
        )

    def derivation_sequence(self, atom: int) -> tuple[int, ...]:
        """Stream indices of a minimal derivation of ``atom``, replay order.

        Seeds get the empty sequence (the reflexive axiom).  Raises KeyError
        if the atom has not been derived.
        """
        if self._origin[atom] is None:
            return ()
        out: list[int] = []
        visited: set[int] = set()
        stack: list[tuple[int, bool]] = [(atom, False)]
        while stack:
            a, expanded = stack.pop()
            if expanded:
                origin = self._origin[a]
                assert origin is not None
                out.append(origin[0])
                continue
            if a in visited or self._origin[a] is None:
                continue
            visited.add(a)
            stack.append((a, True))
            origin = self._origin[a]
            assert origin is not None
            # Reverse-sorted so premises are expanded in ascending order.
            for p in sorted(origin[1].premises, reverse=True):
                stack.append((p, False))
        return tuple(out)


def closure(seeds: Iterable[int], stream: RuleStream, budget: int) -> ClosureResult:
    """Atoms derivable from ``seeds`` using rules at stream indices < budget.

    Monotone in both arguments; budget 0 returns the seeds themselves.  The
    union over all budgets is the full closure.
    """
    if budget < 0:
        raise ValueError("budget must be a natural")
    engine = SaturationEngine(seeds, stream)
    engine.advance(budget)
    return engine.result()
