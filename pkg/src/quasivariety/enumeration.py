"""Deterministic enumeration logs.

An :class:`AtomEnumeration` is the trace of a run: atoms in emission order,
each stamped with the step at which it appeared.  Logs never repeat an atom.
Engines treat enumerations as single-consumer values; two runs with the same
inputs and budgets produce identical logs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class AtomEnumeration:
    """An emission log: ``(atom, step_at_emission)`` pairs, duplicate-free."""

    emits: tuple[tuple[int, int], ...]
    _members: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        atoms = [a for a, _ in self.emits]
        members = frozenset(atoms)
        if len(atoms) != len(members):
            raise ValueError("enumeration log repeats an atom")
        steps = [s for _, s in self.emits]
        if any(b < a for a, b in zip(steps, steps[1:])):
            raise ValueError("emission steps must be nondecreasing")
        object.__setattr__(self, "_members", members)

    @property
    def members(self) -> frozenset[int]:
        return self._members

    def atoms(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.emits)

    def atom_at(self, position: int) -> int:
        """The position-th emitted atom (0-based)."""
        return self.emits[position][0]

    def prefix(self, count: int) -> "AtomEnumeration":
        return AtomEnumeration(self.emits[:count])

    def __contains__(self, atom: int) -> bool:
        return atom in self._members

    def __iter__(self) -> Iterator[int]:
        return iter(self.atoms())

    def __len__(self) -> int:
        return len(self.emits)


def enumeration_of(atoms: Iterable[int], start_step: int = 0) -> AtomEnumeration:
    """Constant enumeration emitting ``atoms`` in the given order, one per step."""
    out = []
    step = start_step
    seen: set[int] = set()
    for a in atoms:
        if a not in seen:
            seen.add(a)
            out.append((a, step))
            step += 1
    return AtomEnumeration(tuple(out))
