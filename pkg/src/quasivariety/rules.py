"""Horn rules and recursive rule streams.

Atoms are natural numbers; each instance module fixes a bijection between
its domain and the naturals (see the per-instance ``*_universe`` helpers).
A rule stream is a total map from stream indices to optional rules.  Gaps
(``None`` entries) are allowed and skipped by the engine, which keeps index
arithmetic simple for streams defined over pair codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence


@dataclass(frozen=True)
class HornRule:
    """Finitely many premises entail one conclusion."""

    premises: frozenset[int]
    conclusion: int

    def __post_init__(self) -> None:
        if self.conclusion < 0 or any(p < 0 for p in self.premises):
            raise ValueError("rule atoms must be naturals")

    def __repr__(self) -> str:
        prem = ",".join(str(p) for p in sorted(self.premises))
        return f"{{{prem}}} => {self.conclusion}"


def rule(premises: Iterable[int], conclusion: int) -> HornRule:
    return HornRule(frozenset(premises), conclusion)


class RuleStream:
    """A computable enumeration of Horn rules.

    ``rule_at(i)`` must be total and deterministic.  ``declared_finite`` is
    the exact rule count when the stream is known to be finite; budgets at
    or above it make closure results fixpoint certificates.
    """

    def __init__(
        self,
        rule_at: Callable[[int], Optional[HornRule]],
        declared_finite: Optional[int] = None,
        description: str = "",
    ) -> None:
        self._rule_at = rule_at
        self.declared_finite = declared_finite
        self.description = description

    def rule_at(self, index: int) -> Optional[HornRule]:
        if index < 0:
            raise ValueError("stream index must be a natural")
        if self.declared_finite is not None and index >= self.declared_finite:
            return None
        return self._rule_at(index)

    def __repr__(self) -> str:
        size = "inf" if self.declared_finite is None else str(self.declared_finite)
        tag = f" {self.description}" if self.description else ""
        return f"<RuleStream n={size}{tag}>"


def stream_from_rules(rules: Sequence[HornRule], description: str = "") -> RuleStream:
    """Finite stream listing ``rules`` in order, deduplicated.

    Duplicates are dropped keeping first occurrence so enumeration order is
    reproducible from the input order.
    """
    seen: set[HornRule] = set()
    unique: list[HornRule] = []
    for r in rules:
        if r not in seen:
            seen.add(r)
            unique.append(r)
    return RuleStream(
        lambda i, rs=tuple(unique): rs[i] if i < len(rs) else None,
        declared_finite=len(unique),
        description=description,
    )
