"""Exhaustive oracles on finite universes.

Everything here is deliberately brute force: points are enumerated by
scanning all subsets, closures repeat full rule scans until stable, and
the effectively-closed-class conversion checks its precondition by
exhaustion.  These are the reference answers the budgeted engine and the
operator constructions are tested against, so none of this code shares a
code path with the engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import GuardError, ParseError, PreconditionError
from .operators import TableOperator
from .rules import HornRule, RuleStream, stream_from_rules

ALL_POINTS_GUARD = 20
CLASS_GUARD = 16


@dataclass(frozen=True)
class FiniteQuasivariety:
    """A finite universe 0..n-1 with a finite canonical rule list."""

    n: int
    rules: tuple[HornRule, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("universe size must be a natural")
        seen: set[HornRule] = set()
        unique: list[HornRule] = []
        for r in self.rules:
            if r.conclusion >= self.n or any(p >= self.n for p in r.premises):
                raise ValueError(f"rule {r} mentions an atom outside 0..{self.n - 1}")
            if r not in seen:
                seen.add(r)
                unique.append(r)
        object.__setattr__(self, "rules", tuple(unique))

    def stream(self) -> RuleStream:
        return stream_from_rules(self.rules, description=f"finite({self.n})")

    def universe(self) -> frozenset[int]:
        return frozenset(range(self.n))


def finite_quasivariety(n: int, rules: Iterable[tuple[Iterable[int], int]]) -> FiniteQuasivariety:
    """Convenience constructor from (premises, conclusion) pairs."""
    return FiniteQuasivariety(n, tuple(HornRule(frozenset(p), c) for p, c in rules))


def is_point(q: FiniteQuasivariety, subset: frozenset[int]) -> bool:
    return all(r.conclusion in subset for r in q.rules if r.premises <= subset)


def brute_closure(q: FiniteQuasivariety, seeds: Iterable[int]) -> frozenset[int]:
    """Least point containing the seeds, by repeated full rule scans."""
    out = set(seeds)
    if any(a >= q.n or a < 0 for a in out):
        raise ValueError("seed outside the universe")
    changed = True
    while changed:
        changed = False
        for r in q.rules:
            if r.conclusion not in out and r.premises <= out:
                out.add(r.conclusion)
                changed = True
    return frozenset(out)


def all_points(q: FiniteQuasivariety) -> list[frozenset[int]]:
    """Every closed subset, sorted lexicographically as sorted tuples."""
    if q.n > ALL_POINTS_GUARD:
        raise GuardError(f"all_points is exhaustive; universe size {q.n} exceeds {ALL_POINTS_GUARD}")
    points = []
    for mask in range(1 << q.n):
        s = frozenset(i for i in range(q.n) if mask >> i & 1)
        if is_point(q, s):
            points.append(s)
    points.sort(key=lambda s: tuple(sorted(s)))
    return points


def _require_point(q: FiniteQuasivariety, s: frozenset[int], name: str) -> None:
    if not is_point(q, s):
        raise ValueError(f"{name} = {sorted(s)} is not a point")


def meet(q: FiniteQuasivariety, x: frozenset[int], y: frozenset[int]) -> frozenset[int]:
    _require_point(q, x, "X")
    _require_point(q, y, "Y")
    return x & y


def join(q: FiniteQuasivariety, x: frozenset[int], y: frozenset[int]) -> frozenset[int]:
    _require_point(q, x, "X")
    _require_point(q, y, "Y")
    return brute_closure(q, x | y)


def maximal_points(q: FiniteQuasivariety) -> list[frozenset[int]]:
    """Points other than I whose only strict superset point is I itself."""
    universe = q.universe()
    points = all_points(q)
    out = []
    for x in points:
        if x == universe:
            continue
        if all(y == universe for y in points if x < y):
            out.append(x)
    return out


def is_discriminator(q: FiniteQuasivariety, x: frozenset[int], y: frozenset[int]) -> bool:
    """Y is disjoint from the point X and meets every point strictly above X."""
    _require_point(q, x, "X")
    if y & x:
        return False
    return all(p & y for p in all_points(q) if x < p)


@dataclass(frozen=True)
class PartialMap:
    """A forbidden finite pattern: these atoms in, those atoms out."""

    ones: frozenset[int]
    zeros: frozenset[int]

    def __post_init__(self) -> None:
        if self.ones & self.zeros:
            raise ValueError("ones and zeros overlap")
        if not (self.ones | self.zeros):
            raise ValueError("a partial map needs a nonempty domain")

    def agrees_with(self, subset: frozenset[int]) -> bool:
        return self.ones <= subset and not (self.zeros & subset)


@dataclass(frozen=True)
class PartialMapFamily:
    maps: tuple[PartialMap, ...]
    n: int

    def __post_init__(self) -> None:
        for m in self.maps:
            if any(i >= self.n for i in m.ones | m.zeros):
                raise ValueError("map mentions an atom outside the universe")

    def class_members(self) -> list[frozenset[int]]:
        """All subsets agreeing with none of the maps (the effectively closed class)."""
        if self.n > CLASS_GUARD:
            raise GuardError(f"class enumeration guard: n = {self.n} exceeds {CLASS_GUARD}")
        out = []
        for mask in range(1 << self.n):
            s = frozenset(i for i in range(self.n) if mask >> i & 1)
            if not any(m.agrees_with(s) for m in self.maps):
                out.append(s)
        return out


def check_intersection_closed(fam: PartialMapFamily) -> bool:
    """True iff the class contains the full universe and all pairwise meets."""
    members = fam.class_members()
    member_set = set(members)
    if frozenset(range(fam.n)) not in member_set:
        return False
    return all(a & b in member_set for a in members for b in members)


def pi01_to_rules(fam: PartialMapFamily) -> FiniteQuasivariety:
    """Convert an intersection-closed class into rules with identical points.

    Maps with exactly one zero translate verbatim ("ones entail the
    zero"), so a file of such maps converts to the identical rule list.
    Maps with several zeros only act jointly; their effect is recovered
    by a completion pass: any excluded set the verbatim rules leave
    closed gets one rule sending it to the smallest atom its class
    closure adds.  The precondition (universe in the class, closure
    under pairwise intersection) is checked exhaustively and a violation
    is reported with a concrete witness.
    """
    members = fam.class_members()
    member_set = set(members)
    universe = frozenset(range(fam.n))
    if universe not in member_set:
        culprit = next(m for m in fam.maps if m.agrees_with(universe))
        raise PreconditionError(
            f"the full universe is excluded by map (ones={sorted(culprit.ones)}, zeros={sorted(culprit.zeros)})",
            witness=culprit,
        )
    for a in members:
        for b in members:
            if a & b not in member_set:
                raise PreconditionError(
                    f"class is not intersection-closed: {sorted(a)} and {sorted(b)} "
                    f"are members but their intersection {sorted(a & b)} is not",
                    witness=(a, b),
                )
    rules = [
        HornRule(m.ones, next(iter(m.zeros))) for m in fam.maps if len(m.zeros) == 1
    ]
    extra: list[HornRule] = []
    for mask in range(1 << fam.n):
        s = frozenset(i for i in range(fam.n) if mask >> i & 1)
        if s in member_set:
            continue
        if any(r.premises <= s and r.conclusion not in s for r in rules):
            continue
        # intersection of all members above s; proper since s is excluded
        above = universe
        for p in members:
            if s <= p:
                above &= p
        extra.append(HornRule(s, min(above - s)))
    rules.extend(sorted(extra, key=lambda r: (len(r.premises), sorted(r.premises))))
    return FiniteQuasivariety(fam.n, tuple(rules))


def brute_reduction(a: Iterable[int], b: Iterable[int], n: int) -> TableOperator:
    """A lookup operator realizing A as enumerable from B on a finite universe.

    eval(x, 0) is B when x is in A and bottom otherwise, so the induced set
    of the operator against B is exactly A.
    """
    bs = frozenset(b)
    table = {(x, 0): bs for x in frozenset(a)}
    return TableOperator(table, code_bound=1)


def random_quasivariety(
    rng: random.Random,
    max_n: int = 6,
    max_rules: int = 12,
    max_premises: int = 3,
) -> FiniteQuasivariety:
    """A seeded random instance for the property suites."""
    n = rng.randint(2, max_n)
    count = rng.randint(0, max_rules)
    rules = []
    for _ in range(count):
        k = rng.randint(0, min(max_premises, n))
        premises = frozenset(rng.sample(range(n), k))
        rules.append(HornRule(premises, rng.randrange(n)))
    return FiniteQuasivariety(n, tuple(rules))


# ---------------------------------------------------------------------------
# File formats


def parse_rule_file(text: str) -> FiniteQuasivariety:
    """Rule files: header ``universe finite <n>``, lines ``p1 p2 -> c``.

    Premises may be empty (``-> c``); ``#`` starts a comment.
    """
    n: Optional[int] = None
    rules: list[HornRule] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "universe" or parts[1] != "finite":
                raise ParseError("expected header 'universe finite <n>'", lineno)
            try:
                n = int(parts[2])
            except ValueError:
                raise ParseError(f"bad universe size {parts[2]!r}", lineno) from None
            if n < 0:
                raise ParseError("universe size must be a natural", lineno)
            continue
        if "->" not in line:
            raise ParseError("expected a rule 'p1 p2 ... -> c'", lineno)
        left, _, right = line.partition("->")
        try:
            premises = frozenset(int(t) for t in left.split())
            conclusion = int(right.strip())
        except ValueError:
            raise ParseError(f"bad atom in rule {line!r}", lineno) from None
        if conclusion >= n or any(p >= n for p in premises):
            raise ParseError(f"rule {line!r} mentions an atom outside 0..{n - 1}", lineno)
        rules.append(HornRule(premises, conclusion))
    if n is None:
        raise ParseError("empty file: missing 'universe finite <n>' header")
    return FiniteQuasivariety(n, tuple(rules))


def format_rule_file(q: FiniteQuasivariety) -> str:
    lines = [f"universe finite {q.n}"]
    for r in q.rules:
        left = " ".join(str(p) for p in sorted(r.premises))
        lines.append(f"{left} -> {r.conclusion}".lstrip())
    return "\n".join(lines) + "\n"


def parse_partial_map_file(text: str) -> PartialMapFamily:
    """Partial-map files: same header, then one map per line of +i / -j tokens."""
    n: Optional[int] = None
    maps: list[PartialMap] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 3 or parts[0] != "universe" or parts[1] != "finite":
                raise ParseError("expected header 'universe finite <n>'", lineno)
            try:
                n = int(parts[2])
            except ValueError:
                raise ParseError(f"bad universe size {parts[2]!r}", lineno) from None
            continue
        ones: set[int] = set()
        zeros: set[int] = set()
        for token in line.split():
            if len(token) < 2 or token[0] not in "+-":
                raise ParseError(f"bad token {token!r}; expected +i or -j", lineno)
            try:
                atom = int(token[1:])
            except ValueError:
                raise ParseError(f"bad atom in token {token!r}", lineno) from None
            if atom >= n or atom < 0:
                raise ParseError(f"atom {atom} outside 0..{n - 1}", lineno)
            (ones if token[0] == "+" else zeros).add(atom)
        try:
            maps.append(PartialMap(frozenset(ones), frozenset(zeros)))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if n is None:
        raise ParseError("empty file: missing 'universe finite <n>' header")
    return PartialMapFamily(tuple(maps), n)


def format_partial_map_file(fam: PartialMapFamily) -> str:
    lines = [f"universe finite {fam.n}"]
    for m in fam.maps:
        tokens = [f"+{i}" for i in sorted(m.ones)] + [f"-{j}" for j in sorted(m.zeros)]
        lines.append(" ".join(tokens))
    return "\n".join(lines) + "\n"
