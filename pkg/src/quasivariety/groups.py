"""Marked groups on k generators as a closure space on free-group words.

Atoms are freely reduced words.  A set of words is a point when it
contains the empty word and is closed under inverse, product, and
conjugation by arbitrary words; the points are exactly the normal
subgroups of the free group, i.e. the kernels of markings, so closure
of a relator set is the word problem of the presented group.

Letters are small ints: generator i contributes letter 2i and its
inverse 2i+1, which makes the letter order a < a-inverse < b < ... the
plain integer order.  Display uses a..z for generators and uppercase
for inverses.

For a presentation of a finite simple group, membership and
non-membership of a word in the kernel both have finite certificates:
a derivation of the word from the relators, or derivations of every
generator from the relators plus the word.  `decide_word_simple`
searches for both and every answer it returns is backed by a
replay-checked derivation, so nothing in the search is trusted for the
verdict.  The search itself works in two layers: relators that are
powers of a single generator become length-reducing rewrite rules
whose every application logs one conjugated relator exactly, and the
surviving normal forms are so sparse that a bidirectional breadth
first search over products of conjugated relators (and, for the
complement direction, conjugates of the word itself) closes the gap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .errors import ParseError
from .operators import FiniteFamily, replay_rules
from .pairing import pair, unpair
from .rules import HornRule, RuleStream

Word = tuple[int, ...]
Perm = tuple[int, ...]
IDENTITY_WORD: Word = ()


def inverse_letter(c: int) -> int:
    return c ^ 1


def reduce_word(seq: Iterable[int]) -> Word:
    out: list[int] = []
    for c in seq:
        if out and out[-1] == inverse_letter(c):
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def inverse(w: Word) -> Word:
    return tuple(inverse_letter(c) for c in reversed(w))


def product(u: Word, v: Word) -> Word:
    return reduce_word(u + v)


def conjugate(g: Word, h: Word) -> Word:
    """h g h^-1, reduced."""
    return reduce_word(h + g + inverse(h))


def word_from_str(text: str, k: int) -> Word:
    if text == "-":
        return IDENTITY_WORD
    out = []
    for ch in text:
        if "a" <= ch <= "z":
            idx, inv = ord(ch) - ord("a"), 0
        elif "A" <= ch <= "Z":
            idx, inv = ord(ch) - ord("A"), 1
        else:
            raise ValueError(f"bad letter {ch!r}")
        if idx >= k:
            raise ValueError(f"letter {ch!r} outside the {k}-generator alphabet")
        out.append(2 * idx + inv)
    return reduce_word(out)


def word_to_str(w: Word) -> str:
    if not w:
        return "-"
    return "".join(chr((ord("A") if c & 1 else ord("a")) + (c >> 1)) for c in w)


# ---------------------------------------------------------------------------
# Codec: length-lex over reduced words


def reduced_count(k: int, length: int) -> int:
    if length == 0:
        return 1
    return 2 * k * (2 * k - 1) ** (length - 1)


def reduced_up_to(k: int, length: int) -> int:
    return sum(reduced_count(k, ell) for ell in range(length + 1))


def word_rank(k: int, w: Word) -> int:
    if not w:
        return 0
    offset = w[0]
    for prev, c in zip(w, w[1:]):
        skip = inverse_letter(prev)
        offset = offset * (2 * k - 1) + (c - 1 if c > skip else c)
    return reduced_up_to(k, len(w) - 1) + offset


def word_unrank(k: int, rank: int) -> Word:
    if rank < 0:
        raise ValueError("rank must be a natural")
    length = 0
    while reduced_up_to(k, length) <= rank:
        length += 1
    if length == 0:
        return IDENTITY_WORD
    offset = rank - reduced_up_to(k, length - 1)
    digits = []
    for _ in range(length - 1):
        offset, d = divmod(offset, 2 * k - 1)
        digits.append(d)
    first = offset
    out = [first]
    for d in reversed(digits):
        skip = inverse_letter(out[-1])
        out.append(d + 1 if d >= skip else d)
    return tuple(out)


# ---------------------------------------------------------------------------
# The rule stream

# Index 0 is the unit rule.  After that, three interleaved families in
# blocks of three: inverse of word t, product of the pair unpair(t),
# conjugation of the pair unpair(t).


def unit_rule_index() -> int:
    return 0

def inverse_rule_index(t: int) -> int:
    return 1 + 3 * t

def product_rule_index(u: int, v: int) -> int:
    return 2 + 3 * pair(u, v)

def conjugation_rule_index(g: int, h: int) -> int:
    return 3 + 3 * pair(g, h)


def group_rules(k: int) -> RuleStream:
    if k < 1:
        raise ValueError("need at least one generator")

    def rule_at(i: int) -> HornRule:
        if i == 0:
            return HornRule(frozenset(), 0)
        t, fam = divmod(i - 1, 3)
        if fam == 0:
            return HornRule(frozenset({t}), word_rank(k, inverse(word_unrank(k, t))))
        u, v = unpair(t)
        if fam == 1:
            conclusion = product(word_unrank(k, u), word_unrank(k, v))
            return HornRule(frozenset({u, v}), word_rank(k, conclusion))
        conclusion = conjugate(word_unrank(k, u), word_unrank(k, v))
        return HornRule(frozenset({u}), word_rank(k, conclusion))

    return RuleStream(rule_at, declared_finite=None,
                      description=f"marked-group rules on {k} generators")


@dataclass(frozen=True)
class GroupPresentation:
    k: int
    relators: frozenset[Word]

    def __post_init__(self) -> None:
        for r in self.relators:
            if not r:
                raise ValueError("relators must be nonempty words")
            if r != reduce_word(r) or any(c >= 2 * self.k for c in r):
                raise ValueError(f"relator {word_to_str(r)} is not a reduced word here")

    def relator_ranks(self) -> list[int]:
        return sorted(word_rank(self.k, r) for r in self.relators)


def icosahedral_presentation() -> GroupPresentation:
    a, b = (0,), (2,)
    return GroupPresentation(2, frozenset({a * 2, b * 3, (a + b) * 5}))


# ---------------------------------------------------------------------------
# Permutation oracle


def perm_compose(p: Perm, q: Perm) -> Perm:
    """Apply p first, then q."""
    return tuple(q[i] for i in p)

def perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


@dataclass(frozen=True)
class PermOracle:
    """A finite quotient given by permutation images of the generators.

    Construction checks every relator and records the generated group,
    so word_is_identity answers the marked group's word problem."""

    presentation: GroupPresentation
    images: tuple[Perm, ...]
    elements: frozenset[Perm] = field(init=False)

    def __post_init__(self) -> None:
        p = self.presentation
        if len(self.images) != p.k:
            raise ValueError("one permutation image per generator")
        degree = len(self.images[0])
        if any(len(im) != degree for im in self.images):
            raise ValueError("images must share a degree")
        for r in p.relators:
            if self.word_perm(r) != self.identity:
                raise ValueError(f"images violate relator {word_to_str(r)}")
        seen = {self.identity}
        frontier = [self.identity]
        gens = [im for im in self.images] + [perm_inverse(im) for im in self.images]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    e = perm_compose(g, s)
                    if e not in seen:
                        seen.add(e)
                        nxt.append(e)
            frontier = nxt
        object.__setattr__(self, "elements", frozenset(seen))

    @property
    def identity(self) -> Perm:
        return tuple(range(len(self.images[0])))

    @property
    def order(self) -> int:
        return len(self.elements)

    def letter_perm(self, c: int) -> Perm:
        im = self.images[c >> 1]
        return perm_inverse(im) if c & 1 else im

    def word_perm(self, w: Word) -> Perm:
        out = self.identity
        for c in w:
            out = perm_compose(out, self.letter_perm(c))
        return out

    def word_is_identity(self, w: Word) -> bool:
        return self.word_perm(w) == self.identity


def icosahedral_oracle() -> PermOracle:
    """Search degree-5 images for the (2,3,5) triangle presentation."""
    pres = icosahedral_presentation()
    perms = _all_perms(5)
    ident = tuple(range(5))
    for alpha in perms:
        if perm_compose(alpha, alpha) != ident or alpha == ident:
            continue
        for beta in perms:
            if _perm_pow(beta, 3) != ident or beta == ident:
                continue
            if _perm_pow(perm_compose(alpha, beta), 5) != ident:
                continue
            oracle = PermOracle(pres, (alpha, beta))
            if oracle.order == 60:
                return oracle
    raise RuntimeError("no degree-5 model found")


def _all_perms(n: int) -> list[Perm]:
    from itertools import permutations
    return [tuple(p) for p in permutations(range(n))]


def _perm_pow(p: Perm, e: int) -> Perm:
    out = tuple(range(len(p)))
    for _ in range(e):
        out = perm_compose(out, p)
    return out


# ---------------------------------------------------------------------------
# Directed derivations in the rule stream
#
# Derivations are reported as sequences of stream indices and are only
# ever trusted after replay, so the search below can be sloppy without
# compromising a verdict.


class _DerivationBuilder:
    """Accumulates stream indices while tracking the words they derive."""

    def __init__(self, k: int):
        self.k = k
        self.indices: list[int] = []

    def invert(self, w: Word) -> Word:
        self.indices.append(inverse_rule_index(word_rank(self.k, w)))
        return inverse(w)

    def multiply(self, u: Word, v: Word) -> Word:
        self.indices.append(product_rule_index(word_rank(self.k, u), word_rank(self.k, v)))
        return product(u, v)

    def conjugate_by(self, g: Word, h: Word) -> Word:
        self.indices.append(conjugation_rule_index(word_rank(self.k, g), word_rank(self.k, h)))
        return conjugate(g, h)


@dataclass(frozen=True)
class _Factor:
    """One conjugated axiom c base^(+-1) c^-1 inside a product certificate."""

    conjugator: Word
    base: Word
    inverted: bool

    def value(self) -> Word:
        v = inverse(self.base) if self.inverted else self.base
        return conjugate(v, self.conjugator)


@dataclass(frozen=True)
class _CollapseRule:
    """pattern equals relator^(+-1) * replacement as free words.

    Replacing the pattern after a prefix P therefore peels off the
    single factor P relator^(+-1) P^-1, exactly."""

    pattern: Word
    replacement: Word
    relator: Word
    inverted: bool


def _power_collapse_rules(relators: Iterable[Word]) -> tuple[list[_CollapseRule], list[Word]]:
    """Length-lex-reducing rules from single-letter power relators.

    A relator c^m bounds runs of c at m // 2 and runs of c^-1 at
    (m - 1) // 2; relators mixing letters are returned untouched for
    the product search to handle."""
    rules: list[_CollapseRule] = []
    loops: list[Word] = []
    for r in sorted(relators, key=lambda w: (len(w), w)):
        if len(set(r)) != 1:
            loops.append(r)
            continue
        # orient so the rules rewrite toward the smaller letter
        base, flipped = (r, False) if not r[0] & 1 else (inverse(r), True)
        c, m = base[0], len(base)
        ci = inverse_letter(c)
        j = m // 2 + 1
        rules.append(_CollapseRule((c,) * j, (ci,) * (m - j), r, flipped))
        jq = m - j + 1
        rules.append(_CollapseRule((ci,) * jq, (c,) * (m - jq), r, not flipped))
    return rules, loops


def _apply_collapse(rules: list[_CollapseRule], w: Word) -> tuple[Word, tuple[_Factor, ...]]:
    """Rewrite w to normal form, logging one conjugated relator per step.

    Returns (nf, factors) with w == reduce(factors[0] ... factors[-1] nf)
    as free words, so the caller can replay the equation with product
    rules in either direction."""
    w = reduce_word(w)
    factors: list[_Factor] = []
    changed = True
    while changed:
        changed = False
        for rule in rules:
            m = len(rule.pattern)
            for i in range(len(w) - m + 1):
                if w[i:i + m] == rule.pattern:
                    prefix = w[:i]
                    factors.append(_Factor(prefix, rule.relator, rule.inverted))
                    w = reduce_word(prefix + rule.replacement + w[i + m:])
                    changed = True
                    break
            if changed:
                break
    return w, tuple(factors)


# A breadth-first move is either ("m", i): multiply on the right by
# atom i, or ("c", s): conjugate the whole product by letter s.
_Move = tuple[str, int]


class SimpleDecider:
    """Word-problem certificates for a finite simple quotient.

    Equal answers come with a derivation of the word from the relators;
    NotEqual answers come with derivations of every generator from the
    relators plus the word.  Both are replayed by the caller before
    being believed.

    The power relators collapse every word to a normal form in the
    quotient they present by themselves, and those normal forms are
    sparse enough that the remaining gap closes by bidirectional
    breadth-first search over two moves: right-multiplication by a
    rotation of a leftover relator (or of the decided word), and
    conjugation by a single letter.  Both moves are exact product
    bookkeeping, so a found path unwinds into a free-group identity."""

    _NF_CACHE_CAP = 500_000

    def __init__(self, p: GroupPresentation):
        self.p = p
        self.k = p.k
        self.rules, self.loops = _power_collapse_rules(p.relators)
        self._path_cache: dict[tuple[Word, Word], Optional[list[_Factor]]] = {}
        self._nf_cache: dict[Word, Word] = {}
        self.loop_atoms = self._rotation_atoms(self.loops, inverted_too=True)

    def normal_form(self, w: Word) -> Word:
        w = reduce_word(w)
        nf = self._nf_cache.get(w)
        if nf is None:
            nf = _apply_collapse(self.rules, w)[0]
            if len(self._nf_cache) < self._NF_CACHE_CAP:
                self._nf_cache[w] = nf
        return nf

    def _rotation_atoms(self, bases: Iterable[Word], inverted_too: bool) -> list[tuple[Word, _Factor]]:
        """Nonempty normal forms of all rotations of the bases.

        A rotation starting at i is c base c^-1 for c = inverse(base[:i]),
        so each atom is one conjugated axiom."""
        out: list[tuple[Word, _Factor]] = []
        seen: set[Word] = set()
        for base in bases:
            signs = (False, True) if inverted_too else (False,)
            for inv in signs:
                word = inverse(base) if inv else base
                for i in range(len(word)):
                    f = _Factor(inverse(word[:i]), base, inv)
                    nf = self.normal_form(f.value())
                    if nf and nf not in seen:
                        seen.add(nf)
                        out.append((nf, f))
        return out

    def _neighbors(self, u: Word, atoms: list[Word], length_cap: int,
                   backward: bool) -> list[tuple[Word, _Move]]:
        out = []
        for i, t in enumerate(atoms):
            v = self.normal_form(u + (inverse(t) if backward else t))
            if len(v) <= length_cap:
                out.append((v, ("m", i)))
        for s in range(2 * self.k):
            si = inverse_letter(s)
            v = self.normal_form(((si,) if backward else (s,)) + u + ((s,) if backward else (si,)))
            if len(v) <= length_cap:
                out.append((v, ("c", s)))
        return out

    def _product_path(self, dst: Word, atoms: list[Word], length_cap: int,
                      state_cap: int) -> Optional[list[_Move]]:
        """Moves from the empty word to dst, found bidirectionally.

        Backward moves store the forward move they mirror, so a meeting
        point splices into one forward move list."""
        if dst == IDENTITY_WORD:
            return []
        fwd: dict[Word, tuple[Word, _Move]] = {IDENTITY_WORD: (IDENTITY_WORD, ("", -1))}
        bwd: dict[Word, tuple[Word, _Move]] = {dst: (dst, ("", -1))}
        fq, bq = [IDENTITY_WORD], [dst]

        def splice(meet: Word) -> list[_Move]:
            first: list[_Move] = []
            u = meet
            while u != IDENTITY_WORD:
                u, mv = fwd[u]
                first.append(mv)
            first.reverse()
            u = meet
            while u != dst:
                u, mv = bwd[u]
                first.append(mv)
            return first

        while fq or bq:
            if len(fwd) + len(bwd) > state_cap:
                return None
            expand_fwd = bool(fq) and (not bq or len(fq) <= len(bq))
            queue, table, other = (fq, fwd, bwd) if expand_fwd else (bq, bwd, fwd)
            nxt: list[Word] = []
            for u in queue:
                for v, mv in self._neighbors(u, atoms, length_cap, backward=not expand_fwd):
                    if v in table:
                        continue
                    table[v] = (u, mv)
                    if v in other:
                        return splice(v)
                    nxt.append(v)
            queue[:] = nxt
        return None

    def _moves_to_factors(self, moves: list[_Move],
                          atom_factors: list[_Factor]) -> list[_Factor]:
        out: list[_Factor] = []
        for kind, arg in moves:
            if kind == "m":
                out.append(atom_factors[arg])
            else:
                out = [_Factor(reduce_word((arg,) + f.conjugator), f.base, f.inverted)
                       for f in out]
        return out

    # -- emission -------------------------------------------------------

    def _emit_factor(self, b: _DerivationBuilder, f: _Factor) -> Word:
        """Derive the factor's value from its base (a leaf or derived word)."""
        u = f.base
        if f.inverted:
            u = b.invert(u)
        if f.conjugator:
            u = b.conjugate_by(u, f.conjugator)
        return u

    def _emit_equation(self, b: _DerivationBuilder, factors: list[_Factor],
                       collapse: tuple[_Factor, ...]) -> Word:
        """Derive nf(prod) given prod = factor_1 ... factor_t and its collapse.

        Folds the product left to right, then peels the collapse factors
        off the left: prod = g_1 ... g_s nf means nf = g_s^-1 ... g_1^-1 prod."""
        acc: Optional[Word] = None
        for f in factors:
            v = self._emit_factor(b, f)
            acc = v if acc is None else b.multiply(acc, v)
        assert acc is not None
        for g in collapse:
            flipped = _Factor(g.conjugator, g.base, not g.inverted)
            acc = b.multiply(self._emit_factor(b, flipped), acc)
        return acc

    def _wrap_collapse(self, b: _DerivationBuilder, acc: Word,
                       collapse: tuple[_Factor, ...]) -> Word:
        """From a derived nf back to the original word: w = g_1 ... g_s nf."""
        for g in reversed(collapse):
            acc = b.multiply(self._emit_factor(b, g), acc)
        return acc

    # -- certificates ----------------------------------------------------

    def derive_kernel_word(self, u: Word, effort: int) -> Optional[list[int]]:
        """Stream indices deriving u from the relators, or None."""
        u = reduce_word(u)
        b = _DerivationBuilder(self.k)
        if u == IDENTITY_WORD:
            b.indices.append(unit_rule_index())
            return b.indices
        nf, wrap = _apply_collapse(self.rules, u)
        if nf == IDENTITY_WORD:
            acc: Optional[Word] = None
            for f in wrap:
                v = self._emit_factor(b, f)
                acc = v if acc is None else b.multiply(acc, v)
        else:
            factors = self._find_product(nf, extra=None, effort=effort)
            if factors is None:
                return None
            prod = reduce_word(sum((f.value() for f in factors), ()))
            _, peel = _apply_collapse(self.rules, prod)
            acc = self._emit_equation(b, factors, peel)
            acc = self._wrap_collapse(b, acc, wrap)
        if acc != u:
            return None
        return b.indices

    def derive_generator_over(self, w: Word, gen_index: int, effort: int) -> Optional[list[int]]:
        """Stream indices deriving generator `gen_index` from relators + w."""
        w = reduce_word(w)
        target: Word = (2 * gen_index,)
        b = _DerivationBuilder(self.k)
        wbar, w_wrap = _apply_collapse(self.rules, w)
        t_nf, t_wrap = _apply_collapse(self.rules, target)
        if t_nf == IDENTITY_WORD:
            # the power relators alone already kill this generator
            acc: Optional[Word] = None
            for f in t_wrap:
                v = self._emit_factor(b, f)
                acc = v if acc is None else b.multiply(acc, v)
            return b.indices if acc == target else None
        if wbar == IDENTITY_WORD:
            return None
        if w_wrap:
            # derive nf(w) from the leaf w up front; the replayed set then
            # already holds it when the product factors below consume it
            acc_w = w
            for f in w_wrap:
                flipped = _Factor(f.conjugator, f.base, not f.inverted)
                acc_w = b.multiply(self._emit_factor(b, flipped), acc_w)
            assert acc_w == wbar
        factors = self._find_product(t_nf, extra=wbar, effort=effort)
        if factors is None:
            return None
        prod = reduce_word(sum((f.value() for f in factors), ()))
        _, peel = _apply_collapse(self.rules, prod)
        acc = self._emit_equation(b, factors, peel)
        acc = self._wrap_collapse(b, acc, t_wrap)
        if acc != target:
            return None
        return b.indices

    def _find_product(self, dst: Word, extra: Optional[Word],
                      effort: int) -> Optional[list[_Factor]]:
        """An ordered factor list multiplying out to dst in the quotient
        of the power relators, or None within this effort."""
        key = (dst, extra if extra is not None else ())
        if key in self._path_cache and self._path_cache[key] is not None:
            return self._path_cache[key]
        atoms = list(self.loop_atoms)
        if extra is not None:
            atoms.extend(self._rotation_atoms([extra], inverted_too=True))
        atom_words = [t for t, _ in atoms]
        atom_factors = [f for _, f in atoms]
        longest = max((len(t) for t in atom_words), default=0)
        length_cap = max(len(dst), longest) + 2 + 4 * effort
        state_cap = 2000 * 3 ** (effort - 1)
        moves = self._product_path(dst, atom_words, length_cap, state_cap)
        result = None if moves is None else self._moves_to_factors(moves, atom_factors)
        self._path_cache[key] = result
        return result


class Decision(Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    UNDECIDED = "Undecided"


DECIDE_CAP = 5

_decider_cache: dict[GroupPresentation, SimpleDecider] = {}


def decide_word_simple(
    p: GroupPresentation,
    w: Word,
    cap: int = DECIDE_CAP,
    oracle: Optional[PermOracle] = None,
) -> Decision:
    """Decide w = 1 in a finite simple quotient, with verified certificates.

    Alternates between hunting a derivation of w from the relators
    (Equal) and derivations of every generator from relators + w
    (NotEqual), at growing effort, up to cap rounds.  Every candidate
    is replayed against the rule stream before a verdict is returned,
    so the optional oracle only reorders the two attempts.
    """
    w = reduce_word(w)
    stream = group_rules(p.k)
    decider = _decider_cache.get(p)
    if decider is None:
        decider = _decider_cache.setdefault(p, SimpleDecider(p))
    relator_ranks = set(p.relator_ranks())
    target = word_rank(p.k, w)

    def equal_attempt(effort: int) -> bool:
        seq = decider.derive_kernel_word(w, effort)
        if seq is None:
            return False
        leaves = replay_rules(stream, seq, target)
        return leaves is not None and leaves <= relator_ranks

    def not_equal_attempt(effort: int) -> bool:
        for gen in range(p.k):
            seq = decider.derive_generator_over(w, gen, effort)
            if seq is None:
                return False
            leaves = replay_rules(stream, seq, word_rank(p.k, (2 * gen,)))
            if leaves is None or not leaves <= relator_ranks | {target}:
                return False
        return True

    order = [(equal_attempt, Decision.EQUAL), (not_equal_attempt, Decision.NOT_EQUAL)]
    if oracle is not None and not oracle.word_is_identity(w):
        order.reverse()
    for effort in range(1, cap + 1):
        for attempt, verdict in order:
            if attempt(effort):
                return verdict
    return Decision.UNDECIDED


# ---------------------------------------------------------------------------
# Simplicity profile


@dataclass(frozen=True)
class SimplicityProfile:
    entries: dict[Word, int]
    ball_maxima: dict[int, int]

    def g1(self, w: Word) -> int:
        return self.entries[w]

    def g1_prime(self, n: int) -> int:
        return self.ball_maxima[n]


def _ball(oracle: PermOracle, radius: int) -> dict[Perm, int]:
    """Cayley distance over generators and inverses, out to radius."""
    dist = {oracle.identity: 0}
    frontier = [oracle.identity]
    gens = [oracle.letter_perm(c) for c in range(2 * oracle.presentation.k)]
    for d in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for s in gens:
                e = perm_compose(g, s)
                if e not in dist:
                    dist[e] = d
                    nxt.append(e)
        frontier = nxt
    return dist


def _conjugate_reach(oracle: PermOracle, w_perm: Perm, p: int) -> set[Perm]:
    """Products of < p conjugates h w^(+-1) h^-1, h a product of < p generators."""
    conj = set()
    winv = perm_inverse(w_perm)
    for h in _ball(oracle, p - 1):
        hi = perm_inverse(h)
        conj.add(perm_compose(perm_compose(h, w_perm), hi))
        conj.add(perm_compose(perm_compose(h, winv), hi))
    reach = {oracle.identity}
    frontier = [oracle.identity]
    for _ in range(p - 1):
        nxt = []
        for g in frontier:
            for c in conj:
                e = perm_compose(g, c)
                if e not in reach:
                    reach.add(e)
                    nxt.append(e)
        frontier = nxt
    return reach


def g1_value(oracle: PermOracle, w_perm: Perm, p_max: int) -> int:
    """Least p with every generator a product of < p conjugates of w
    by elements that are themselves products of < p generators."""
    if w_perm == oracle.identity:
        raise ValueError("g1 is undefined at the identity")
    gen_perms = [oracle.letter_perm(2 * i) for i in range(oracle.presentation.k)]
    for p in range(1, p_max + 1):
        if all(g in _conjugate_reach(oracle, w_perm, p) for g in gen_perms):
            return p
    raise ValueError(f"g1 exceeds p_max = {p_max}")


def simplicity_profile(oracle: PermOracle, n_max: int, p_max: int) -> SimplicityProfile:
    dist = _ball(oracle, n_max)
    reps: dict[Perm, Word] = {}
    # shortlex representative per element, for readable table keys
    k = oracle.presentation.k
    frontier: list[Word] = [IDENTITY_WORD]
    reps[oracle.identity] = IDENTITY_WORD
    while frontier:
        nxt = []
        for u in frontier:
            for c in range(2 * k):
                v = reduce_word(u + (c,))
                if len(v) <= len(u):
                    continue
                e = oracle.word_perm(v)
                if e not in reps:
                    reps[e] = v
                    nxt.append(v)
        frontier = nxt
    entries: dict[Word, int] = {}
    values: dict[Perm, int] = {}
    for e, d in dist.items():
        if e == oracle.identity:
            continue
        values[e] = g1_value(oracle, e, p_max)
        entries[reps[e]] = values[e]
    maxima = {}
    for n in range(1, n_max + 1):
        inside = [values[e] for e, d in dist.items() if 0 < d <= n]
        if inside:
            maxima[n] = max(inside)
    return SimplicityProfile(entries, maxima)


def simple_membership_test(oracle: PermOracle, w: Word, t: int) -> bool:
    """True iff w marks the identity, decided through a g1 bound t.

    A nonidentity w in a simple group expresses every generator as a
    product of < t conjugates once t >= g1(w); the identity expresses
    only itself.  So w = 1 exactly when some generator stays out of
    reach."""
    reach = _conjugate_reach(oracle, oracle.word_perm(w), t)
    gen_perms = [oracle.letter_perm(2 * i) for i in range(oracle.presentation.k)]
    return not all(g in reach for g in gen_perms)


# ---------------------------------------------------------------------------
# The 1-generator family below which the group Z is maximal


def z_family(search_limit: int = 32) -> FiniteFamily:
    """Family index p stands for the singleton {a^(p+1)}.

    Every nontrivial point of the 1-generator space contains some a^m
    with m >= 1, so the family covers everything strictly above the
    point of the group Z, which contains only the empty word."""
    def sets_at(p: int) -> frozenset[int]:
        return frozenset({word_rank(1, (0,) * (p + 1))})

    return FiniteFamily(sets_at=sets_at, size_at=lambda p: 1, search_limit=search_limit)


def z_certificate_budget(m: int) -> int:
    """Engine budget that reaches the rules certifying a^m over Z."""
    if m >= 0:
        return 1
    return inverse_rule_index(word_rank(1, (1,) * (-m))) + 1


# ---------------------------------------------------------------------------
# Presentation file format


def parse_group_file(text: str) -> GroupPresentation:
    """Header ``universe group <k>`` then ``relator <word>`` lines."""
    k: Optional[int] = None
    relators: set[Word] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if k is None:
            if len(parts) != 3 or parts[0] != "universe" or parts[1] != "group":
                raise ParseError("expected header 'universe group <k>'", lineno)
            try:
                k = int(parts[2])
            except ValueError:
                raise ParseError(f"bad generator count {parts[2]!r}", lineno) from None
            if k < 1:
                raise ParseError("need at least one generator", lineno)
            continue
        if len(parts) != 2 or parts[0] != "relator":
            raise ParseError("expected 'relator <word>'", lineno)
        try:
            w = word_from_str(parts[1], k)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if not w:
            raise ParseError("relators must be nonempty after reduction", lineno)
        relators.add(w)
    if k is None:
        raise ParseError("empty file: missing 'universe group <k>' header")
    return GroupPresentation(k, frozenset(relators))


def format_group_file(p: GroupPresentation) -> str:
    lines = [f"universe group {p.k}"]
    for r in sorted(p.relators, key=lambda w: (len(w), w)):
        lines.append(f"relator {word_to_str(r)}")
    return "\n".join(lines) + "\n"
