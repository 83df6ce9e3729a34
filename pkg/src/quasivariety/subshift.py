"""Subshifts over a finite alphabet as a closure space on finite words.

Atoms are finite words in length-lexicographic order.  A set of words is
a point when it is closed under the extension rules (any superword of a
forbidden word is forbidden) and the contraction rules (a word all of
whose one-letter extensions are forbidden is forbidden).  The points are
exactly the forbidden languages of subshifts; smaller subshifts have
larger forbidden languages, and the empty subshift corresponds to the
set of all words.

The de Bruijn oracle computes admissible languages of subshifts of
finite type directly, independent of the rule engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .enumeration import AtomEnumeration
from .errors import GuardError, ParseError
from .operators import EnumerationOperator, Evaluation
from .rules import HornRule, RuleStream

Word = tuple[int, ...]
EPSILON: Word = ()

ORACLE_GUARD = 16


@dataclass(frozen=True)
class Alphabet:
    """Letters 0..size-1 with one display character each."""

    letters: str

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("alphabet needs at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("display letters must be distinct")

    @property
    def size(self) -> int:
        return len(self.letters)

    def word_from_str(self, text: str) -> Word:
        if text == "-":
            return EPSILON
        try:
            return tuple(self.letters.index(c) for c in text)
        except ValueError:
            raise ValueError(f"letter outside alphabet in {text!r}") from None

    def word_to_str(self, w: Word) -> str:
        return "".join(self.letters[i] for i in w) if w else "-"


@dataclass(frozen=True)
class SftPresentation:
    alphabet: Alphabet
    forbidden: frozenset[Word]

    def __post_init__(self) -> None:
        s = self.alphabet.size
        for w in self.forbidden:
            if any(c >= s or c < 0 for c in w):
                raise ValueError(f"forbidden word {w} outside the alphabet")


# ---------------------------------------------------------------------------
# Word codec: length-lexicographic rank


def words_up_to(size: int, length: int) -> int:
    """How many words of length <= length exist over `size` letters."""
    if length < 0:
        return 0
    if size == 1:
        return length + 1
    return (size ** (length + 1) - 1) // (size - 1)


def word_rank(size: int, w: Word) -> int:
    value = 0
    for c in w:
        value = value * size + c
    return words_up_to(size, len(w) - 1) + value


def word_unrank(size: int, rank: int) -> Word:
    if rank < 0:
        raise ValueError("rank must be a natural")
    length = 0
    while words_up_to(size, length) <= rank:
        length += 1
    value = rank - words_up_to(size, length - 1)
    out = []
    for _ in range(length):
        value, c = divmod(value, size)
        out.append(c)
    return tuple(reversed(out))


# ---------------------------------------------------------------------------
# The rule stream

# Per word w of rank t, a block of 2s+2 rules starting at t*(2s+2):
#   offsets 0..s-1      {w} => (letter j)w
#   offsets s..2s-1     {w} => w(letter j)
#   offset 2s           {wa : a in alphabet} => w
#   offset 2s+1         {aw : a in alphabet} => w


def block_size(size: int) -> int:
    return 2 * size + 2


def left_extension_index(size: int, w: Word, letter: int) -> int:
    return word_rank(size, w) * block_size(size) + letter

def right_extension_index(size: int, w: Word, letter: int) -> int:
    return word_rank(size, w) * block_size(size) + size + letter

def right_contraction_index(size: int, w: Word) -> int:
    return word_rank(size, w) * block_size(size) + 2 * size

def left_contraction_index(size: int, w: Word) -> int:
    return word_rank(size, w) * block_size(size) + 2 * size + 1


def subshift_rules(alphabet: Alphabet) -> RuleStream:
    """Extension and contraction rules for every word, in length-lex blocks."""
    s = alphabet.size
    b = block_size(s)

    def rule_at(i: int) -> HornRule:
        t, offset = divmod(i, b)
        w = word_unrank(s, t)
        if offset < s:
            return HornRule(frozenset({t}), word_rank(s, (offset,) + w))
        if offset < 2 * s:
            return HornRule(frozenset({t}), word_rank(s, w + (offset - s,)))
        if offset == 2 * s:
            premises = frozenset(word_rank(s, w + (a,)) for a in range(s))
        else:
            premises = frozenset(word_rank(s, (a,) + w) for a in range(s))
        return HornRule(premises, t)

    return RuleStream(rule_at, declared_finite=None,
                      description=f"subshift rules over {alphabet.letters!r}")


# How many stream indices cover every rule block for words of length
# <= L + pad.  The pad absorbs contraction derivations that pass through
# words longer than their conclusion; it was sized against the de Bruijn
# oracle on random presentations, not derived from a worst-case bound.
EXTENSION_PAD = 4


def budget_for_length(alphabet: Alphabet, length: int, pad: int = EXTENSION_PAD) -> int:
    s = alphabet.size
    return block_size(s) * words_up_to(s, length + pad)


def forbidden_seeds(p: SftPresentation) -> list[int]:
    return sorted(word_rank(p.alphabet.size, w) for w in p.forbidden)


# ---------------------------------------------------------------------------
# de Bruijn oracle


def _trimmed_graph(p: SftPresentation) -> tuple[set[Word], set[Word]]:
    """Vertices (length m-1) and edge labels (length m) surviving the trim."""
    s = p.alphabet.size
    m = max((len(w) for w in p.forbidden), default=1)
    m = max(m, 1)

    def has_forbidden_factor(w: Word) -> bool:
        return any(w[i:i + len(f)] == f for f in p.forbidden for i in range(len(w) - len(f) + 1))

    def all_words(length: int) -> Iterable[Word]:
        if length == 0:
            yield EPSILON
            return
        for prefix in all_words(length - 1):
            for c in range(s):
                yield prefix + (c,)

    vertices = set(all_words(m - 1))
    edges = {w for w in all_words(m) if not has_forbidden_factor(w)}
    while True:
        out_deg = {v: 0 for v in vertices}
        in_deg = {v: 0 for v in vertices}
        for e in edges:
            out_deg[e[:-1]] += 1
            in_deg[e[1:]] += 1
        dead = {v for v in vertices if out_deg[v] == 0 or in_deg[v] == 0}
        if not dead:
            return vertices, edges
        vertices -= dead
        edges = {e for e in edges if e[:-1] in vertices and e[1:] in vertices}


def sft_language_oracle(p: SftPresentation, length: int) -> set[Word]:
    """Admissible words of length <= length, by de Bruijn path enumeration.

    Every surviving vertex lies on a bi-infinite admissible path, so a
    word is admissible iff its window walk stays in the trimmed graph.
    If the graph trims to nothing the subshift is empty and nothing is
    admissible, not even the empty word.
    """
    if length > ORACLE_GUARD:
        raise GuardError(f"oracle guard: length {length} exceeds {ORACLE_GUARD}")
    vertices, edges = _trimmed_graph(p)
    if not vertices:
        return set()
    m = max((len(w) for w in p.forbidden), default=1)
    m = max(m, 1)
    out: set[Word] = set()
    # short words are factors of surviving vertices
    for v in vertices:
        for ell in range(0, min(length, m - 1) + 1):
            for i in range(len(v) - ell + 1):
                out.add(v[i:i + ell])
    # longer words are walks: extend edge by edge
    frontier = {e for e in edges if len(e) <= length}
    out |= frontier
    while frontier:
        grown = set()
        for w in frontier:
            if len(w) >= length:
                continue
            for c in range(p.alphabet.size):
                if w[len(w) - m + 1:] + (c,) in edges:
                    grown.add(w + (c,))
        out |= grown
        frontier = grown
    return {w for w in out if len(w) <= length}


def forbidden_words(p: SftPresentation, length: int) -> set[Word]:
    admissible = sft_language_oracle(p, length)
    s = p.alphabet.size
    total = words_up_to(s, length)
    return {word_unrank(s, r) for r in range(total)} - admissible


def is_minimal_sft(p: SftPresentation) -> bool:
    """One-dimensional minimal SFTs are single periodic orbits."""
    vertices, edges = _trimmed_graph(p)
    if not vertices:
        return False
    out_deg: dict[Word, int] = {}
    succ: dict[Word, Word] = {}
    for e in edges:
        out_deg[e[:-1]] = out_deg.get(e[:-1], 0) + 1
        succ[e[:-1]] = e[1:]
    in_deg: dict[Word, int] = {}
    for e in edges:
        in_deg[e[1:]] = in_deg.get(e[1:], 0) + 1
    if any(out_deg.get(v, 0) != 1 or in_deg.get(v, 0) != 1 for v in vertices):
        return False
    # functional graph with all degrees 1: minimal iff one cycle covers it
    start = next(iter(vertices))
    seen = {start}
    v = succ[start]
    while v != start:
        seen.add(v)
        v = succ[v]
    return seen == vertices


# ---------------------------------------------------------------------------
# Quasiperiodicity

LanguageOracle = Callable[[int], set[Word]]


def oracle_from_sft(p: SftPresentation) -> LanguageOracle:
    def words_of_length(n: int) -> set[Word]:
        return {w for w in sft_language_oracle(p, n) if len(w) == n}
    return words_of_length


def quasiperiodicity(lang: LanguageOracle, n: int, cap: int) -> Optional[int]:
    """Least N <= cap with every admissible N-word containing every
    admissible n-word as a factor; None if the cap is exceeded."""
    targets = lang(n)
    if not targets:
        raise ValueError("empty language has no quasiperiodicity bound")
    for big in range(n, cap + 1):
        hosts = lang(big)
        if not hosts:
            raise ValueError("language died out before the bound was reached")
        if all(_contains(h, t) for h in hosts for t in targets):
            return big
    return None


def _contains(host: Word, factor: Word) -> bool:
    return any(host[i:i + len(factor)] == factor for i in range(len(host) - len(factor) + 1))


# ---------------------------------------------------------------------------
# Substitution subshifts (recursively presented, usually not finite type)


def substitution_stream(
    rules: dict[int, Word],
    alphabet: Alphabet,
    forbidden_length_cap: int = 10,
) -> tuple[LanguageOracle, AtomEnumeration]:
    """Admissible-language oracle and forbidden-word enumeration of a
    primitive substitution, iterated on letter 0 until factors stabilize.

    The enumeration lists the complement in length-lex order up to the
    cap, one word per step, which is all a finite demo consumes.
    """
    s = alphabet.size
    if set(rules) != set(range(s)):
        raise ValueError("substitution must map every letter")
    # primitivity: some power of the incidence matrix is strictly positive
    mat = [[rules[i].count(j) for j in range(s)] for i in range(s)]
    power = [row[:] for row in mat]
    for _ in range(2 * s):
        if all(all(e > 0 for e in row) for row in power):
            break
        power = [[sum(power[i][k] * mat[k][j] for k in range(s)) for j in range(s)]
                 for i in range(s)]
    else:
        if not all(all(e > 0 for e in row) for row in power):
            raise ValueError("substitution is not primitive")

    def apply(w: Word) -> Word:
        out: list[int] = []
        for c in w:
            out.extend(rules[c])
        return tuple(out)

    def factors(w: Word, n: int) -> set[Word]:
        return {w[i:i + ell] for ell in range(n + 1) for i in range(len(w) - ell + 1)}

    def words_of_length(n: int) -> set[Word]:
        w: Word = (0,)
        for _ in range(80):
            nxt = apply(w)
            cur = factors(nxt, n)
            if cur == factors(w, n) and len(w) >= n:
                return {u for u in cur if len(u) == n}
            w = nxt
        raise ValueError("factor sets failed to stabilize")

    admissible: set[Word] = set()
    for n in range(forbidden_length_cap + 1):
        admissible |= words_of_length(n)
    total = words_up_to(s, forbidden_length_cap)
    bad = [r for r in range(total) if word_unrank(s, r) not in admissible]
    return words_of_length, AtomEnumeration(tuple((r, i) for i, r in enumerate(bad)))


FIBONACCI = {0: (0, 1), 1: (0,)}


# ---------------------------------------------------------------------------
# The window operator: admissible words enumerate from forbidden ones


class WindowOperator(EnumerationOperator):
    """eval(w, N) lists every length-N word omitting w.

    If all of them are forbidden then w appears in every admissible
    N-word, which certifies that w itself is admissible.  For a minimal
    subshift the quasiperiodicity bound at |w| is such an N whenever w
    is admissible, so this operator realizes the admissible language as
    enumerable from the forbidden one.
    """

    def __init__(self, alphabet: Alphabet, max_window: int):
        if max_window < 0:
            raise ValueError("window cap must be a natural")
        self.alphabet = alphabet
        self.max_window = max_window
        self.code_bound = max_window + 1

    def eval(self, atom: int, code: int) -> Evaluation:
        if code > self.max_window:
            return None
        s = self.alphabet.size
        w = word_unrank(s, atom)
        lo = words_up_to(s, code - 1)
        hi = words_up_to(s, code)
        return frozenset(
            r for r in range(lo, hi) if not _contains(word_unrank(s, r), w)
        )


def minimal_complement_hint(
    p: SftPresentation, length_cap: int
) -> Callable[[RuleStream, int, frozenset[int]], Optional[tuple[int, ...]]]:
    """Directed derivations certifying admissible words of a minimal SFT.

    ``hint(stream, target, base)`` returns rule indices deriving ``target``
    (normally the empty word, the complement anchor) from ``base``, a
    forbidden-language prefix plus one admissible word w.  By uniform
    recurrence every admissible word of length g(|w|) contains w, so it
    builds from w by single-letter extensions; shorter admissible words
    contract from their right extensions; forbidden words stay leaves and
    must already sit in the base.  Returns None when the base holds no
    admissible word or its forbidden prefix is too short.  Anything
    returned replays: premises are concluded in dependency order.
    """
    s = p.alphabet.size
    lang = oracle_from_sft(p)
    admissible: set[Word] = set()
    for n in range(length_cap + 1):
        admissible |= lang(n)
    adm_ranks = {word_rank(s, w): w for w in admissible}
    bounds: dict[int, Optional[int]] = {}

    def g(n: int) -> Optional[int]:
        if n not in bounds:
            bounds[n] = quasiperiodicity(lang, n, length_cap)
        return bounds[n]

    def hint(stream: RuleStream, target: int, base: frozenset[int]) -> Optional[tuple[int, ...]]:
        w = next((adm_ranks[r] for r in adm_ranks if r in base), None)
        if w is None:
            return None
        big = g(len(w))
        if big is None:
            return None
        seq: list[int] = []
        done: set[Word] = set()

        def derive(u: Word) -> bool:
            if u in done:
                return True
            if u not in admissible:
                return len(u) <= length_cap and word_rank(s, u) in base
            pos = next((i for i in range(len(u) - len(w) + 1) if u[i:i + len(w)] == w), None)
            if pos is not None:
                cur = w
                for c in u[pos + len(w):]:
                    nxt = cur + (c,)
                    if nxt not in done:
                        seq.append(right_extension_index(s, cur, c))
                        done.add(nxt)
                    cur = nxt
                for c in reversed(u[:pos]):
                    nxt = (c,) + cur
                    if nxt not in done:
                        seq.append(left_extension_index(s, cur, c))
                        done.add(nxt)
                    cur = nxt
                return True
            if len(u) >= big:
                return False
            for a in range(s):
                if not derive(u + (a,)):
                    return False
            seq.append(right_contraction_index(s, u))
            done.add(u)
            return True

        if not derive(word_unrank(s, target)):
            return None
        return tuple(seq)

    return hint


# ---------------------------------------------------------------------------
# SFT file format


def parse_sft_file(text: str) -> SftPresentation:
    """Header ``universe subshift <letters>`` then ``forbid <word>`` lines."""
    alphabet: Optional[Alphabet] = None
    forbidden: set[Word] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if alphabet is None:
            if len(parts) != 3 or parts[0] != "universe" or parts[1] != "subshift":
                raise ParseError("expected header 'universe subshift <letters>'", lineno)
            try:
                alphabet = Alphabet(parts[2])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        if len(parts) != 2 or parts[0] != "forbid":
            raise ParseError("expected 'forbid <word>'", lineno)
        try:
            forbidden.add(alphabet.word_from_str(parts[1]))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if alphabet is None:
        raise ParseError("empty file: missing 'universe subshift <letters>' header")
    return SftPresentation(alphabet, frozenset(forbidden))


def format_sft_file(p: SftPresentation) -> str:
    lines = [f"universe subshift {p.alphabet.letters}"]
    for w in sorted(p.forbidden, key=lambda w: (len(w), w)):
        lines.append(f"forbid {p.alphabet.word_to_str(w)}")
    return "\n".join(lines) + "\n"
