"""Ideals of the rational polynomial ring, as a saturation instance.

The universe is Q[t] enumerated by height: the height of a nonzero
polynomial is the larger of its degree and the sizes of its coefficients,
where the size of a rational is max(|numerator|, denominator).  Within one
height block polynomials are ordered by degree, then lexicographically on
coefficients from the leading one down; rationals themselves are ordered by
size, then by (numerator, denominator).  Ranks are computed by counting,
never by enumerating, so the codec stays usable for the large-height
cofactors that exact Bezout certificates produce.

The rule stream dovetails the ideal axioms: the zero rule at index 0, then
negation, addition and scaling rules in interleaved blocks of three with
published index formulas.  The division oracle and a Bezout layer
(remainder conjugation for monic integer quadratics, extended Euclidean
division in general) provide the complement certificates that the
maximal-ideal demo checks against the stream.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .certify import complement_witness
from .engine import SaturationEngine
from .errors import GuardError, ParseError
from .operators import complement_op_maximal, presentation_operator, replay_rules
from .pairing import pair, unpair
from .rules import HornRule, RuleStream

Poly = tuple[Fraction, ...]

ZERO_POLY: Poly = ()
ONE_POLY: Poly = (Fraction(1),)


def poly(coeffs: Iterable) -> Poly:
    """Canonical polynomial from low-to-high coefficients."""
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _strip(out: list[Fraction]) -> Poly:
    # internal: coefficients are Fractions already, skip re-coercion
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_degree(p: Poly) -> int:
    return len(p) - 1


def poly_add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _strip(out)


def poly_neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_neg(q))


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO_POLY
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _strip(out)


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Exact quotient and remainder; q must be nonzero."""
    if not q:
        raise GuardError("division by the zero polynomial")
    rem = list(p)
    lead = q[-1]
    monic = lead == 1
    dq = len(q) - 1
    quo = [Fraction(0)] * max(len(p) - dq, 0)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if not c:
            continue
        f = c if monic else c / lead
        quo[i - dq] = f
        rem[i] = Fraction(0)
        for j in range(dq):
            if q[j]:
                rem[i - dq + j] -= f * q[j]
    return _strip(quo), _strip(rem)


def principal_membership(p: Poly, q: Poly) -> bool:
    """Whether p divides q; the ideal-membership oracle for (p)."""
    if not p:
        raise GuardError("membership oracle needs a nonzero generator")
    rem = list(q)
    lead = p[-1]
    monic = lead == 1
    dp = len(p) - 1
    for i in range(len(rem) - 1, dp - 1, -1):
        c = rem[i]
        if c.numerator:
            f = c if monic else c / lead
            for j in range(dp):
                if p[j]:
                    rem[i - dp + j] -= f * p[j]
    return not any(rem[:dp])


# ---------------------------------------------------------------------------
# literals: 3/2t^2-1t+4 style, highest degree first

_TERM = re.compile(
    r"(?P<sign>[+-]?)(?:(?P<num>\d+)(?:/(?P<den>\d+))?)?(?P<var>t(?:\^(?P<exp>\d+))?)?"
)


def poly_to_str(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mag = abs(c)
        coeff = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        var = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        sign = "-" if c < 0 else ("" if not parts else "+")
        parts.append(f"{sign}{coeff}{var}")
    return "".join(parts)


def poly_from_str(text: str) -> Poly:
    """Parse a polynomial literal; inverse of poly_to_str, unit coefficients optional."""
    s = text.strip()
    if s == "0":
        return ZERO_POLY
    if not s:
        raise ParseError("empty polynomial literal")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"bad polynomial literal at {s[pos:]!r}")
        if m.group("num") is None and m.group("var") is None:
            raise ParseError(f"bad polynomial literal at {s[pos:]!r}")
        if not first and m.group("sign") == "":
            raise ParseError(f"missing sign before {s[pos:]!r}")
        num = int(m.group("num")) if m.group("num") is not None else 1
        den = int(m.group("den")) if m.group("den") is not None else 1
        if den == 0:
            raise ParseError("zero denominator in literal")
        c = Fraction(num, den)
        if m.group("sign") == "-":
            c = -c
        exp = 0
        if m.group("var") is not None:
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + c
        pos = m.end()
        first = False
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return poly(out)


# ---------------------------------------------------------------------------
# rational layer of the codec

_phi: list[int] = [0, 1]
_phi_sum: list[int] = [0, 1]


def _grow_phi(n: int) -> None:
    if n < len(_phi):
        return
    size = max(n + 1, 2 * len(_phi), 1 << 12)
    table = list(range(size))
    for d in range(2, size):
        if table[d] == d:  # prime, untouched so far
            for m in range(d, size, d):
                table[m] -= table[m] // d
    _phi.clear()
    _phi.extend(table)
    _phi[0] = 0
    _phi_sum.clear()
    _phi_sum.append(0)
    acc = 0
    for k in range(1, size):
        acc += _phi[k]
        _phi_sum.append(acc)


def _phi_at(n: int) -> int:
    _grow_phi(n)
    return _phi[n]


def _phi_prefix(n: int) -> int:
    if n <= 0:
        return 0
    _grow_phi(n)
    return _phi_sum[n]


def rational_size(r: Fraction) -> int:
    """max(|num|, den); zero has size 0."""
    n = r.numerator
    if n == 0:
        return 0
    return max(-n if n < 0 else n, r.denominator)


def rationals_count(size_cap: int) -> int:
    """Number of rationals of size <= size_cap."""
    if size_cap <= 0:
        return 1
    if size_cap >= len(_phi):
        _grow_phi(size_cap)
    return 3 + 4 * (_phi_sum[size_cap] - 1)


@lru_cache(maxsize=None)
def _distinct_primes(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _coprime_prefix(m: int, s: int) -> int:
    """#{1 <= k <= m : gcd(k, s) = 1}, by inclusion-exclusion."""
    if m <= 0:
        return 0
    total = 0
    for mask_primes in _subset_products(s):
        d, sign = mask_primes
        total += sign * (m // d)
    return total


@lru_cache(maxsize=1 << 12)
def _subset_products(s: int) -> tuple[tuple[int, int], ...]:
    primes = _distinct_primes(s)
    out = []
    for mask in range(1 << len(primes)):
        d = 1
        bits = 0
        for i, pr in enumerate(primes):
            if mask >> i & 1:
                d *= pr
                bits += 1
        out.append((d, -1 if bits % 2 else 1))
    return tuple(out)


def _nth_coprime(j: int, s: int) -> int:
    """The j-th (1-based) positive integer coprime to s."""
    hi = 1
    while _coprime_prefix(hi, s) < j:
        hi *= 2
    lo = hi // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if _coprime_prefix(mid, s) >= j:
            hi = mid
        else:
            lo = mid + 1
    return lo


def rational_index(r: Fraction) -> int:
    """Position of r in the size-major enumeration of the rationals."""
    return _rat_index(r.numerator, r.denominator)


@lru_cache(maxsize=1 << 16)
def _rat_index(n: int, d: int) -> int:
    if n == 0:
        return 0
    s = max(-n if n < 0 else n, d)
    base = rationals_count(s - 1)
    phi_s = _phi_at(s)
    mid = _coprime_prefix(s - 1, s)
    if n == -s:
        before = _coprime_prefix(d - 1, s)
    elif n < 0:
        before = phi_s + mid - _coprime_prefix(-n, s)
    elif n < s:
        before = phi_s + mid + _coprime_prefix(n - 1, s)
    else:
        before = phi_s + 2 * mid + _coprime_prefix(d - 1, s)
    return base + before


def _level_search(i: int, count_upto) -> int:
    """Smallest level v >= 1 with count_upto(v) > i."""
    hi = 1
    while count_upto(hi) <= i:
        hi *= 2
    lo = max(hi // 2, 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if count_upto(mid) > i:
            hi = mid
        else:
            lo = mid + 1
    return lo


@lru_cache(maxsize=1 << 16)
def rational_at(i: int) -> Fraction:
    """Inverse of rational_index."""
    if i < 0:
        raise ValueError("rational index must be a natural")
    if i == 0:
        return Fraction(0)
    s = _level_search(i, rationals_count)
    pos = i - rationals_count(s - 1)
    phi_s = _phi_at(s)
    mid = _coprime_prefix(s - 1, s)
    if pos < phi_s:
        return Fraction(-s, _nth_coprime(pos + 1, s))
    pos -= phi_s
    if pos < mid:
        # negative middle columns ascend as their magnitudes descend
        return Fraction(-_nth_coprime(mid - pos, s), s)
    pos -= mid
    if pos < mid:
        return Fraction(_nth_coprime(pos + 1, s), s)
    pos -= mid
    return Fraction(s, _nth_coprime(pos + 1, s))


# ---------------------------------------------------------------------------
# polynomial layer of the codec


def poly_height(p: Poly) -> int:
    if not p:
        return 0
    return max(len(p) - 1, max(rational_size(c) for c in p))


def poly_count(height_cap: int) -> int:
    """Number of polynomials of height <= height_cap."""
    if height_cap < 0:
        return 0
    return rationals_count(height_cap) ** (height_cap + 1)


def _lex_below(digits: Sequence[int], a: int) -> int:
    """Same-degree tuples over an alphabet of a rationals, lex-below."""
    d = len(digits) - 1
    pw = a**d
    total = 0
    for j, g in enumerate(digits):
        lo = 1 if j == 0 else 0
        smaller = min(g, a) - lo
        if smaller > 0:
            total += smaller * pw
        if g >= a:
            return total
        pw //= a
    return total


def poly_rank(p: Poly) -> int:
    if not p:
        return 0
    h = poly_height(p)
    d = len(p) - 1
    a = rationals_count(h)
    b = rationals_count(h - 1)
    # lower heights, then lower degrees of this height (a geometric sum)
    off = b**h + a**d - b**d
    digits = [_rat_index(c.numerator, c.denominator) for c in reversed(p)]
    off += _lex_below(digits, a)
    if d <= h - 1:
        off -= _lex_below(digits, b)
    return off


def _digits_of(n: int) -> tuple[int, int, list[int]]:
    """(height, degree, leading-first digit indices) of a positive rank."""
    h = _level_search(n, poly_count)
    a = rationals_count(h)
    b = rationals_count(h - 1)
    off = n - b**h
    d = h
    powa = powb = 1
    for e in range(h + 1):
        c = (a - 1) * powa - ((b - 1) * powb if e <= h - 1 else 0)
        if off < c:
            d = e
            break
        off -= c
        powa *= a
        powb *= b
    prefix_small = d <= h - 1  # lower-height block carved out of this degree
    digits = []
    ar = a**d
    br = b**d
    for j in range(d + 1):
        lo = 1 if j == 0 else 0
        if prefix_small:
            per_small = ar - br
            nsmall = max(b - lo, 0)
            if per_small and off < nsmall * per_small:
                g = lo + off // per_small
                off %= per_small
            else:
                off -= nsmall * per_small
                g = b + off // ar
                off %= ar
                prefix_small = False
            br //= b
        else:
            g = lo + off // ar
            off %= ar
        ar //= a
        digits.append(g)
    return h, d, digits


def poly_unrank(n: int) -> Poly:
    if n < 0:
        raise ValueError("polynomial rank must be a natural")
    if n == 0:
        return ZERO_POLY
    _, _, digits = _digits_of(n)
    return _strip([rational_at(g) for g in reversed(digits)])


@lru_cache(maxsize=1 << 16)
def _neg_digit(g: int) -> int:
    return rational_index(-rational_at(g))


def _neg_rank(n: int) -> int:
    """Rank of the negated polynomial, via digit remapping.

    Negation preserves height and degree, so only the in-block digits move;
    this skips materializing any rationals on the hot negation-rule path.
    """
    if n == 0:
        return 0
    h, d, digits = _digits_of(n)
    a = rationals_count(h)
    b = rationals_count(h - 1)
    mapped = [_neg_digit(g) for g in digits]
    out = b**h + a**d - b**d + _lex_below(mapped, a)
    if d <= h - 1:
        out -= _lex_below(mapped, b)
    return out


# ---------------------------------------------------------------------------
# the ideal axioms as a dovetailed rule stream


def zero_rule_index() -> int:
    return 0


def negation_rule_index(a: int) -> int:
    return 1 + 3 * a


def addition_rule_index(a: int, b: int) -> int:
    return 2 + 3 * pair(a, b)


def scaling_rule_index(f: int, a: int) -> int:
    """Index of the rule {a} => f*a."""
    return 3 + 3 * pair(f, a)


@lru_cache(maxsize=1 << 16)
def _unrank_cached(n: int) -> Poly:
    return poly_unrank(n)


def _ideal_rule_at(i: int) -> Optional[HornRule]:
    if i == 0:
        return HornRule(frozenset(), 0)
    kind, n = (i - 1) % 3, (i - 1) // 3
    if kind == 0:
        return HornRule(frozenset({n}), _neg_rank(n))
    f, a = unpair(n)
    if kind == 1:
        s = poly_add(_unrank_cached(f), _unrank_cached(a))
        return HornRule(frozenset({f, a}), poly_rank(s))
    prod = poly_mul(_unrank_cached(f), _unrank_cached(a))
    return HornRule(frozenset({a}), poly_rank(prod))


def ideal_rules() -> RuleStream:
    """Zero, negation, addition and scaling rules, fairly interleaved."""
    return RuleStream(_ideal_rule_at, None, "ideal axioms over Q[t]")


# ---------------------------------------------------------------------------
# irreducibility guard and Bezout cofactors


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_root(p: Poly) -> Optional[Fraction]:
    """Some rational root of p, or None; exact candidate search."""
    if len(p) < 2:
        return None
    if p[0] == 0:
        return Fraction(0)
    scale = math.lcm(*(c.denominator for c in p))
    ints = [int(c * scale) for c in p]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    lead, const = abs(ints[-1]), abs(ints[0])
    for a in _divisors(const):
        for b in _divisors(lead):
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if sum(c * cand**k for k, c in enumerate(p)) == 0:
                    return cand
    return None


def check_irreducible(p: Poly) -> None:
    """Reject constants and reducible polynomials of degree <= 3.

    Degrees 2 and 3 are reducible over the rationals exactly when a
    rational root exists; degree 4 and up is accepted on the caller's word.
    """
    if len(p) < 2:
        raise GuardError("constants generate no maximal ideal")
    if 3 <= len(p) <= 4:
        root = rational_root(p)
        if root is not None:
            raise GuardError(f"reducible: {poly_to_str(p)} has root {root}")


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, x, y) with x*a + y*b = g and g monic (or zero)."""
    r0, r1 = a, b
    x0, x1 = ONE_POLY, ZERO_POLY
    y0, y1 = ZERO_POLY, ONE_POLY
    while r1 != ZERO_POLY:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, poly_sub(x0, poly_mul(q, x1))
        y0, y1 = y1, poly_sub(y0, poly_mul(q, y1))
    if r0 == ZERO_POLY:
        return ZERO_POLY, ZERO_POLY, ZERO_POLY
    inv = (Fraction(1) / r0[-1],)
    return poly_mul(inv, r0), poly_mul(inv, x0), poly_mul(inv, y0)


def bezout_cofactors(p: Poly, q: Poly) -> Optional[tuple[Poly, Poly]]:
    """(r, s) with r*q + s*p = 1, or None when p divides q."""
    g, y, x = poly_xgcd(q, p)
    if g != ONE_POLY:
        return None
    return y, x


def unit_derivation(p: Poly, q: Poly) -> Optional[tuple[int, ...]]:
    """Rule indices deriving the constant 1 from the leaves {p, q}.

    Scales q by its Bezout cofactor, scales p by the other one, then adds;
    the last two steps drop out when p's cofactor is zero.
    """
    cof = bezout_cofactors(p, q)
    if cof is None:
        return None
    r, s = cof
    rq = poly_mul(r, q)
    steps = [scaling_rule_index(poly_rank(r), poly_rank(q))]
    if s != ZERO_POLY:
        sp = poly_mul(s, p)
        steps.append(scaling_rule_index(poly_rank(s), poly_rank(p)))
        steps.append(addition_rule_index(poly_rank(rq), poly_rank(sp)))
    return tuple(steps)


# ---------------------------------------------------------------------------
# maximal-ideal demo

IDEAL_DEMO_BUDGET = 600_000
SWEEP_HEIGHT = 4
CANDIDATE_HEIGHT = 2
REPLAY_HEIGHT = 3  # certificate ranks stay tractable up to here


@dataclass(frozen=True)
class IdealDemoReport:
    """What the complement demo established for one generator."""

    generator: Poly
    budget: int
    emitted: int
    emission_sound: bool
    low_multiples_present: bool
    certified: tuple[Poly, ...]
    certificates_complete: bool
    sweep_height: int
    sweep_total: int
    sweep_members: int
    sweep_disagreements: int
    identity_failures: int
    replayed: int
    replay_failures: int

    @property
    def ok(self) -> bool:
        return (
            self.emission_sound
            and self.low_multiples_present
            and self.certificates_complete
            and self.sweep_disagreements == 0
            and self.identity_failures == 0
            and self.replay_failures == 0
        )


def _polys_of_height_upto(h: int):
    for n in range(poly_count(h)):
        yield poly_unrank(n)


def _monic_int_quadratic(p: Poly) -> Optional[tuple[int, int]]:
    """(b, c) with (p) = (t^2 + b*t + c) for integers b, c, if possible."""
    if len(p) != 3:
        return None
    b, c = p[1] / p[2], p[0] / p[2]
    if b.denominator != 1 or c.denominator != 1:
        return None
    return int(b), int(c)


def _int_mul(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _int_add(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    out = list(p) + [0] * max(len(q) - len(p), 0)
    for i, y in enumerate(q):
        out[i] += y
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _int_sub(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return _int_add(p, tuple(-y for y in q))


def _int_sweep(pb: int, pc: int, p: Poly, height: int, rng: random.Random,
               sample_every: int) -> tuple[int, int, int, int, list[Poly]]:
    """Exact agreement sweep for p ~ t^2 + pb*t + pc with integer pb, pc.

    Enumerates every polynomial of height <= height as an integer vector
    over a cleared denominator, decides membership by linear reduction,
    checks that against the division oracle, and for every non-member
    verifies the scaled Bezout identity conj*Q = (conj*U - B^2)*phat + N
    where Q = U*phat + (A + B t), conj = (A - B*pb) - B t and N is the
    nonzero norm A^2 - A*B*pb + B^2*pc.  Returns counts plus a seeded
    sample of non-members of height <= REPLAY_HEIGHT.
    """
    rats = [rational_at(i) for i in range(rationals_count(height))]
    nums = [r.numerator for r in rats]
    dens = [r.denominator for r in rats]
    k = len(rats)
    replay_rc = rationals_count(min(height, REPLAY_HEIGHT))
    phat_int = (pc, pb, 1)
    total = members = disagreements = bad_identity = 0
    sampled: list[Poly] = []
    lcm = math.lcm
    total += 1  # the zero polynomial
    if principal_membership(p, ZERO_POLY):
        members += 1
    else:
        disagreements += 1
    for deg in range(height + 1):
        for low in itertools.product(range(k), repeat=deg):
            den = 1
            for i in low:
                den = lcm(den, dens[i])
            for leadidx in range(1, k):
                idxs = low + (leadidx,)
                total += 1
                q = tuple(rats[i] for i in idxs)
                d = lcm(den, dens[leadidx])
                ints = [nums[i] * (d // dens[i]) for i in idxs]
                # synthetic division of the cleared vector by t^2+pb*t+pc
                u = [0] * max(len(ints) - 2, 0)
                carry = list(ints)
                for i in range(len(carry) - 1, 1, -1):
                    f = carry[i]
                    if f:
                        u[i - 2] = f
                        carry[i - 1] -= f * pb
                        carry[i - 2] -= f * pc
                a = carry[0]
                b = carry[1] if len(carry) > 1 else 0
                member = a == 0 and b == 0
                if member != principal_membership(p, q):
                    disagreements += 1
                    continue
                if member:
                    members += 1
                    continue
                conj = (a - b * pb, -b)
                norm = a * a - a * b * pb + b * b * pc
                lhs = _int_mul(conj, ints)
                inner = _int_sub(_int_mul(conj, u), (b * b,))
                rhs = _int_add(_int_mul(inner, phat_int), (norm,))
                if norm == 0 or lhs != rhs:
                    bad_identity += 1
                    continue
                if (
                    sample_every
                    and deg <= REPLAY_HEIGHT
                    and leadidx < replay_rc
                    and all(i < replay_rc for i in low)
                    and rng.randrange(sample_every) == 0
                ):
                    sampled.append(q)
    return total, members, disagreements, bad_identity, sampled


def _fraction_sweep(p: Poly, height: int, rng: random.Random,
                    sample_every: int) -> tuple[int, int, int, int, list[Poly]]:
    """Generic agreement sweep; exact but slower than the integer path."""
    total = members = disagreements = bad_identity = 0
    sampled: list[Poly] = []
    for q in _polys_of_height_upto(height):
        total += 1
        cof = bezout_cofactors(p, q)
        oracle = principal_membership(p, q)
        if (cof is None) != oracle:
            disagreements += 1
            continue
        if cof is None:
            members += 1
            continue
        r, s = cof
        if poly_add(poly_mul(r, q), poly_mul(s, p)) != ONE_POLY:
            bad_identity += 1
            continue
        if sample_every and rng.randrange(sample_every) == 0:
            if poly_height(q) <= REPLAY_HEIGHT:
                sampled.append(q)
    return total, members, disagreements, bad_identity, sampled


def _replay_unit(stream: RuleStream, p: Poly, q: Poly, seen: frozenset[int]) -> bool:
    """Replay the Bezout derivation of 1 through the published stream."""
    seq = unit_derivation(p, q)
    if seq is None:
        return False
    leaves = replay_rules(stream, seq, poly_rank(ONE_POLY))
    return leaves is not None and leaves <= seen | {poly_rank(q)}


@lru_cache(maxsize=4)
def maximal_ideal_demo(
    p: Poly,
    budget: int = IDEAL_DEMO_BUDGET,
    sweep_height: int = SWEEP_HEIGHT,
    samples: int = 6,
    seed: int = 0,
) -> IdealDemoReport:
    """Certify the complement of (p) against the witness 1 and cross-check.

    Saturates {p} under the ideal axioms, checks every emission is a
    multiple of p and every height <= 3 multiple appears, then builds
    replay-verified complement witnesses for every non-member of height
    <= 2.  A sweep over all polynomials of height <= sweep_height checks
    that membership and certificate existence agree with the division
    oracle exactly, verifying the Bezout identity of every certificate; a
    seeded sample of those certificates is replayed through the stream.
    """
    p = poly(p)
    check_irreducible(p)
    stream = ideal_rules()
    engine = SaturationEngine([poly_rank(p)], stream)
    engine.advance(budget)
    emitted = engine.enumeration().atoms()
    polys = [poly_unrank(a) for a in emitted]
    emission_sound = all(principal_membership(p, q) for q in polys)
    derived = engine.derived

    low_multiples_present = True
    for q in _polys_of_height_upto(min(sweep_height, 3)):
        if principal_membership(p, q) and poly_rank(q) not in derived:
            low_multiples_present = False
            break

    g = complement_op_maximal(presentation_operator(stream), poly_rank(ONE_POLY))
    certified: list[Poly] = []
    certificates_complete = True
    for q in _polys_of_height_upto(CANDIDATE_HEIGHT):
        if principal_membership(p, q):
            continue
        hint = lambda _stream, _target, _base, w=q: unit_derivation(p, w)
        witness = complement_witness(g, poly_rank(q), derived, hint=hint)
        if witness is None:
            certificates_complete = False
        else:
            certified.append(q)

    rng = random.Random(seed)
    est = poly_count(min(sweep_height, REPLAY_HEIGHT))
    every = max(est // max(samples, 1), 1) if samples else 0
    quad = _monic_int_quadratic(p)
    if quad is not None and sweep_height >= 1:
        stats = _int_sweep(quad[0], quad[1], p, sweep_height, rng, every)
    else:
        stats = _fraction_sweep(p, sweep_height, rng, every)
    total, members, disagreements, bad_identity, sampled = stats

    replayed = replay_failures = 0
    for q in sampled[: 2 * samples]:
        replayed += 1
        if not _replay_unit(stream, p, q, derived):
            replay_failures += 1

    return IdealDemoReport(
        generator=p,
        budget=budget,
        emitted=len(emitted),
        emission_sound=emission_sound,
        low_multiples_present=low_multiples_present,
        certified=tuple(certified),
        certificates_complete=certificates_complete,
        sweep_height=sweep_height,
        sweep_total=total,
        sweep_members=members,
        sweep_disagreements=disagreements,
        identity_failures=bad_identity,
        replayed=replayed,
        replay_failures=replay_failures,
    )


# ---------------------------------------------------------------------------
# instance files


def parse_ideal_file(text: str) -> tuple[Poly, ...]:
    """Generators from an ideal instance file.

    Line 1: ``universe ideal``; then one ``generator <literal>`` line per
    generator.  Comments start with ``#``; blank lines are skipped.
    """
    gens: list[Poly] = []
    header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            if line != "universe ideal":
                raise ParseError("expected 'universe ideal'", lineno)
            header = lineno
            continue
        if not line.startswith("generator "):
            raise ParseError(f"expected 'generator <poly>', got {line!r}", lineno)
        try:
            gens.append(poly_from_str(line[len("generator "):].strip()))
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from exc
    if header is None:
        raise ParseError("empty ideal file")
    return tuple(gens)


def format_ideal_file(gens: Sequence[Poly]) -> str:
    lines = ["universe ideal"]
    lines.extend(f"generator {poly_to_str(g)}" for g in gens)
    return "\n".join(lines) + "\n"
