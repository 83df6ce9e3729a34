"""Bit-exact codes for pairs, fixed-arity tuples and finite sequences.

Every enumeration order in this package is derived from the Cantor pairing
function, so two runs (or two implementations) visit candidates in exactly
the same order.  Codes are plain Python ints and may be very large; all
arithmetic here is exact.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterable, Sequence


def pair(a: int, b: int) -> int:
    """Cantor pairing (a + b)(a + b + 1)/2 + b."""
    if a < 0 or b < 0:
        raise ValueError("pair() takes naturals")
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(c: int) -> tuple[int, int]:
    """Inverse of :func:`pair`."""
    if c < 0:
        raise ValueError("unpair() takes a natural")
    # Largest s with s(s+1)/2 <= c.
    s = (isqrt(8 * c + 1) - 1) // 2
    b = c - s * (s + 1) // 2
    return s - b, b


def encode_tuple(values: Sequence[int]) -> int:
    """Right-nested pairing of a tuple of known arity (no length prefix).

    Arity 0 encodes to 0, arity 1 to the value itself.  Bijective between
    naturals and k-tuples for every fixed k >= 1.
    """
    if not values:
        return 0
    code = values[-1]
    for v in reversed(values[:-1]):
        code = pair(v, code)
    return code


def decode_tuple(arity: int, code: int) -> tuple[int, ...]:
    """Inverse of :func:`encode_tuple` at a known arity."""
    if arity < 0:
        raise ValueError("arity must be a natural")
    if arity == 0:
        return ()
    out = []
    for _ in range(arity - 1):
        v, code = unpair(code)
        out.append(v)
    out.append(code)
    return tuple(out)


def encode_sequence(values: Iterable[int]) -> int:
    """Length-prefixed tuple code: pair(len, right-nested body).

    The empty sequence encodes to 0 (pair(0, 0) = 0); it is reserved by the
    derivation codec for the reflexive axiom.
    """
    vals = tuple(values)
    return pair(len(vals), encode_tuple(vals))


def decode_sequence(code: int) -> tuple[int, ...]:
    """Inverse of :func:`encode_sequence`, total on naturals."""
    length, body = unpair(code)
    return decode_tuple(length, body)
