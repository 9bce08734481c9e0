"""Bijective and injective codings of pairs, lists, and finite sets of naturals.

All indices in this package bottom out in the quadratic pairing bijection,
so these functions are kept free of any interpreter concerns and work on
arbitrarily large ints.
"""

from __future__ import annotations

import math

__all__ = [
    "MalformedCodeError",
    "pair_encode",
    "pair_decode",
    "list_encode",
    "list_decode",
    "finset_encode",
    "finset_decode",
    "block",
    "block_of",
]


class MalformedCodeError(ValueError):
    """Raised when a number is not in the image of an injective coding."""


def pair_encode(x: int, y: int) -> int:
    """Diagonal pairing (x, y) -> (x+y)(x+y+1)/2 + y. Bijective on N x N."""
    if x < 0 or y < 0:
        raise ValueError("pair_encode needs naturals")
    s = x + y
    return s * (s + 1) // 2 + y


def pair_decode(n: int) -> tuple[int, int]:
    if n < 0:
        raise ValueError("pair_decode needs a natural")
    # Largest s with s(s+1)/2 <= n; isqrt keeps this exact for big ints.
    s = (math.isqrt(8 * n + 1) - 1) // 2
    t = s * (s + 1) // 2
    y = n - t
    x = s - y
    return x, y


def list_encode(xs: list[int] | tuple[int, ...]) -> int:
    """Length-prefixed right-nested pairing; empty list encodes to 0.

    Injective but not surjective: the length prefix must match the spine.
    """
    tail = 0
    for x in reversed(xs):
        tail = pair_encode(x, tail)
    return pair_encode(len(xs), tail)


def list_decode(n: int) -> list[int]:
    length, rest = pair_decode(n)
    out = []
    for _ in range(length):
        x, rest = pair_decode(rest)
        out.append(x)
    if rest != 0:
        raise MalformedCodeError(f"{n} is not a list code (trailing {rest})")
    return out


def finset_encode(s: frozenset[int] | set[int]) -> int:
    """Canonical index of a finite set: sum of 2**i over members."""
    n = 0
    for i in s:
        if i < 0:
            raise ValueError("finset_encode needs naturals")
        n |= 1 << i
    return n


def finset_decode(n: int) -> frozenset[int]:
    if n < 0:
        raise ValueError("finset_decode needs a natural")
    out = set()
    i = 0
    while n:
        if n & 1:
            out.add(i)
        n >>= 1
        i += 1
    return frozenset(out)


def block(e: int) -> range:
    """The e-th interval of the partition of N into blocks of size e + 2.

    Block e starts at e(e+3)/2, so block 0 is {0, 1}, block 1 is {2, 3, 4},
    and consecutive blocks tile N with no gaps.
    """
    if e < 0:
        raise ValueError("block index must be a natural")
    start = e * (e + 3) // 2
    return range(start, start + e + 2)


def block_of(x: int) -> int:
    """Index of the block containing x (inverse of the partition)."""
    if x < 0:
        raise ValueError("block_of needs a natural")
    # Solve e(e+3)/2 <= x < (e+1)(e+4)/2.
    e = (math.isqrt(8 * x + 9) - 3) // 2
    while e * (e + 3) // 2 > x:
        e -= 1
    while (e + 1) * (e + 4) // 2 <= x:
        e += 1
    return e
