"""Point-set semantics on the Boolean cube, using Python ints as bitsets.

A point of GF(2)^n is an index whose bit ``n-1-i`` holds the value of
variable ``i``.  With the synthesis variable layout (intermediates, output,
inputs) the inputs occupy the low ``l`` bits, the output bit ``l``, and the
intermediates the bits above it.  A set of points is an int with bit ``p``
set when point ``p`` belongs to the set.
"""

from __future__ import annotations

import functools

from .errors import EnumerationCapExceeded

MAX_CUBE_VARIABLES = 28


def _check(n: int):
    if n > MAX_CUBE_VARIABLES:
        raise EnumerationCapExceeded(f"{n} variables exceeds the cube cap of {MAX_CUBE_VARIABLES}")


@functools.lru_cache(maxsize=64)
def full_set(n: int) -> int:
    _check(n)
    return (1 << (1 << n)) - 1


@functools.lru_cache(maxsize=1024)
def coordinate_set(n: int, bit: int) -> int:
    """Points whose index has ``bit`` set."""
    _check(n)
    width = 1 << bit
    chunk = ((1 << width) - 1) << width
    period = width << 1
    mask = chunk
    span = period
    total = 1 << n
    while span < total:
        mask |= mask << span
        span <<= 1
    return mask


def variable_sets(n: int) -> list[int]:
    return [coordinate_set(n, n - 1 - i) for i in range(n)]


def zero_set(poly, n: int | None = None) -> int:
    """Points of the cube where ``poly`` vanishes."""
    ring = poly.ring
    n = ring.n if n is None else n
    full = full_set(n)
    sets = variable_sets(n)
    value = 0
    for m in poly.terms:
        term = full
        for i, e in enumerate(ring.decode(m)):
            if e:
                term &= sets[i]
        value ^= term
    return full & ~value


def variety(equations, n: int) -> int:
    """Common zeros of ``equations`` within the cube."""
    points = full_set(n)
    for f in equations:
        points &= zero_set(f, n)
    return points


def chunks(points: int, n: int, low_bits: int):
    """Split a point set into ``2^(n-low_bits)`` slices over the low coordinates."""
    width = 1 << low_bits
    mask = (1 << width) - 1
    for hi in range(1 << (n - low_bits)):
        yield hi, (points >> (hi * width)) & mask


def index_to_bits(index: int, count: int) -> tuple[int, ...]:
    return tuple((index >> (count - 1 - j)) & 1 for j in range(count))


def bits_to_index(bits) -> int:
    index = 0
    for b in bits:
        index = (index << 1) | (int(b) & 1)
    return index


def iter_points(points: int):
    """Indices of set bits, ascending."""
    while points:
        low = points & -points
        yield low.bit_length() - 1
        points ^= low


def first_point(points: int) -> int | None:
    if not points:
        return None
    return (points & -points).bit_length() - 1
