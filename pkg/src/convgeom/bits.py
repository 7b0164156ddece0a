"""Subsets of ``range(n)`` as Python ints."""

from __future__ import annotations

from typing import Iterable, Iterator


def mask(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


def as_mask(subset: int | Iterable[int]) -> int:
    """Accept either a ready-made bitmask or an iterable of indices."""
    if isinstance(subset, int):
        return subset
    return mask(subset)


def iter_bits(m: int) -> Iterator[int]:
    """Yield the set indices of ``m`` in increasing order."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def members(m: int) -> list[int]:
    return list(iter_bits(m))


def popcount(m: int) -> int:
    return m.bit_count()


def lowest(m: int) -> int:
    return (m & -m).bit_length() - 1
