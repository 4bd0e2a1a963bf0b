"""Bitmask monomials in odd generators.

Bit ``i`` of a mask stands for the ``i``-th generator in declaration order, so
a mask is a monomial written in ascending order. All generators are odd.
"""
from collections.abc import Iterator


def popcount(mask: int) -> int:
    count = bin(mask).count("1")

    return count


def members(mask: int) -> list[int]:
    result = []
    position = 0

    while mask:
        if mask & 1:
            result.append(position)

        mask >>= 1
        position += 1

    return result


def iter_masks(size: int) -> Iterator[int]:
    return iter(range(1 << size))


def full_mask(size: int) -> int:
    mask = (1 << size) - 1

    return mask


def wedge_sign(left: int, right: int) -> int:
    """Sign of psi_left ^ psi_right relative to psi_(left|right), 0 on overlap."""
    if left & right:
        return 0

    inversions = 0

    for position in members(right):
        inversions += popcount(left >> (position + 1))

    sign = -1 if inversions % 2 else 1

    return sign


def position_sign(mask: int, position: int) -> int:
    """(-1) to the number of generators of mask sitting before position."""
    below = mask & ((1 << position) - 1)
    sign = -1 if popcount(below) % 2 else 1

    return sign


def remap(mask: int, positions: list[int]) -> int:
    """Moves bit k of mask to bit positions[k]; order of bits is preserved."""
    result = 0

    for position in members(mask):
        result |= 1 << positions[position]

    return result


def sort_sign(indices: list[int]) -> tuple[int, int]:
    """Canonical mask and sign of the product of generators in the given order."""
    if len(set(indices)) != len(indices):
        return 0, 0

    inversions = sum(
        1
        for first in range(len(indices))
        for second in range(first + 1, len(indices))
        if indices[first] > indices[second]
    )

    mask = 0

    for index in indices:
        mask |= 1 << index

    sign = -1 if inversions % 2 else 1

    return mask, sign
