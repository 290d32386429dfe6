"""Constant-time word primitives that everything else builds on.

All values are unsigned integers confined to a fixed word width
(``WORD_BITS``, 64 by default).  Functions that depend on the width take
it as a keyword so narrow 8-bit cases remain expressible in tests.
Arguments outside the declared domain raise ``ValueError``.
"""

from __future__ import annotations

WORD_BITS = 64

_DEBRUIJN64 = 0x03F79D71B4CB0A89
_MASK64 = (1 << 64) - 1


def _build_msb_table() -> tuple[int, ...]:
    # One slot per smeared value 2**(i+1)-1; the constant must map them
    # to 64 distinct slots or the branchless scan is unusable.
    table = [-1] * 64
    for i in range(64):
        smeared = (1 << (i + 1)) - 1
        slot = ((smeared * _DEBRUIJN64) & _MASK64) >> 58
        if table[slot] != -1:
            raise AssertionError("de Bruijn multiplier is not injective")
        table[slot] = i
    return tuple(table)


_MSB_TABLE = _build_msb_table()


def word_mask(w: int = WORD_BITS) -> int:
    """All-ones word of width ``w``."""
    return (1 << w) - 1


def msb_index(x: int) -> int:
    """Index of the highest set bit of ``x``: ``2**result <= x < 2**(result+1)``.

    Branchless bit-smear followed by a de Bruijn multiply and table
    lookup, so the operation count is a constant independent of ``x``.
    """
    if x <= 0:
        raise ValueError("msb of zero")
    if x > _MASK64:
        raise ValueError("value exceeds the word width")
    x |= x >> 1
    x |= x >> 2
    x |= x >> 4
    x |= x >> 8
    x |= x >> 16
    x |= x >> 32
    return _MSB_TABLE[((x * _DEBRUIJN64) & _MASK64) >> 58]


def divergence_bit(a: int, b: int) -> int:
    """Most significant bit position at which ``a`` and ``b`` differ.

    Above the result the two words agree; at it they disagree, which is
    all a comparison needs to look at.
    """
    if a == b:
        raise ValueError("no divergence bit")
    return msb_index(a ^ b)


def suffix_mask(bit: int, w: int = WORD_BITS) -> int:
    """Ones at positions ``bit``..0 and zeros above: ``2**(bit+1) - 1``.

    ORing a key with it steers a trie descent toward the largest leaf
    below the divergence point.
    """
    if not 0 <= bit < w:
        raise ValueError("bit index outside the word")
    return (1 << (bit + 1)) - 1


def prefix_mask(bit: int, w: int = WORD_BITS) -> int:
    """Ones strictly above position ``bit``: the complement of ``suffix_mask``.

    ANDing a key with it steers a trie descent toward the smallest leaf
    below the divergence point.
    """
    if not 0 <= bit < w:
        raise ValueError("bit index outside the word")
    return ((1 << w) - 1) ^ ((1 << (bit + 1)) - 1)


def replication_constant(block_width: int, count: int) -> int:
    """Sum of ``2**(i*block_width)`` for i in [0, count): the multiplier that
    stamps one field into every block of a packed word."""
    if block_width < 1 or count < 1:
        raise ValueError("block width and count must be positive")
    value = 0
    for i in range(count):
        value |= 1 << (i * block_width)
    return value


def replicate_field(field: int, block_width: int, count: int, w: int = WORD_BITS) -> int:
    """``count`` copies of ``field``, one per ``block_width``-bit block.

    Each block is a zero flag bit followed by ``field`` left-padded to
    ``block_width - 1`` bits; the copies are produced by a single
    multiplication with a precomputed constant.
    """
    if count * block_width > w:
        raise ValueError("packing overflow: count * block_width exceeds the word")
    if not 0 <= field < (1 << (block_width - 1)):
        raise ValueError("field does not fit the block payload")
    return field * replication_constant(block_width, count)
