"""Fusion node: sketch compression and packed one-word multi-comparison.

A node stores up to ``capacity`` ascending keys, with ``capacity**2 <= w``
so that one block per key fits in a single word.  Each key is reduced to
a sketch (its bits at the set's distinguishing positions), the sketches
are packed behind flag bits into one word, and a query sketch is ranked
against all of them by a single subtraction: every block's flag records
one comparison outcome simultaneously.

Ranking a full key takes two such packed comparisons.  The first brackets
the query's sketch and picks the stored neighbor sharing the longest
prefix with the query; the divergence bit against that neighbor then
forms a masked second query whose packed comparison yields the exact
rank, mirroring the condensed trie's two-search scheme.

The default sketch is an exact bit gather (a short loop whose literal
cost is reported through the counters).  A node can also carry a
multiplication-based sketch: one AND and one multiply scatter the
distinguishing bits to fixed target positions with padding zeros in
between, order-preserving, so ranks agree with the exact mode.  The
multiplier is searched at build time and the node silently stays
exact-only when no in-word multiplier exists.
"""

from __future__ import annotations

import logging

from .counters import Counters
from .wordops import (
    WORD_BITS,
    divergence_bit,
    msb_index,
    prefix_mask,
    replication_constant,
    suffix_mask,
)

logger = logging.getLogger(__name__)


class NodeFull(Exception):
    """A rebuild would exceed the node's capacity: the tree must split."""


class _MulSketch:
    """Precomputed multiplication-based sketch machinery for one node."""

    __slots__ = ("bits_mask", "multiplier", "window_mask", "shift", "block",
                 "packed", "flag_mask", "repl", "sketches")

    def __init__(self, bits_mask, multiplier, window_mask, shift, block):
        self.bits_mask = bits_mask
        self.multiplier = multiplier
        self.window_mask = window_mask
        self.shift = shift
        self.block = block
        self.packed = 0
        self.flag_mask = 0
        self.repl = 0
        self.sketches = ()

    def sketch(self, x: int) -> int:
        return (((x & self.bits_mask) * self.multiplier) & self.window_mask) >> self.shift


class FusionNode:
    """Immutable sorted key set answering rank queries in O(1) word ops."""

    __slots__ = ("keys", "capacity", "w", "block", "interesting", "sketches",
                 "packed", "flag_mask", "_repl", "_gather", "mul")

    def __init__(self, keys, capacity, w, block, interesting, sketches,
                 packed, flag_mask, repl, gather, mul):
        self.keys = keys
        self.capacity = capacity
        self.w = w
        self.block = block
        self.interesting = interesting
        self.sketches = sketches
        self.packed = packed
        self.flag_mask = flag_mask
        self._repl = repl
        self._gather = gather
        self.mul = mul

    @classmethod
    def build(cls, keys, capacity: int, w: int = WORD_BITS,
              multiplication: bool = False) -> "FusionNode":
        keys = tuple(keys)
        if not 1 <= len(keys) <= capacity:
            raise ValueError("a node holds between 1 and capacity keys")
        if capacity * capacity > w:
            raise ValueError("capacity**2 exceeds the word width")
        for a, b in zip(keys, keys[1:]):
            if a >= b:
                raise ValueError("keys must be strictly ascending and distinct")
        if keys[0] < 0 or keys[-1] >> w:
            raise ValueError("key outside the word range")

        t = len(keys)
        block = capacity  # fixed block width: flag bit + capacity-1 payload bits
        interesting = tuple(sorted({divergence_bit(a, b) for a, b in zip(keys, keys[1:])}))
        # bit j of a sketch is the key's bit at interesting[j]
        gather = tuple((bit - j, 1 << j) for j, bit in enumerate(interesting))

        flag = 1 << (block - 1)
        sketches = []
        packed = 0
        flag_mask = 0
        prev = -1
        for key in keys:
            sk = 0
            for shift, placebit in gather:
                sk |= (key >> shift) & placebit
            if sk <= prev:
                raise AssertionError("sketches lost the key order")
            prev = sk
            sketches.append(sk)
            packed = (packed << block) | flag | sk
            flag_mask = (flag_mask << block) | flag
        repl = replication_constant(block, t)

        mul = None
        if multiplication:
            mul = _search_multiplier(interesting, t, w)
            if mul is None:
                logger.debug(
                    "no in-word multiplier for %d distinguishing bits over %d keys; "
                    "node stays in exact-gather mode", len(interesting), t)
            else:
                mflag = 1 << (mul.block - 1)
                mpacked = 0
                mflag_mask = 0
                msketches = []
                for key in keys:
                    sk = mul.sketch(key)
                    msketches.append(sk)
                    mpacked = (mpacked << mul.block) | mflag | sk
                    mflag_mask = (mflag_mask << mul.block) | mflag
                mul.packed = mpacked
                mul.flag_mask = mflag_mask
                mul.repl = replication_constant(mul.block, t)
                mul.sketches = tuple(msketches)

        return cls(keys, capacity, w, block, interesting, tuple(sketches),
                   packed, flag_mask, repl, gather, mul)

    def sketch_of(self, x: int, counters: Counters | None = None) -> int:
        """Bits of ``x`` at the distinguishing positions, packed contiguously."""
        sk = 0
        for shift, placebit in self._gather:
            sk |= (x >> shift) & placebit
        if counters is not None:
            counters.word_ops += 3 * len(self._gather)
        return sk

    def sketch_via_multiplication(self, x: int) -> int:
        """Approximate sketch: distinguishing bits in order, zero-padded.

        Only available when the node was built in multiplication mode and
        the multiplier search succeeded.
        """
        if self.mul is None:
            raise ValueError("node carries no multiplication sketch")
        return self.mul.sketch(x)

    def packed_compare(self, sk: int, counters: Counters | None = None) -> int:
        """Number of stored sketches strictly below ``sk``.

        One subtraction compares ``sk`` against every block at once: a
        block's flag survives exactly when its sketch is >= ``sk``, and
        because sketches are packed in ascending order the cleared flags
        form a prefix whose length is the answer.
        """
        if sk >> (self.block - 1):
            raise ValueError("sketch does not fit the block payload")
        return self._compare(sk, self.packed, self._repl, self.flag_mask,
                             self.block, counters)

    def _compare(self, sk, packed, repl, flag_mask, block, counters) -> int:
        diff = (packed - sk * repl) & flag_mask
        if counters is not None:
            counters.word_ops += 6
        if diff == 0:
            return len(self.keys)
        return len(self.keys) - 1 - msb_index(diff) // block

    def _phase1(self, x: int, counters, use_mul: bool) -> tuple[int, int]:
        """Packed-compare ``x`` and return (p, neighbor).

        ``p`` counts stored sketches below x's sketch; ``neighbor`` is the
        stored key sharing the longest common prefix with ``x`` (it equals
        ``x`` when ``x`` is stored).
        """
        if use_mul:
            eng = self.mul
            sk = eng.sketch(x)
            if counters is not None:
                counters.word_ops += 4
            p = self._compare(sk, eng.packed, eng.repl, eng.flag_mask,
                              eng.block, counters)
        else:
            sk = self.sketch_of(x, counters)
            p = self.packed_compare(sk, counters)

        keys = self.keys
        t = len(keys)
        if p == t:
            if counters is not None:
                counters.key_comparisons += 1
            return p, keys[t - 1]
        hi = keys[p]
        if counters is not None:
            counters.key_comparisons += 1
        if hi == x or p == 0:
            return p, hi
        lo = keys[p - 1]
        if counters is not None:
            counters.word_ops += 4
            counters.key_comparisons += 1
        # equal divergence bits put both neighbors in the same subtree,
        # so either serves; prefer the successor side then
        if divergence_bit(x, lo) < divergence_bit(x, hi):
            return p, lo
        return p, hi

    def nearest_key(self, x: int, use_multiplication: bool = False) -> int:
        """Stored key with the longest common prefix with ``x``.

        This is the leaf a condensed-trie descent over the same key set
        would reach.
        """
        if use_multiplication and self.mul is None:
            raise ValueError("node carries no multiplication sketch")
        return self._phase1(x, None, use_multiplication)[1]

    def node_rank(self, x: int, counters: Counters | None = None,
                  use_multiplication: bool = False) -> int:
        """Count of stored keys <= x, in a constant number of word ops."""
        if use_multiplication and self.mul is None:
            raise ValueError("node carries no multiplication sketch")
        p, near = self._phase1(x, counters, use_multiplication)
        if near == x:
            return p + 1

        t = len(self.keys)
        bit = divergence_bit(x, near)
        if counters is not None:
            counters.word_ops += 2
        if (x >> bit) & 1:
            masked = x | suffix_mask(bit, self.w)
            toward_max = True
        else:
            masked = x & prefix_mask(bit, self.w)
            toward_max = False
        if counters is not None:
            counters.word_ops += 2

        if use_multiplication:
            eng = self.mul
            sk2 = eng.sketch(masked)
            if counters is not None:
                counters.word_ops += 4
            q = self._compare(sk2, eng.packed, eng.repl, eng.flag_mask,
                              eng.block, counters)
            stored = eng.sketches
        else:
            sk2 = self.sketch_of(masked, counters)
            q = self.packed_compare(sk2, counters)
            stored = self.sketches

        if toward_max:
            # count the predecessor inclusively: its sketch may coincide
            # with the masked query's
            if counters is not None:
                counters.word_ops += 1
            if q < t and stored[q] == sk2:
                return q + 1
            return q
        # the masked query lands on the successor; everything below it
        # already sits strictly under the query sketch
        return q

    def rebuild_with(self, x: int) -> "FusionNode":
        """New node over keys + {x}; raises NodeFull at capacity."""
        if len(self.keys) >= self.capacity:
            raise NodeFull("split required")
        if x in self.keys:
            raise ValueError("duplicate key")
        return FusionNode.build(tuple(sorted(self.keys + (x,))), self.capacity,
                                self.w, multiplication=self.mul is not None)


def _search_multiplier(interesting, t: int, w: int) -> _MulSketch | None:
    """Greedy shift assignment for the multiplication-based sketch.

    Each distinguishing bit i_j gets a shift m_j; the multiplier is the
    sum of 2**m_j.  Multiplying scatters bit i_j to every i_j + m_l, so
    all such cross positions must stay distinct (and in-word) to avoid
    carries, while the diagonal targets i_j + m_j must be ascending so
    the scatter preserves order.  Returns None when no assignment fits
    the per-key block budget.
    """
    k = len(interesting)
    if k == 0:
        # degenerate single-key node: every sketch is 0
        return _MulSketch(0, 1, 0, 0, max(1, w // t))
    sums: set[int] = set()
    shifts: list[int] = []
    diag_prev = -1
    for bit in interesting:
        chosen = None
        for m in range(max(0, diag_prev + 1 - bit), w - bit):
            cross = [other + m for other in interesting]
            if any(s >= w for s in cross):
                continue
            if any(s in sums for s in cross):
                continue
            chosen = m
            break
        if chosen is None:
            return None
        shifts.append(chosen)
        sums.update(other + chosen for other in interesting)
        diag_prev = bit + chosen

    diag = [bit + m for bit, m in zip(interesting, shifts)]
    width = diag[-1] - diag[0] + 1
    block = width + 1
    if t * block > w:
        return None
    bits_mask = 0
    for bit in interesting:
        bits_mask |= 1 << bit
    multiplier = 0
    for m in shifts:
        multiplier |= 1 << m
    window_mask = 0
    for q in diag:
        window_mask |= 1 << q
    return _MulSketch(bits_mask, multiplier, window_mask, diag[0], block)
