"""Condensed binary trie: the reference semantics fusion nodes must match.

Internal nodes carry only the branch bit separating their subtrees;
leaves carry the keys in ascending left-to-right order plus their
1-indexed rank.  Rank queries run the two-search scheme: a plain
descent, then a second descent with the query ORed or ANDed against a
suffix mask depending on the query's value at the divergence bit.
"""

from __future__ import annotations

from bisect import bisect_left, insort

from .wordops import WORD_BITS, divergence_bit, prefix_mask, suffix_mask


class Leaf:
    __slots__ = ("key", "rank")

    def __init__(self, key: int, rank: int):
        self.key = key
        self.rank = rank

    def shape(self):
        return ("leaf", self.key, self.rank)


class Internal:
    __slots__ = ("bit", "left", "right")

    def __init__(self, bit: int, left, right):
        self.bit = bit
        self.left = left
        self.right = right

    def shape(self):
        return ("branch", self.bit, self.left.shape(), self.right.shape())


class CondensedTrie:
    """Binary trie over distinct keys with unary paths compressed away."""

    __slots__ = ("root", "keys", "interesting", "w")

    def __init__(self, root, keys: list[int], interesting: list[int], w: int):
        self.root = root
        self.keys = keys
        self.interesting = interesting
        self.w = w

    @classmethod
    def build(cls, keys, w: int = WORD_BITS) -> "CondensedTrie":
        keys = list(keys)
        if not keys:
            raise ValueError("empty key set")
        for a, b in zip(keys, keys[1:]):
            if a >= b:
                raise ValueError("keys must be strictly ascending and distinct")
        if keys[0] < 0 or keys[-1] >> w:
            raise ValueError("key outside the word range")
        root = _build_range(keys, 0, len(keys))
        interesting = sorted({divergence_bit(a, b) for a, b in zip(keys, keys[1:])})
        return cls(root, keys, interesting, w)

    def search_leaf(self, x: int) -> Leaf:
        """Leaf reached by following x's bits at the branch positions."""
        node = self.root
        while isinstance(node, Internal):
            node = node.right if (x >> node.bit) & 1 else node.left
        return node

    def trie_search(self, x: int) -> int:
        """Key of the leaf the plain descent reaches.

        The result agrees with ``x`` on every branch bit along its path,
        but need not be the predecessor or successor of ``x``.
        """
        return self.search_leaf(x).key

    def rank(self, x: int) -> int:
        """Count of stored keys <= x.

        If the first descent misses, the divergence bit decides the
        second search key: OR the suffix mask when x holds a 1 there
        (lands on the predecessor), AND the prefix mask when it holds a
        0 (lands on the successor, hence the -1).
        """
        leaf = self.search_leaf(x)
        if leaf.key == x:
            return leaf.rank
        bit = divergence_bit(x, leaf.key)
        if (x >> bit) & 1:
            return self.search_leaf(x | suffix_mask(bit, self.w)).rank
        return self.search_leaf(x & prefix_mask(bit, self.w)).rank - 1

    def insert(self, x: int) -> "CondensedTrie":
        """New trie over keys + {x}; the receiver is left untouched.

        Exactly one internal node is added, branching at the divergence
        bit between x and the leaf the plain descent reaches; leaf ranks
        are renumbered in one O(n) pass over the copy.
        """
        if x < 0 or x >> self.w:
            raise ValueError("key outside the word range")
        nearest = self.search_leaf(x)
        if nearest.key == x:
            raise ValueError("duplicate key")
        bit = divergence_bit(x, nearest.key)
        root = _graft(self.root, x, bit)
        keys = list(self.keys)
        insort(keys, x)
        if bit in self.interesting:
            interesting = list(self.interesting)
        else:
            interesting = list(self.interesting)
            insort(interesting, bit)
        trie = CondensedTrie(root, keys, interesting, self.w)
        _renumber(trie.root)
        return trie

    def leaves(self) -> list[Leaf]:
        """Leaves in left-to-right order."""
        out: list[Leaf] = []
        _collect(self.root, out)
        return out

    def internal_count(self) -> int:
        return _internals(self.root)

    def shape(self):
        """Nested-tuple rendering of the structure, for equality checks."""
        return self.root.shape()


def _build_range(keys: list[int], lo: int, hi: int):
    if hi - lo == 1:
        return Leaf(keys[lo], lo + 1)
    bit = divergence_bit(keys[lo], keys[hi - 1])
    # all keys in the range agree above `bit`, so the 1-side is a suffix
    split = bisect_left(keys, 1, lo, hi, key=lambda k: (k >> bit) & 1)
    return Internal(bit, _build_range(keys, lo, split), _build_range(keys, split, hi))


def _graft(node, x: int, bit: int):
    """Copy of the subtree with a new branch at ``bit`` spliced onto x's path."""
    if isinstance(node, Internal) and node.bit > bit:
        if (x >> node.bit) & 1:
            return Internal(node.bit, _clone(node.left), _graft(node.right, x, bit))
        return Internal(node.bit, _graft(node.left, x, bit), _clone(node.right))
    leaf = Leaf(x, 0)
    copied = _clone(node)
    if (x >> bit) & 1:
        return Internal(bit, copied, leaf)
    return Internal(bit, leaf, copied)


def _clone(node):
    if isinstance(node, Leaf):
        return Leaf(node.key, node.rank)
    return Internal(node.bit, _clone(node.left), _clone(node.right))


def _renumber(root) -> None:
    rank = 0
    stack = [root]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            rank += 1
            node.rank = rank
        else:
            stack.append(node.right)
            stack.append(node.left)


def _collect(node, out: list[Leaf]) -> None:
    if isinstance(node, Leaf):
        out.append(node)
    else:
        _collect(node.left, out)
        _collect(node.right, out)


def _internals(node) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + _internals(node.left) + _internals(node.right)
