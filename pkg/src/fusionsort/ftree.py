"""Fusion tree: a B-tree whose nodes answer rank queries in O(1) word ops.

Same shape discipline as the classic B-tree baseline (a full node
splits around its median when a key arrives, cascading upward, with all
leaves at equal depth),
but the in-node search is a fusion-node packed comparison instead of a
linear scan.  Inserts rebuild the sketch machinery of the touched nodes;
no sublinear update bound is claimed, only search/rank operation counts.

Duplicates are stored once with a multiplicity, and nodes cache
cumulative weighted counts so rank is one root-to-leaf descent.
"""

from __future__ import annotations

from bisect import bisect_left
from itertools import repeat
from math import log2

from .btree import effective_capacity
from .counters import Counters
from .fnode import FusionNode
from .wordops import WORD_BITS


def degree_for(n: int, policy="theoretical", w: int = WORD_BITS) -> int:
    """Tree degree for ``n`` keys under the chosen policy.

    ``"theoretical"`` follows the fifth-root-of-lg-n growth rule (which
    stays at 2 for every practical ``n``); an integer policy is a fixed
    degree.  Both are clamped to the word-packing bound isqrt(w).
    """
    bound = 1
    while (bound + 1) * (bound + 1) <= w:
        bound += 1
    if policy == "theoretical":
        if n < 2:
            return 2
        lgn = log2(n)
        b = int(lgn ** 0.2)
        while (b + 1) ** 5 <= lgn:
            b += 1
        return max(2, min(b, bound))
    if not isinstance(policy, int):
        raise ValueError(f"unknown degree policy: {policy!r}")
    return max(2, min(policy, bound))


def signed_to_key(x: int, w: int = WORD_BITS) -> int:
    """Order-preserving bijection from signed w-bit ints to keys.

    Flips the sign bit: the most negative value maps to 0, zero maps to
    2**(w-1), and comparisons are preserved end to end.
    """
    half = 1 << (w - 1)
    if not -half <= x < half:
        raise ValueError("value outside the signed word range")
    return x + half


def key_to_signed(key: int, w: int = WORD_BITS) -> int:
    """Inverse of ``signed_to_key``."""
    if key < 0 or key >> w:
        raise ValueError("key outside the word range")
    return key - (1 << (w - 1))


class _Node:
    __slots__ = ("fnode", "children", "cum", "weight")

    def __init__(self, fnode: FusionNode, children: list["_Node"] | None):
        self.fnode = fnode
        self.children = children  # None for leaves
        self.cum: list[int] = []
        self.weight = 0


class FusionTree:
    """Sorted multiset of unsigned w-bit integers with fusion-node search."""

    def __init__(self, capacity: int = 8, w: int = WORD_BITS):
        self.capacity = effective_capacity(capacity, w)
        self.w = w
        self.root: _Node | None = None
        self.size = 0
        self.mult: dict[int, int] = {}
        self.counters = Counters()
        self.splits = 0
        self.height = 0  # edge count from root to leaves

    # -- maintenance ----------------------------------------------------

    def _build_fnode(self, keys) -> FusionNode:
        return FusionNode.build(keys, self.capacity, self.w)

    def _refresh(self, node: _Node) -> None:
        mult = self.mult
        keys = node.fnode.keys
        cum = [0] * (len(keys) + 1)
        acc = 0
        if node.children is None:
            for i, k in enumerate(keys):
                acc += mult.get(k, 1)
                cum[i + 1] = acc
            node.weight = acc
        else:
            children = node.children
            for i, k in enumerate(keys):
                acc += children[i].weight + mult.get(k, 1)
                cum[i + 1] = acc
            node.weight = acc + children[-1].weight
        node.cum = cum

    def _bump(self, node: _Node, idx: int) -> None:
        node.weight += 1
        cum = node.cum
        for j in range(idx + 1, len(cum)):
            cum[j] += 1

    # -- operations -----------------------------------------------------

    def insert(self, x: int) -> None:
        """Add one occurrence of x.

        The descent never splits; when the target node is full it splits
        around its own median and the median cascades upward, so only
        nodes that actually receive a key are ever divided.  Every node
        that gains a key gets its sketch structure rebuilt.
        """
        if x < 0 or x >> self.w:
            raise ValueError("key outside the word range")
        self.size += 1
        if self.root is None:
            self.root = _Node(self._build_fnode((x,)), None)
            self._refresh(self.root)
            return

        c = self.counters
        node = self.root
        path: list[tuple[_Node, int]] = []
        while True:
            c.node_visits += 1
            keys = node.fnode.keys
            p = node.fnode.node_rank(x, c)
            if p > 0 and keys[p - 1] == x:
                c.key_comparisons += 1
                self.mult[x] = self.mult.get(x, 1) + 1
                self._bump(node, p - 1)
                for anc, idx in path:
                    self._bump(anc, idx)
                return
            c.key_comparisons += 1
            if node.children is None:
                break
            path.append((node, p))
            node = node.children[p]

        key = x
        kids: tuple[_Node, _Node] | None = None
        while True:
            keys = node.fnode.keys
            if len(keys) < self.capacity - 1:
                i = bisect_left(keys, key)
                node.fnode = node.fnode.rebuild_with(key)
                if kids is not None:
                    node.children[i:i + 1] = list(kids)
                self._refresh(node)
                for anc, idx in path:
                    self._bump(anc, idx)
                return
            # full: split around the median, place the pending key in a
            # half, and promote the median toward the root
            self.splits += 1
            mid = len(keys) // 2
            median = keys[mid]
            if node.children is None:
                left = _Node(self._build_fnode(keys[:mid]), None)
                right = _Node(self._build_fnode(keys[mid + 1:]), None)
            else:
                left = _Node(self._build_fnode(keys[:mid]), node.children[:mid + 1])
                right = _Node(self._build_fnode(keys[mid + 1:]), node.children[mid + 1:])
            target = left if key < median else right
            i = bisect_left(target.fnode.keys, key)
            target.fnode = target.fnode.rebuild_with(key)
            if kids is not None:
                target.children[i:i + 1] = list(kids)
            self._refresh(left)
            self._refresh(right)
            key, kids = median, (left, right)
            if path:
                node, _ = path.pop()
                c.node_visits += 1
            else:
                self.root = _Node(self._build_fnode((median,)), [left, right])
                self._refresh(self.root)
                self.height += 1
                return

    def search(self, x: int) -> bool:
        """Membership via one fusion-node rank per level."""
        c = self.counters
        node = self.root
        while node is not None:
            c.node_visits += 1
            keys = node.fnode.keys
            p = node.fnode.node_rank(x, c)
            if p > 0 and keys[p - 1] == x:
                c.key_comparisons += 1
                return True
            c.key_comparisons += 1
            node = None if node.children is None else node.children[p]
        return False

    def rank(self, x: int) -> int:
        """Count (with multiplicity) of stored keys <= x."""
        c = self.counters
        node = self.root
        acc = 0
        while node is not None:
            c.node_visits += 1
            keys = node.fnode.keys
            p = node.fnode.node_rank(x, c)
            acc += node.cum[p]
            if p > 0 and keys[p - 1] == x:
                c.key_comparisons += 1
                return acc
            c.key_comparisons += 1
            node = None if node.children is None else node.children[p]
        return acc

    def predecessor(self, x: int):
        """Largest stored key <= x, or None."""
        c = self.counters
        node = self.root
        best = None
        while node is not None:
            c.node_visits += 1
            keys = node.fnode.keys
            p = node.fnode.node_rank(x, c)
            if p > 0:
                best = keys[p - 1]
                c.key_comparisons += 1
                if best == x:
                    return x
            node = None if node.children is None else node.children[p]
        return best

    def successor(self, x: int):
        """Smallest stored key >= x, or None."""
        c = self.counters
        node = self.root
        best = None
        while node is not None:
            c.node_visits += 1
            keys = node.fnode.keys
            p = node.fnode.node_rank(x, c)
            if p > 0:
                c.key_comparisons += 1
                if keys[p - 1] == x:
                    return x
            if p < len(keys):
                best = keys[p]
            node = None if node.children is None else node.children[p]
        return best

    def inorder(self) -> list[int]:
        """All stored keys in non-decreasing order, duplicates expanded."""
        out: list[int] = []
        if self.root is not None:
            self._walk(self.root, out)
        return out

    def _walk(self, node: _Node, out: list[int]) -> None:
        self.counters.node_visits += 1
        mult = self.mult
        keys = node.fnode.keys
        if node.children is None:
            for k in keys:
                m = mult.get(k, 1)
                if m == 1:
                    out.append(k)
                else:
                    out.extend(repeat(k, m))
            return
        for i, k in enumerate(keys):
            self._walk(node.children[i], out)
            m = mult.get(k, 1)
            if m == 1:
                out.append(k)
            else:
                out.extend(repeat(k, m))
        self._walk(node.children[-1], out)

    def audit(self) -> int:
        """Verify structural invariants; returns the leaf depth.

        Checks ordering, occupancy bounds, equal leaf depth, cached
        counts, and that each node's sketch structure matches its keys;
        raises AssertionError on violation.
        """
        if self.root is None:
            if self.size != 0:
                raise AssertionError("empty tree with nonzero size")
            return 0
        depth = _audit_node(self, self.root, 0, -1, 1 << self.w, True, [None])
        if self.root.weight != self.size:
            raise AssertionError("root weight disagrees with tree size")
        return depth


def _audit_node(tree, node: _Node, depth: int, lo: int, hi: int,
                is_root: bool, leaf_depth: list) -> int:
    keys = node.fnode.keys
    t = len(keys)
    floor = 1 if is_root else -(-tree.capacity // 2) - 1
    if not floor <= t <= tree.capacity - 1:
        raise AssertionError(f"occupancy violated: {t} keys at depth {depth}")
    for a, b in zip(keys, keys[1:]):
        if a >= b:
            raise AssertionError("keys out of order inside a node")
    if not (lo < keys[0] and keys[-1] < hi):
        raise AssertionError("separator ordering violated")
    for a, b in zip(node.fnode.sketches, node.fnode.sketches[1:]):
        if a >= b:
            raise AssertionError("sketches out of order inside a node")
    mult = tree.mult
    if node.children is None:
        if leaf_depth[0] is None:
            leaf_depth[0] = depth
        elif leaf_depth[0] != depth:
            raise AssertionError("leaves at unequal depth")
        acc = 0
        for i, k in enumerate(keys):
            acc += mult.get(k, 1)
            if node.cum[i + 1] != acc:
                raise AssertionError("stale cumulative counts in a leaf")
        if node.weight != acc:
            raise AssertionError("stale leaf weight")
        return depth
    if len(node.children) != t + 1:
        raise AssertionError("child count disagrees with key count")
    acc = 0
    bounds = [lo] + list(keys) + [hi]
    for i, child in enumerate(node.children):
        _audit_node(tree, child, depth + 1, bounds[i], bounds[i + 1],
                    False, leaf_depth)
        if i < t:
            acc += child.weight + mult.get(keys[i], 1)
            if node.cum[i + 1] != acc:
                raise AssertionError("stale cumulative counts")
    if node.weight != acc + node.children[-1].weight:
        raise AssertionError("stale node weight")
    return leaf_depth[0]


def sort_all(keys, capacity: int = 8, w: int = WORD_BITS) -> list[int]:
    """Non-decreasing permutation of ``keys`` via repeated insertion."""
    tree = FusionTree(capacity, w)
    for k in keys:
        tree.insert(k)
    return tree.inorder()
