"""Classic in-memory B-tree with linear in-node search.

The baseline sorter and the differential oracle for the fusion tree.
Both trees follow the same split discipline (a full node splits around
its median when a key arrives at it, the median cascading upward), so
shapes and node-visit counts are directly comparable; only the in-node
search differs.  Duplicate keys are stored once with a multiplicity,
and every node caches cumulative weighted counts so rank is a single
root-to-leaf descent.
"""

from __future__ import annotations

from bisect import bisect_left
from itertools import repeat

from .counters import Counters
from .wordops import WORD_BITS


def effective_capacity(capacity: int, w: int = WORD_BITS) -> int:
    """Fan-out actually usable by the trees for a requested capacity.

    Median splits of a full node keep both halves at the occupancy floor
    only for an even fan-out of at least 4, and per-key sketch blocks
    bound it above by isqrt(w); the requested value is rounded up into
    that lattice.
    """
    cap = max(4, capacity)
    cap += cap & 1
    bound = _isqrt(w)
    bound -= bound & 1
    if cap > bound:
        cap = bound
    if cap < 4:
        raise ValueError("word width too small for a degree-4 tree")
    return cap


def _isqrt(n: int) -> int:
    r = int(n ** 0.5)
    while (r + 1) * (r + 1) <= n:
        r += 1
    while r * r > n:
        r -= 1
    return r


class _Node:
    __slots__ = ("keys", "children", "cum", "weight")

    def __init__(self, keys: list[int], children: list["_Node"] | None):
        self.keys = keys
        self.children = children  # None for leaves
        self.cum: list[int] = []
        self.weight = 0


class BTree:
    """Sorted multiset of unsigned w-bit integers."""

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

    def _refresh(self, node: _Node) -> None:
        mult = self.mult
        cum = [0] * (len(node.keys) + 1)
        acc = 0
        if node.children is None:
            for i, k in enumerate(node.keys):
                acc += mult.get(k, 1)
                cum[i + 1] = acc
            node.weight = acc
        else:
            children = node.children
            for i, k in enumerate(node.keys):
                acc += children[i].weight + mult.get(k, 1)
                cum[i + 1] = acc
            node.weight = acc + children[-1].weight
        node.cum = cum

    def _bump(self, node: _Node, idx: int) -> None:
        # one more entry somewhere right of position idx
        node.weight += 1
        cum = node.cum
        for j in range(idx + 1, len(cum)):
            cum[j] += 1

    # -- operations -----------------------------------------------------

    def insert(self, x: int) -> None:
        """Add one occurrence of x.

        The descent never splits; when the target node is full it splits
        around its own median and the median cascades upward, so only
        nodes that actually receive a key are ever divided.
        """
        if x < 0 or x >> self.w:
            raise ValueError("key outside the word range")
        self.size += 1
        if self.root is None:
            self.root = _Node([x], None)
            self._refresh(self.root)
            return

        c = self.counters
        node = self.root
        path: list[tuple[_Node, int]] = []
        while True:
            c.node_visits += 1
            keys = node.keys
            t = len(keys)
            i = 0
            while i < t and keys[i] < x:
                c.key_comparisons += 1
                i += 1
            if i < t:
                c.key_comparisons += 1
                if keys[i] == x:
                    self.mult[x] = self.mult.get(x, 1) + 1
                    self._bump(node, i)
                    for anc, idx in path:
                        self._bump(anc, idx)
                    return
            if node.children is None:
                break
            path.append((node, i))
            node = node.children[i]

        key = x
        kids: tuple[_Node, _Node] | None = None
        while True:
            keys = node.keys
            if len(keys) < self.capacity - 1:
                i = bisect_left(keys, key)
                keys.insert(i, key)
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
                left = _Node(keys[:mid], None)
                right = _Node(keys[mid + 1:], None)
            else:
                left = _Node(keys[:mid], node.children[:mid + 1])
                right = _Node(keys[mid + 1:], node.children[mid + 1:])
            target = left if key < median else right
            i = bisect_left(target.keys, key)
            target.keys.insert(i, key)
            if kids is not None:
                target.children[i:i + 1] = list(kids)
            self._refresh(left)
            self._refresh(right)
            key, kids = median, (left, right)
            if path:
                node, _ = path.pop()
                c.node_visits += 1
            else:
                self.root = _Node([median], [left, right])
                self._refresh(self.root)
                self.height += 1
                return

    def search(self, x: int) -> bool:
        """Membership by linear scan at each level."""
        c = self.counters
        node = self.root
        while node is not None:
            c.node_visits += 1
            keys = node.keys
            t = len(keys)
            i = 0
            while i < t and keys[i] < x:
                c.key_comparisons += 1
                i += 1
            if i < t:
                c.key_comparisons += 1
                if keys[i] == x:
                    return True
            node = None if node.children is None else node.children[i]
        return False

    def rank(self, x: int) -> int:
        """Count (with multiplicity) of stored keys <= x."""
        c = self.counters
        node = self.root
        acc = 0
        while node is not None:
            c.node_visits += 1
            keys = node.keys
            t = len(keys)
            p = 0
            while p < t and keys[p] <= x:
                c.key_comparisons += 1
                p += 1
            if p < t:
                c.key_comparisons += 1
            acc += node.cum[p]
            if p > 0 and keys[p - 1] == x:
                return acc
            node = None if node.children is None else node.children[p]
        return acc

    def inorder(self) -> list[int]:
        """All stored keys in non-decreasing order, duplicates expanded."""
        out: list[int] = []
        if self.root is not None:
            self._walk(self.root, out)
        return out

    def _walk(self, node: _Node, out: list[int]) -> None:
        self.counters.node_visits += 1
        mult = self.mult
        if node.children is None:
            for k in node.keys:
                m = mult.get(k, 1)
                if m == 1:
                    out.append(k)
                else:
                    out.extend(repeat(k, m))
            return
        for i, k in enumerate(node.keys):
            self._walk(node.children[i], out)
            m = mult.get(k, 1)
            if m == 1:
                out.append(k)
            else:
                out.extend(repeat(k, m))
        self._walk(node.children[-1], out)

    def audit(self) -> int:
        """Verify structural invariants; returns the leaf depth.

        Checks ordering, occupancy bounds, equal leaf depth, and the
        cached cumulative counts; raises AssertionError on violation.
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
    keys = node.keys
    t = len(keys)
    floor = 1 if is_root else -(-tree.capacity // 2) - 1
    if not floor <= t <= tree.capacity - 1:
        raise AssertionError(f"occupancy violated: {t} keys at depth {depth}")
    for a, b in zip(keys, keys[1:]):
        if a >= b:
            raise AssertionError("keys out of order inside a node")
    if not (lo < keys[0] and keys[-1] < hi):
        raise AssertionError("separator ordering violated")
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
    bounds = [lo] + keys + [hi]
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
    tree = BTree(capacity, w)
    for k in keys:
        tree.insert(k)
    return tree.inorder()
