"""Fusion-node tests: the worked packed-comparison pipeline, the flag-bit
fact, linear-scan oracles, and cross-mode agreement."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from fusionsort.counters import Counters
from fusionsort.ctrie import CondensedTrie
from fusionsort.fnode import FusionNode, NodeFull
from fusionsort.wordops import msb_index, replicate_field

WORKED_KEYS = (0b11011111, 0b11100000, 0b11100001, 0b11111110)
WORKED_X = 0b11100111


def linear_rank(keys, x):
    return sum(1 for k in keys if k <= x)


def random_node(rng, capacity=None, bits=None, multiplication=False):
    capacity = capacity or rng.choice([2, 4, 6, 8])
    bits = bits or rng.choice([10, 16, 64])
    t = rng.randint(1, capacity)
    keys = set()
    while len(keys) < t:
        keys.add(rng.getrandbits(bits))
    return FusionNode.build(sorted(keys), capacity), sorted(keys), bits


class TestBuild:
    def test_worked_example(self):
        node = FusionNode.build(WORKED_KEYS, capacity=4)
        assert node.interesting == (0, 4, 5)
        assert node.sketches == (0b011, 0b100, 0b101, 0b110)
        assert node.packed == 48350
        assert node.flag_mask == 0b1000100010001000

    def test_single_key(self):
        node = FusionNode.build((99,), capacity=8)
        assert node.sketches == (0,)
        assert node.packed == 1 << 7  # lone flag bit

    def test_sketches_order_isomorphic(self):
        rng = random.Random(11)
        for _ in range(200):
            node, keys, _ = random_node(rng, capacity=8)
            for a, b in combinations(range(len(keys)), 2):
                assert (keys[a] < keys[b]) == (node.sketches[a] < node.sketches[b])

    def test_capacity_checks(self):
        with pytest.raises(ValueError):
            FusionNode.build(tuple(range(9)), capacity=9)  # 81 > 64
        with pytest.raises(ValueError):
            FusionNode.build(tuple(range(5)), capacity=4)
        with pytest.raises(ValueError):
            FusionNode.build((3, 3), capacity=4)


class TestSketchOf:
    def test_worked_query(self):
        node = FusionNode.build(WORKED_KEYS, capacity=4)
        assert node.sketch_of(WORKED_X) == 0b101

    def test_zero(self):
        node = FusionNode.build(WORKED_KEYS, capacity=4)
        assert node.sketch_of(0) == 0

    def test_members_get_stored_sketch(self):
        rng = random.Random(12)
        for _ in range(100):
            node, keys, _ = random_node(rng)
            for i, k in enumerate(keys):
                assert node.sketch_of(k) == node.sketches[i]


class TestPackedCompare:
    def test_worked_pipeline(self):
        node = FusionNode.build(WORKED_KEYS, capacity=4)
        sk = node.sketch_of(WORKED_X)
        query_word = replicate_field(sk, 4, 4)
        assert query_word == 21845
        assert node.packed - query_word == 26505
        masked = (node.packed - query_word) & node.flag_mask
        assert masked == 136
        assert msb_index(masked) == 7
        assert len(node.keys) - 1 - msb_index(masked) // node.block == 2
        assert node.packed_compare(sk) == 2

    def test_zero_sketch_clears_nothing(self):
        node = FusionNode.build(WORKED_KEYS, capacity=4)
        assert node.packed_compare(0) == 0

    def test_matches_linear_scan_and_popcount(self):
        rng = random.Random(13)
        for _ in range(300):
            node, keys, _ = random_node(rng)
            for _ in range(6):
                sk = rng.getrandbits(node.block - 1) if node.block > 1 else 0
                want = sum(1 for s in node.sketches if s < sk)
                got = node.packed_compare(sk)
                assert got == want
                # third formulation: surviving flags are the complement
                diff = (node.packed - sk * node._repl) & node.flag_mask
                assert got == len(keys) - bin(diff).count("1")

    def test_oversized_sketch_rejected(self):
        node = FusionNode.build(WORKED_KEYS, capacity=4)
        with pytest.raises(ValueError):
            node.packed_compare(0b1000)


class TestFlagFact:
    def test_exhaustive_small_blocks(self):
        # flag of (1|s) - (0|q) survives exactly when q <= s
        for r in range(2, 9):
            flag = 1 << (r - 1)
            for s in range(flag):
                for q in range(flag):
                    survived = (((flag | s) - q) >> (r - 1)) & 1
                    assert survived == (1 if q <= s else 0)


class TestNodeRank:
    def test_worked_value(self):
        node = FusionNode.build(WORKED_KEYS, capacity=4)
        assert node.node_rank(231) == 3
        assert node.nearest_key(231) == WORKED_KEYS[2]

    def test_extremes(self):
        node = FusionNode.build(WORKED_KEYS, capacity=4)
        assert node.node_rank(1) == 0
        assert node.node_rank(WORKED_KEYS[-1]) == 4
        assert node.node_rank((1 << 64) - 1) == 4

    def test_members(self):
        node = FusionNode.build(WORKED_KEYS, capacity=4)
        for i, k in enumerate(WORKED_KEYS):
            assert node.node_rank(k) == i + 1

    @settings(max_examples=400, deadline=None)
    @given(st.data())
    def test_matches_linear_count(self, data):
        bits = data.draw(st.sampled_from([8, 16, 64]))
        keys = sorted(data.draw(st.sets(
            st.integers(min_value=0, max_value=(1 << bits) - 1),
            min_size=1, max_size=8)))
        node = FusionNode.build(keys, capacity=8)
        x = data.draw(st.one_of(
            st.integers(min_value=0, max_value=(1 << bits) - 1),
            st.sampled_from(keys)))
        assert node.node_rank(x) == linear_rank(keys, x)

    def test_exhaustive_small_domain(self):
        for keys in combinations(range(16), 4):
            node = FusionNode.build(keys, capacity=4)
            for x in range(16):
                assert node.node_rank(x) == linear_rank(keys, x)

    def test_nearest_matches_trie_walk(self):
        rng = random.Random(14)
        for _ in range(200):
            node, keys, bits = random_node(rng, capacity=8, bits=12)
            trie = CondensedTrie.build(keys, w=12)
            for _ in range(8):
                x = rng.getrandbits(12)
                near = node.nearest_key(x)
                walked = trie.trie_search(x)
                if near != walked:
                    # ties split a shared divergence subtree; both legal
                    from fusionsort.wordops import divergence_bit
                    assert x not in (near, walked)
                    assert divergence_bit(x, near) == divergence_bit(x, walked)

    def test_word_ops_bounded(self):
        rng = random.Random(15)
        for _ in range(300):
            node, keys, bits = random_node(rng, capacity=8)
            x = rng.getrandbits(bits)
            c = Counters()
            node.node_rank(x, c)
            assert c.word_ops <= 64


class TestRebuild:
    def test_adds_key(self):
        node = FusionNode.build(WORKED_KEYS, capacity=8)
        grown = node.rebuild_with(231)
        assert grown.keys == (223, 224, 225, 231, 254)
        for x in (0, 224, 230, 231, 232, 255):
            assert grown.node_rank(x) == linear_rank(grown.keys, x)

    def test_reorders(self):
        node = FusionNode.build((50,), capacity=4)
        assert node.rebuild_with(7).keys == (7, 50)

    def test_full_node_signals_split(self):
        node = FusionNode.build(WORKED_KEYS, capacity=4)
        with pytest.raises(NodeFull):
            node.rebuild_with(231)

    def test_duplicate_rejected(self):
        node = FusionNode.build(WORKED_KEYS, capacity=8)
        with pytest.raises(ValueError):
            node.rebuild_with(224)


class TestMultiplicationMode:
    def test_single_distinguishing_bit_is_pure_shift(self):
        node = FusionNode.build((0b0100, 0b1100), capacity=2, multiplication=True)
        assert node.mul is not None
        assert node.mul.multiplier.bit_count() == 1
        for x in range(16):
            assert node.sketch_via_multiplication(x) == node.sketch_of(x)

    def test_cross_mode_rank_agreement(self):
        rng = random.Random(16)
        built = 0
        for _ in range(400):
            cap = rng.choice([2, 4, 8])
            t = rng.randint(1, cap)
            bits = rng.choice([8, 12, 16])
            keys = set()
            while len(keys) < t:
                keys.add(rng.getrandbits(bits))
            node = FusionNode.build(sorted(keys), cap, multiplication=True)
            if node.mul is None:
                continue
            built += 1
            for _ in range(10):
                x = rng.getrandbits(bits)
                assert (node.node_rank(x, use_multiplication=True)
                        == node.node_rank(x))
        assert built > 100  # the search succeeds for most narrow sets

    def test_approximate_sketch_preserves_order(self):
        rng = random.Random(17)
        for _ in range(100):
            keys = set()
            while len(keys) < 6:
                keys.add(rng.getrandbits(12))
            node = FusionNode.build(sorted(keys), 8, multiplication=True)
            if node.mul is None:
                continue
            approx = node.mul.sketches
            assert list(approx) == sorted(approx)
            assert len(set(approx)) == len(approx)

    def test_fallback_at_top_bits(self):
        # distinguishing bits 62 and 63 leave no room to scatter without
        # either colliding or spilling past the word; the node must fall
        # back to exact-only mode
        keys = (0, 1 << 62, 1 << 63, (1 << 62) | (1 << 63))
        node = FusionNode.build(keys, capacity=4, multiplication=True)
        assert node.mul is None
        with pytest.raises(ValueError):
            node.sketch_via_multiplication(5)
        with pytest.raises(ValueError):
            node.node_rank(5, use_multiplication=True)
        assert node.node_rank(1 << 62) == 2  # exact path still works

    def test_exact_mode_never_exposes_multiplication(self):
        node = FusionNode.build(WORKED_KEYS, capacity=4)
        with pytest.raises(ValueError):
            node.sketch_via_multiplication(231)
