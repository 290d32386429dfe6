"""Word-RAM integer sorting with fusion trees.

Exposes the constant-time word primitives, the condensed trie reference
structure, fusion nodes, the fusion tree and its classic B-tree
baseline, and the benchmark helpers behind the ``sortbench`` CLI.
"""

from .bench import (ALGORITHMS, CSV_COLUMNS, DISTRIBUTIONS, BenchRecord,
                    append_csv, emit_csv, generate, read_csv, run_sort,
                    sort_via)
from .btree import BTree, effective_capacity
from .counters import Counters
from .ctrie import CondensedTrie
from .fnode import FusionNode, NodeFull
from .ftree import FusionTree, degree_for, key_to_signed, signed_to_key, sort_all
from .wordops import (WORD_BITS, divergence_bit, msb_index, prefix_mask,
                      replicate_field, replication_constant, suffix_mask,
                      word_mask)

__all__ = [
    "ALGORITHMS", "CSV_COLUMNS", "DISTRIBUTIONS", "WORD_BITS",
    "BTree", "BenchRecord", "CondensedTrie", "Counters", "FusionNode",
    "FusionTree", "NodeFull",
    "append_csv", "degree_for", "divergence_bit", "effective_capacity",
    "emit_csv", "generate", "key_to_signed", "msb_index", "prefix_mask",
    "read_csv", "replicate_field", "replication_constant", "run_sort",
    "signed_to_key", "sort_all", "sort_via", "suffix_mask", "word_mask",
]
