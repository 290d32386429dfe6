"""Input generation, instrumented sort runs, and the benchmark CSV."""

from __future__ import annotations

import random
from dataclasses import dataclass
from time import perf_counter_ns

from .btree import BTree
from .counters import Counters
from .ftree import FusionTree

ALGORITHMS = ("fusion", "btree", "std")
DISTRIBUTIONS = ("uniform", "sorted", "reverse", "clustered")
CSV_COLUMNS = ("algo", "n", "dist", "seed", "capacity", "node_visits",
               "word_ops", "key_comparisons", "wall_ns", "verified")

_CLUSTER_BANDS = 8  # clustered draws stay inside this many 2**16-wide bands


@dataclass
class BenchRecord:
    algo: str
    n: int
    dist: str
    seed: int
    capacity: int
    node_visits: int
    word_ops: int
    key_comparisons: int
    wall_ns: int
    verified: bool

    def to_row(self) -> list[str]:
        return [self.algo, str(self.n), self.dist, str(self.seed),
                str(self.capacity), str(self.node_visits), str(self.word_ops),
                str(self.key_comparisons), str(self.wall_ns),
                "true" if self.verified else "false"]

    @classmethod
    def from_row(cls, row: list[str]) -> "BenchRecord":
        if len(row) != len(CSV_COLUMNS):
            raise ValueError(f"expected {len(CSV_COLUMNS)} fields, got {len(row)}")
        return cls(algo=row[0], n=int(row[1]), dist=row[2], seed=int(row[3]),
                   capacity=int(row[4]), node_visits=int(row[5]),
                   word_ops=int(row[6]), key_comparisons=int(row[7]),
                   wall_ns=int(row[8]), verified=row[9] == "true")


def generate(dist: str, n: int, seed: int) -> list[int]:
    """Deterministic test input for a given (dist, n, seed)."""
    if dist not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution: {dist!r}")
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = random.Random(seed)
    if dist == "uniform":
        return [rng.getrandbits(64) for _ in range(n)]
    if dist in ("sorted", "reverse"):
        start = rng.getrandbits(32)
        step = rng.getrandbits(16) + 1
        ramp = [start + i * step for i in range(n)]
        return ramp if dist == "sorted" else ramp[::-1]
    # clustered: shared high bits inside each band, so few distinguishing bits
    bands = [rng.getrandbits(64) & ~0xFFFF for _ in range(_CLUSTER_BANDS)]
    return [bands[rng.randrange(_CLUSTER_BANDS)] | rng.getrandbits(16)
            for _ in range(n)]


def sort_via(algo: str, keys: list[int], capacity: int = 8) -> tuple[list[int], Counters, int]:
    """Sort with the named structure: (output, counters, effective capacity)."""
    if algo == "std":
        return sorted(keys), Counters(), capacity
    if algo == "fusion":
        tree = FusionTree(capacity)
    elif algo == "btree":
        tree = BTree(capacity)
    else:
        raise ValueError(f"unknown algorithm: {algo!r}")
    for k in keys:
        tree.insert(k)
    return tree.inorder(), tree.counters, tree.capacity


def run_sort(algo: str, keys: list[int], capacity: int = 8, *,
             dist: str = "uniform", seed: int = 0) -> BenchRecord:
    """One benchmark cell: sort, verify against sorted(), fill counters."""
    expected = sorted(keys)
    t0 = perf_counter_ns()
    out, counters, effective = sort_via(algo, keys, capacity)
    wall = perf_counter_ns() - t0
    return BenchRecord(algo=algo, n=len(keys), dist=dist, seed=seed,
                       capacity=effective, node_visits=counters.node_visits,
                       word_ops=counters.word_ops,
                       key_comparisons=counters.key_comparisons,
                       wall_ns=wall, verified=out == expected)


def emit_csv(records, path) -> None:
    """Write header plus one row per record, comma-separated, newline-delimited."""
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for rec in records:
            fh.write(",".join(rec.to_row()) + "\n")


def append_csv(records, path) -> None:
    """Like emit_csv, but keeps existing rows (header written once)."""
    try:
        with open(path, "r", encoding="ascii") as fh:
            has_header = fh.readline().strip() != ""
    except FileNotFoundError:
        has_header = False
    with open(path, "a", encoding="ascii", newline="") as fh:
        if not has_header:
            fh.write(",".join(CSV_COLUMNS) + "\n")
        for rec in records:
            fh.write(",".join(rec.to_row()) + "\n")


def read_csv(path) -> list[BenchRecord]:
    """Parse a benchmark CSV back into records; header must match exactly."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().rstrip("\n")
        if header.split(",") != list(CSV_COLUMNS):
            raise ValueError("unrecognized benchmark CSV header")
        return [BenchRecord.from_row(line.rstrip("\n").split(","))
                for line in fh if line.strip()]
