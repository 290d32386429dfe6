"""Operation counters backing the benchmark's cost model."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(slots=True)
class Counters:
    """Mutable tally of the work a structure performed.

    ``node_visits`` counts tree nodes touched, ``word_ops`` counts
    machine-word operations inside fusion-node queries (including the
    hidden exact-gather loop, so the literal cost stays visible), and
    ``key_comparisons`` counts full-key comparisons.
    """

    node_visits: int = 0
    word_ops: int = 0
    key_comparisons: int = 0

    def reset(self) -> None:
        self.node_visits = 0
        self.word_ops = 0
        self.key_comparisons = 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.node_visits, self.word_ops, self.key_comparisons)
