"""sortbench: generate inputs, run instrumented sorts, verify, emit CSV.

Exit codes: 0 on success, 1 on verification or I/O failure, 2 on usage
errors (argparse's default).
"""

from __future__ import annotations

import argparse
import sys
from bisect import bisect_right

from .bench import (ALGORITHMS, DISTRIBUTIONS, append_csv, generate, run_sort,
                    sort_via)
from .ftree import FusionTree, degree_for


def _capacity_for(args, n: int) -> int:
    if args.mode == "theoretical":
        return degree_for(n, "theoretical")
    return args.capacity


def _read_keys(path: str) -> list[int]:
    keys = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            value = int(line)  # ValueError propagates to the usage handler
            if value < 0 or value >> 64:
                raise ValueError(f"line {lineno}: value outside unsigned 64-bit range")
            keys.append(value)
    return keys


def _diff_summary(got: list[int], expected: list[int]) -> str:
    if len(got) != len(expected):
        return f"length mismatch: got {len(got)}, expected {len(expected)}"
    for i, (g, e) in enumerate(zip(got, expected)):
        if g != e:
            return f"first mismatch at index {i}: got {g}, expected {e}"
    return "outputs identical"


def _cmd_run(args) -> int:
    keys = generate(args.dist, args.n, args.seed)
    record = run_sort(args.algo, keys, _capacity_for(args, args.n),
                      dist=args.dist, seed=args.seed)
    if args.csv:
        append_csv([record], args.csv)
    print(f"{record.algo} n={record.n} dist={record.dist} seed={record.seed} "
          f"capacity={record.capacity} node_visits={record.node_visits} "
          f"word_ops={record.word_ops} key_comparisons={record.key_comparisons} "
          f"wall_ns={record.wall_ns} verified={str(record.verified).lower()}")
    if not record.verified:
        out, _, _ = sort_via(args.algo, keys, record.capacity)
        print(f"verification failed: {_diff_summary(out, sorted(keys))}",
              file=sys.stderr)
        return 1
    return 0


def _cmd_sort(args) -> int:
    keys = _read_keys(args.infile)
    out, _, _ = sort_via(args.algo, keys, _capacity_for(args, len(keys)))
    expected = sorted(keys)
    with open(args.outfile, "w", encoding="ascii", newline="") as fh:
        fh.writelines(f"{k}\n" for k in out)
    if out != expected:
        print(f"verification failed: {_diff_summary(out, expected)}",
              file=sys.stderr)
        return 1
    return 0


def _cmd_rank(args) -> int:
    keys = _read_keys(args.infile)
    if args.algo == "std":
        ordered = sorted(keys)
        print(bisect_right(ordered, args.key))
        return 0
    tree = FusionTree(_capacity_for(args, len(keys)))
    # the btree path answers identically; fusion is the interesting one
    for k in keys:
        tree.insert(k)
    print(tree.rank(args.key))
    return 0


def _u64(text: str) -> int:
    value = int(text)
    if value < 0 or value >> 64:
        raise argparse.ArgumentTypeError("expected an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sortbench",
        description="fusion-tree/B-tree sorting benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--algo", choices=ALGORITHMS, default="fusion")
        p.add_argument("--capacity", type=int, default=8,
                       help="tree degree under --mode fixed (default 8)")
        p.add_argument("--mode", choices=("theoretical", "fixed"),
                       default="fixed", help="degree policy (default fixed)")

    run = sub.add_parser("run", help="generate input, sort, verify, record")
    common(run)
    run.add_argument("--n", type=int, required=True)
    run.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform")
    run.add_argument("--seed", type=_u64, default=0)
    run.add_argument("--csv", help="append the record to this CSV file")
    run.set_defaults(func=_cmd_run)

    sort = sub.add_parser("sort", help="sort a file of decimal u64 keys")
    common(sort)
    sort.add_argument("--in", dest="infile", required=True)
    sort.add_argument("--out", dest="outfile", required=True)
    sort.set_defaults(func=_cmd_sort)

    rank = sub.add_parser("rank", help="count keys <= --key in a file")
    common(rank)
    rank.add_argument("--in", dest="infile", required=True)
    rank.add_argument("--key", type=_u64, required=True)
    rank.set_defaults(func=_cmd_rank)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        # bad file contents or parameters: a usage problem
        print(f"sortbench: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"sortbench: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
