#!/usr/bin/env python3
"""Benchmark the GF(2) reduction kernels: compiled extension vs pure Python.

The kernel is the inner loop of the representative-set reduction, which
runs after every dynamic-programming transition.  Rows are cut-matrix
bitsets with 2^(m-1) columns; the benchmark reduces random full-ish
partition families for growing ground sets and reports both backends.

Usage: python benchmarks/bench_repset.py [--max-m 14] [--rows 400] [--reps 3]
"""

from __future__ import annotations

import argparse
import random
import time

from blockvd import _gf2
from blockvd.partitions import Partition
from blockvd.repset import cut_row

try:
    from blockvd import _gf2c
except ImportError:  # pragma: no cover
    _gf2c = None


def random_partition(rng: random.Random, m: int) -> Partition:
    labels = [0] * m
    nxt = 1
    for i in range(1, m):
        pick = rng.randint(0, nxt)
        labels[i] = pick
        if pick == nxt:
            nxt += 1
    groups: dict[int, list[int]] = {}
    for e, g in enumerate(labels):
        groups.setdefault(g, []).append(e)
    return Partition.from_parts(m, groups.values())


def bench(kernel, rows: list[int], nbits: int, reps: int) -> tuple[float, int]:
    best = float("inf")
    kept = 0
    for _ in range(reps):
        t0 = time.perf_counter()
        out = kernel(rows, nbits)
        best = min(best, time.perf_counter() - t0)
        kept = len(out)
    return best, kept


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-m", type=int, default=14)
    ap.add_argument("--rows", type=int, default=400)
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()

    rng = random.Random(0)
    print(f"{'m':>3} {'cols':>6} {'rows':>5} {'kept':>5} "
          f"{'pure (ms)':>10} {'cython (ms)':>12} {'speedup':>8}")
    for m in range(6, args.max_m + 1):
        nbits = 1 << (m - 1)
        rows = [cut_row(random_partition(rng, m)) for _ in range(args.rows)]
        t_pure, kept = bench(_gf2.gf2_independent_rows, rows, nbits, args.reps)
        line = f"{m:>3} {nbits:>6} {len(rows):>5} {kept:>5} {t_pure * 1e3:>10.2f}"
        if _gf2c is not None:
            t_c, kept_c = bench(_gf2c.gf2_independent_rows, rows, nbits, args.reps)
            assert kept_c == kept, "kernels disagree"
            line += f" {t_c * 1e3:>12.2f} {t_pure / t_c:>8.2f}x"
        else:
            line += f" {'n/a':>12} {'n/a':>8}"
        print(line)


if __name__ == "__main__":
    main()
