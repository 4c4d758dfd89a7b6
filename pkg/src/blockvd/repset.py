"""Representative sets for partition families under incidence acyclicity.

The reduction step works on the cut matrix over GF(2): columns are the
2^(m-1) cuts of the ground set that contain element 0, and a partition's
row marks the cuts that split no part.  Two rows have odd inner product
exactly when the common coarsening of the two partitions has one part,
i.e. when their joint incidence graph is connected.  Keeping a row basis
therefore preserves, for every complementary partition, the existence of
a connected joint - and, within a fixed part-count bucket, connected
means acyclic.
"""

from __future__ import annotations

from typing import Sequence

from ._kernels import gf2_independent_rows
from .errors import BadBucket, TooLarge
from .partitions import Partition, all_partitions, inc_is_forest, one_coarsenings, uplus


def cut_row(p: Partition) -> int:
    """Bitset over cut indices: bit c set iff cut c splits no part of p.

    Cut index c encodes the cut {0} | {i >= 1 : bit i-1 of c set}, so cuts
    are ordered by the numeric value of their characteristic vector.
    """
    if p.m == 0:
        return 1
    masks = p.part_masks()
    first = next(mask for mask in masks if mask & 1)
    others = [mask for mask in masks if not (mask & 1)]
    row = 0
    for sub in range(1 << len(others)):
        cut = first
        s = sub
        j = 0
        while s:
            if s & 1:
                cut |= others[j]
            s >>= 1
            j += 1
        row |= 1 << (cut >> 1)
    return row


def reduce_connected(m: int, bucket: Sequence[Partition], j: int) -> list[Partition]:
    """Rank-based reduction of a fixed-part-count bucket.

    Every partition in the bucket must have exactly i parts with
    i + j = m + 1; the output is a subfamily of size at most 2^(m-1) that
    still offers, for every j-part partition admitting an acyclic joint
    with some bucket member, an acyclic joint with a retained member.
    """
    if not bucket:
        return []
    i = bucket[0].num_parts
    if i + j != m + 1:
        raise BadBucket(f"part counts {i} and {j} do not satisfy i+j=m+1")
    for p in bucket:
        if p.m != m or p.num_parts != i:
            raise BadBucket("bucket mixes ground sets or part counts")
    rows = [cut_row(p) for p in bucket]
    keep = gf2_independent_rows(rows, 1 << max(m - 1, 0))
    return [bucket[idx] for idx in keep]


def rep_partitions(m: int, family: Sequence[Partition]) -> list[Partition]:
    """Representative subfamily of size at most m * 2^(m-1).

    Steps: dedupe, take all 1-coarsenings, bucket them by part count,
    rank-reduce each bucket against the complementary part count, then
    map retained coarsenings back to their original partitions.
    """
    seen: set[Partition] = set()
    originals: list[Partition] = []
    for p in family:
        if p.m != m:
            raise BadBucket("family member over wrong ground set")
        if p not in seen:
            seen.add(p)
            originals.append(p)
    if m == 0 or len(originals) <= 1:
        return originals

    buckets: dict[int, list[tuple[Partition, int]]] = {}
    for oi, orig in enumerate(originals):
        covered: set[Partition] = set()
        for c in one_coarsenings(orig):
            if c in covered:
                continue
            covered.add(c)
            buckets.setdefault(c.num_parts, []).append((c, oi))

    kept: set[int] = set()
    nbits = 1 << (m - 1)
    for i in sorted(buckets):
        pairs = buckets[i]
        rows = [cut_row(c) for (c, _) in pairs]
        for ki in gf2_independent_rows(rows, nbits):
            kept.add(pairs[ki][1])
    return [originals[oi] for oi in sorted(kept)]


def reduce_connected_exhaustive(
    m: int, bucket: Sequence[Partition], j: int
) -> list[Partition]:
    """Slow alternative reduction for differential testing (m <= 7).

    Works on the explicit connectivity matrix whose columns are all
    j-part partitions of the ground set, with a 1 wherever the joint of
    row and column partitions coarsens to a single part.  Keeping a row
    basis of this matrix preserves connected-joinability directly.
    """
    if m > 7:
        raise TooLarge("exhaustive reduction capped at ground sets of size 7")
    if not bucket:
        return []
    i = bucket[0].num_parts
    if i + j != m + 1:
        raise BadBucket(f"part counts {i} and {j} do not satisfy i+j=m+1")
    for p in bucket:
        if p.m != m or p.num_parts != i:
            raise BadBucket("bucket mixes ground sets or part counts")
    columns = [y for y in all_partitions(m) if y.num_parts == j]
    rows = []
    for p in bucket:
        row = 0
        for ci, y in enumerate(columns):
            if uplus(p, y).num_parts == 1:
                row |= 1 << ci
        rows.append(row)
    keep = gf2_independent_rows(rows, len(columns))
    return [bucket[idx] for idx in keep]


def verify_representative(
    m: int, family: Sequence[Partition], sub: Sequence[Partition]
) -> bool:
    """Exhaustive check of the representative-set definition (m <= 7)."""
    if m > 7:
        raise TooLarge("exhaustive verification capped at ground sets of size 7")
    subs = list(sub)
    for y in all_partitions(m):
        if any(inc_is_forest(m, [x, y]) for x in family):
            if not any(inc_is_forest(m, [x, y]) for x in subs):
                return False
    return True
