"""Bounded block vertex deletion on a nice tree decomposition.

States combine a bag deletion set, a labeling of the rest, a used
budget, and per-block shape hypotheses; families of boundary-component
partitions are kept representative after every node.  See ``_dpcore``
for the engine.
"""

from __future__ import annotations

from ._dpcore import BlockEngine, SolveResult, StateKey
from .decomposition import NiceTreeDecomposition, heuristic_td, to_nice
from .families import enumerate_ud, get_family
from .instance import Instance
from .oracle import verify_solution
from .partitions import Partition


def build_engine(
    inst: Instance,
    ntd: NiceTreeDecomposition | None = None,
    witness: bool = False,
    canonize: bool | None = None,
) -> BlockEngine:
    fam = get_family(inst.family)
    patterns = enumerate_ud(inst.d, fam)
    if ntd is None:
        td = inst.td if inst.td is not None else heuristic_td(inst.graph)
        ntd = to_nice(td, inst.graph)
    return BlockEngine(
        inst.graph, inst.d, inst.k, patterns, ntd, witness=witness, canonize=canonize
    )


def solve_block(
    inst: Instance,
    ntd: NiceTreeDecomposition | None = None,
    witness: bool = False,
    canonize: bool | None = None,
    keep_tables: bool = False,
) -> SolveResult:
    """Decide the block variant; optionally recover a verified deletion set."""
    if inst.mode != "block":
        raise ValueError("instance mode must be 'block'")
    engine = build_engine(inst, ntd, witness=witness, canonize=canonize)
    engine._debug_keep_tables = keep_tables
    result = engine.run()
    if witness and result.decision:
        if result.witness is None or not verify_solution(
            inst.graph, result.witness, inst.d, inst.family, "block"
        ):
            raise AssertionError("recovered witness failed verification")
    return result


def intro_step(
    engine: BlockEngine,
    bag: tuple[int, ...],
    v: int,
    child_table: dict,
    parent_key: StateKey,
) -> list[Partition]:
    """Family of one introduce-node state, reduced; for testing."""
    table = engine._introduce(bag, v, child_table)
    engine.reduce_table(table)
    return list(table.get(parent_key, {}))


def forget_step(
    engine: BlockEngine,
    bag: tuple[int, ...],
    v: int,
    child_table: dict,
    parent_key: StateKey,
) -> list[Partition]:
    """Family of one forget-node state, reduced; for testing."""
    table = engine._forget(bag, v, child_table)
    engine.reduce_table(table)
    return list(table.get(parent_key, {}))


def join_step(
    engine: BlockEngine,
    bag: tuple[int, ...],
    left_table: dict,
    right_table: dict,
    parent_key: StateKey,
) -> list[Partition]:
    """Family of one join-node state, reduced; for testing."""
    table = engine._join(bag, left_table, right_table)
    engine.reduce_table(table)
    return list(table.get(parent_key, {}))


__all__ = [
    "SolveResult",
    "build_engine",
    "solve_block",
    "intro_step",
    "forget_step",
    "join_step",
]
