"""Core graph representation and structural primitives.

Undirected simple graphs over dense vertex ids 0..n-1.  Most operations
take an optional ``within`` vertex set and then act on the induced
subgraph without re-indexing, so callers can keep host-graph ids
throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import IncompatibleBoundary, InvalidInput
from .partitions import Partition


class Graph:
    """Immutable undirected simple graph with sorted adjacency lists."""

    __slots__ = ("n", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidInput("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InvalidInput(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in adj)
        self._edges = frozenset(
            (u, v) for u in range(n) for v in self._adj[u] if u < v
        )

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edges

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def m(self) -> int:
        return len(self._edges)

    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def induced_edges(g: Graph, within: Iterable[int]) -> frozenset[tuple[int, int]]:
    ws = set(within)
    return frozenset((u, v) for (u, v) in g.edges() if u in ws and v in ws)


def connected_components(
    g: Graph, within: Iterable[int] | None = None
) -> list[frozenset[int]]:
    """Connected components as vertex sets, sorted by minimum element."""
    verts = sorted(within) if within is not None else list(range(g.n))
    vset = set(verts)
    seen: set[int] = set()
    comps: list[frozenset[int]] = []
    for s in verts:
        if s in seen:
            continue
        stack = [s]
        seen.add(s)
        comp = {s}
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w in vset and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


@dataclass(frozen=True)
class BlockDecomposition:
    """Maximal biconnected subgraphs plus the cut vertices."""

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]


def biconnected_blocks(
    g: Graph, within: Iterable[int] | None = None
) -> BlockDecomposition:
    """Blocks via iterative low-point DFS; isolated vertices are K1 blocks.

    Blocks are returned sorted by their sorted vertex tuples, so the
    output is independent of traversal order.
    """
    verts = sorted(within) if within is not None else list(range(g.n))
    vset = set(verts)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    timer = 0
    touched: set[int] = set()

    for root in verts:
        if root in disc:
            continue
        # Each stack frame is (vertex, iterator over remaining neighbors).
        disc[root] = low[root] = timer
        timer += 1
        parent[root] = None
        estack: list[tuple[int, int]] = []
        frames: list[tuple[int, Iterator[int]]] = [
            (root, iter(g.neighbors(root)))
        ]
        root_children = 0
        while frames:
            u, it = frames[-1]
            advanced = False
            for w in it:
                if w not in vset:
                    continue
                if w not in disc:
                    parent[w] = u
                    disc[w] = low[w] = timer
                    timer += 1
                    estack.append((u, w))
                    frames.append((w, iter(g.neighbors(w))))
                    if u == root:
                        root_children += 1
                    advanced = True
                    break
                if w != parent[u] and disc[w] < disc[u]:
                    estack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            frames.pop()
            if frames:
                p = frames[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= disc[p]:
                    # p separates the subtree at u: pop one block.
                    comp: set[int] = set()
                    while estack:
                        a, b = estack.pop()
                        comp.add(a)
                        comp.add(b)
                        touched.add(a)
                        touched.add(b)
                        if (a, b) == (p, u):
                            break
                    blocks.append(frozenset(comp))
                    if parent[p] is not None or root_children > 1:
                        cuts.add(p)
        if root_children > 1:
            cuts.add(root)

    for v in verts:
        if v not in touched:
            blocks.append(frozenset((v,)))

    blocks.sort(key=lambda b: tuple(sorted(b)))
    return BlockDecomposition(tuple(blocks), frozenset(cuts))


def _mcs_order(g: Graph, verts: Sequence[int]) -> list[int]:
    """Maximum-cardinality search ordering (last-to-first elimination)."""
    vset = set(verts)
    weight = {v: 0 for v in verts}
    order: list[int] = []
    remaining = set(verts)
    while remaining:
        v = max(sorted(remaining), key=lambda u: weight[u])
        order.append(v)
        remaining.remove(v)
        for w in g.neighbors(v):
            if w in vset and w in remaining:
                weight[w] += 1
    return order


def is_chordal(g: Graph, within: Iterable[int] | None = None) -> bool:
    """Chordality test: MCS ordering plus the standard parent check."""
    verts = sorted(within) if within is not None else list(range(g.n))
    vset = set(verts)
    order = _mcs_order(g, verts)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [w for w in g.neighbors(v) if w in vset and pos[w] < pos[v]]
        if not earlier:
            continue
        parent = max(earlier, key=lambda w: pos[w])
        rest = {w for w in earlier if w != parent}
        if not rest <= set(g.neighbors(parent)):
            return False
    return True


def find_chordless_cycle(
    g: Graph, within: Iterable[int] | None = None
) -> list[int] | None:
    """Slow oracle: search for an induced cycle of length >= 4.

    Extends induced paths by brute force; intended only for small test
    graphs, as a cross-check against ``is_chordal``.
    """
    verts = sorted(within) if within is not None else list(range(g.n))
    vset = set(verts)

    def extend(path: list[int]) -> list[int] | None:
        head = path[-1]
        start = path[0]
        for w in g.neighbors(head):
            if w not in vset or w in path:
                continue
            # w must be non-adjacent to all of path except the head,
            # with the start allowed once the cycle is long enough.
            closes = g.has_edge(w, start)
            ok = True
            for p in path[1:-1]:
                if g.has_edge(w, p):
                    ok = False
                    break
            if not ok:
                continue
            if closes and len(path) >= 3:
                return path + [w]
            if not closes:
                found = extend(path + [w])
                if found is not None:
                    return found
        return None

    for a in verts:
        for b in g.neighbors(a):
            if b not in vset or b < a:
                continue
            cyc = extend([a, b])
            if cyc is not None:
                return cyc
    return None


@dataclass(frozen=True)
class BoundariedGraph:
    """A view (host, vertices, boundary) of a graph with boundary S.

    ``vertices`` may be any subset of the host's vertex set; all derived
    structure (components, blocks, boundary grouping) is taken in the
    induced subgraph.
    """

    host: Graph
    vertices: frozenset[int]
    boundary: frozenset[int]

    def __post_init__(self) -> None:
        if not self.boundary <= self.vertices:
            raise InvalidInput("boundary must be a subset of the vertex set")
        if self.vertices and max(self.vertices) >= self.host.n:
            raise InvalidInput("vertex set exceeds host graph")

    @classmethod
    def whole(cls, g: Graph, boundary: Iterable[int]) -> "BoundariedGraph":
        return cls(g, frozenset(range(g.n)), frozenset(boundary))

    def edges(self) -> frozenset[tuple[int, int]]:
        return induced_edges(self.host, self.vertices)

    def boundary_edges(self) -> frozenset[tuple[int, int]]:
        return induced_edges(self.host, self.boundary)

    def components(self) -> list[frozenset[int]]:
        return connected_components(self.host, self.vertices)

    def boundary_components(self) -> list[frozenset[int]]:
        return connected_components(self.host, self.boundary)


def s_blocks(bg: BoundariedGraph) -> list[frozenset[int]]:
    """Blocks of the induced graph that contain an edge inside the boundary."""
    bd = biconnected_blocks(bg.host, bg.vertices)
    bedges = bg.boundary_edges()
    out = []
    for blk in bd.blocks:
        if any(u in blk and v in blk for (u, v) in bedges):
            out.append(blk)
    return out


def nontrivial_boundary_blocks(bg: BoundariedGraph) -> list[frozenset[int]]:
    """Non-trivial blocks of G[S], sorted canonically."""
    bd = biconnected_blocks(bg.host, bg.boundary)
    return [b for b in bd.blocks if len(b) >= 2]


def sum_boundaried(a: BoundariedGraph, b: BoundariedGraph) -> Graph:
    """Glue two compatible boundaried graphs along their shared boundary.

    Compatibility is realized by shared vertex ids: the boundaries must be
    identical sets with identical induced edges, and the non-boundary
    vertex sets must be disjoint.  The result is a dense graph on
    0..max(id); ids outside either vertex set come out isolated.
    """
    if a.boundary != b.boundary:
        raise IncompatibleBoundary("boundary sets differ")
    if a.boundary_edges() != b.boundary_edges():
        raise IncompatibleBoundary("induced boundary subgraphs differ")
    if (a.vertices - a.boundary) & (b.vertices - b.boundary):
        raise IncompatibleBoundary("non-boundary vertex sets overlap")
    union = a.vertices | b.vertices
    n = (max(union) + 1) if union else 0
    return Graph(n, sorted(a.edges() | b.edges()))


def aux_partition(bg: BoundariedGraph) -> Partition:
    """Group boundary components by the component of G containing them.

    Ground-set index i refers to the i-th boundary component in canonical
    order (components sorted by minimum vertex).
    """
    bcomps = bg.boundary_components()
    comps = bg.components()
    owner: dict[int, int] = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            owner[v] = ci
    groups: dict[int, list[int]] = {}
    for bi, bc in enumerate(bcomps):
        groups.setdefault(owner[min(bc)], []).append(bi)
    return Partition.from_parts(len(bcomps), groups.values())


def read_gr(text: str) -> Graph:
    """Parse a PACE-style ``.gr`` file (1-based vertices, ``c`` comments)."""
    n = None
    m_expected = None
    edges: list[tuple[int, int]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "tw":
                raise InvalidInput(f"bad problem line: {line!r}")
            n = int(parts[2])
            m_expected = int(parts[3])
            continue
        u, v = line.split()
        edges.append((int(u) - 1, int(v) - 1))
    if n is None:
        raise InvalidInput("missing 'p tw n m' line")
    if m_expected is not None and m_expected != len(edges):
        raise InvalidInput(
            f"edge count mismatch: header says {m_expected}, found {len(edges)}"
        )
    return Graph(n, edges)


def write_gr(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.m}"]
    for u, v in sorted(g.edges()):
        lines.append(f"{u + 1} {v + 1}")
    return "\n".join(lines) + "\n"
