"""Tree decompositions: validation, nice form, and small-scale construction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInput, TooLarge
from .graph import Graph


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree over decomposition nodes plus one bag per node."""

    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        for lst in adj:
            lst.sort()
        return adj


@dataclass(frozen=True)
class Violation:
    condition: str
    detail: str


def validate_td(g: Graph, td: TreeDecomposition) -> Violation | None:
    """Return None when valid, else a report naming the first broken condition."""
    nn = td.num_nodes
    if nn == 0:
        return Violation("shape", "decomposition has no nodes")
    for a, b in td.tree_edges:
        if not (0 <= a < nn and 0 <= b < nn):
            return Violation("shape", f"tree edge ({a},{b}) out of range")
    # the decomposition tree must be a tree
    if len(td.tree_edges) != nn - 1:
        return Violation("shape", "decomposition graph is not a tree (edge count)")
    adj = td.neighbors()
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != nn:
        return Violation("shape", "decomposition graph is not connected")

    covered: set[int] = set()
    for bag in td.bags:
        for v in bag:
            if not (0 <= v < g.n):
                return Violation("cover", f"bag vertex {v} outside the graph")
        covered |= bag
    if covered != set(range(g.n)):
        missing = sorted(set(range(g.n)) - covered)
        return Violation("cover", f"vertices {missing} appear in no bag")

    for u, v in sorted(g.edges()):
        if not any(u in bag and v in bag for bag in td.bags):
            return Violation("edge", f"edge ({u},{v}) is in no bag")

    for v in range(g.n):
        nodes = [t for t in range(nn) if v in td.bags[t]]
        if not nodes:
            continue
        nodeset = set(nodes)
        comp = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in nodeset and w not in comp:
                    comp.add(w)
                    stack.append(w)
        if comp != nodeset:
            return Violation(
                "connectivity", f"occurrence nodes of vertex {v} are disconnected"
            )
    return None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Rooted decomposition with leaf/introduce/forget/join nodes only.

    Node 0..N-1 with per-node kind, acted vertex (introduce/forget),
    bag, and children; the root bag is empty.
    """

    kinds: tuple[str, ...]
    acted: tuple[int | None, ...]
    bags: tuple[tuple[int, ...], ...]
    children: tuple[tuple[int, ...], ...]
    root: int

    @property
    def num_nodes(self) -> int:
        return len(self.kinds)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1

    def postorder(self) -> list[int]:
        order: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                order.append(node)
                continue
            stack.append((node, True))
            for c in reversed(self.children[node]):
                stack.append((c, False))
        return order

    def to_tree_decomposition(self) -> TreeDecomposition:
        edges = []
        for u in range(self.num_nodes):
            for c in self.children[u]:
                edges.append((min(u, c), max(u, c)))
        return TreeDecomposition(
            tuple(frozenset(b) for b in self.bags), tuple(sorted(edges))
        )


class _NiceBuilder:
    def __init__(self) -> None:
        self.kinds: list[str] = []
        self.acted: list[int | None] = []
        self.bags: list[tuple[int, ...]] = []
        self.children: list[tuple[int, ...]] = []

    def add(
        self,
        kind: str,
        bag: Iterable[int],
        children: Sequence[int] = (),
        acted: int | None = None,
    ) -> int:
        self.kinds.append(kind)
        self.acted.append(acted)
        self.bags.append(tuple(sorted(bag)))
        self.children.append(tuple(children))
        return len(self.kinds) - 1

    def chain_to(self, node: int, have: set[int], want: set[int]) -> int:
        """Forget then introduce, one vertex at a time, from have to want."""
        cur = set(have)
        for v in sorted(have - want):
            cur.remove(v)
            node = self.add("forget", cur, (node,), acted=v)
        for v in sorted(want - have):
            cur.add(v)
            node = self.add("introduce", cur, (node,), acted=v)
        return node

    def fresh_leaf_chain(self, want: set[int]) -> int:
        node = self.add("leaf", ())
        return self.chain_to(node, set(), want)


def to_nice(td: TreeDecomposition, g: Graph) -> NiceTreeDecomposition:
    """Convert a valid decomposition to nice form with an empty root bag.

    Width is preserved; join nodes are created by binarizing children
    left-to-right in child-id order, and every original bag appears as
    the bag of its representative node.
    """
    bad = validate_td(g, td)
    if bad is not None:
        raise InvalidInput(f"invalid tree decomposition: {bad.condition}: {bad.detail}")

    b = _NiceBuilder()
    adj = td.neighbors()
    root = 0

    # Iterative post-order over the rooted decomposition tree.
    order: list[tuple[int, int | None]] = []
    stack: list[tuple[int, int | None]] = [(root, None)]
    while stack:
        node, parent = stack.pop()
        order.append((node, parent))
        for c in adj[node]:
            if c != parent:
                stack.append((c, node))
    rep: dict[int, int] = {}
    for node, parent in reversed(order):
        bag = set(td.bags[node])
        kids = [c for c in adj[node] if c != parent]
        if not kids:
            rep[node] = b.fresh_leaf_chain(bag)
            continue
        tops = [b.chain_to(rep[c], set(td.bags[c]), bag) for c in sorted(kids)]
        cur = tops[0]
        for nxt in tops[1:]:
            cur = b.add("join", bag, (cur, nxt))
        rep[node] = cur

    top = b.chain_to(rep[root], set(td.bags[root]), set())
    nice = NiceTreeDecomposition(
        tuple(b.kinds),
        tuple(b.acted),
        tuple(b.bags),
        tuple(b.children),
        root=top,
    )
    bad = validate_td(g, nice.to_tree_decomposition())
    if bad is not None:  # pragma: no cover - construction is total on valid input
        raise InvalidInput(f"nice conversion broke validity: {bad.detail}")
    return nice


def _bags_from_elimination(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Standard fill-in bag construction along an elimination ordering."""
    n = g.n
    if n == 0:
        return TreeDecomposition((frozenset(),), ())
    pos = {v: i for i, v in enumerate(order)}
    adj: list[set[int]] = [set(g.neighbors(v)) for v in range(n)]
    bags: list[frozenset[int]] = [frozenset()] * n
    for v in order:
        later = {w for w in adj[v] if pos[w] > pos[v]}
        bags[pos[v]] = frozenset(later | {v})
        for a in later:
            adj[a].discard(v)
            for bb in later:
                if a != bb:
                    adj[a].add(bb)
    edges = []
    for v in order:
        later = [w for w in bags[pos[v]] if w != v]
        if later:
            nxt = min(later, key=lambda w: pos[w])
            edges.append((min(pos[v], pos[nxt]), max(pos[v], pos[nxt])))
    # Disconnected graphs: chain the component roots so the node graph is a tree.
    node_seen: set[int] = set()
    roots = []
    nadj: list[list[int]] = [[] for _ in range(n)]
    for a, bb in edges:
        nadj[a].append(bb)
        nadj[bb].append(a)
    for t in range(n):
        if t in node_seen:
            continue
        roots.append(t)
        stack = [t]
        node_seen.add(t)
        while stack:
            u = stack.pop()
            for w in nadj[u]:
                if w not in node_seen:
                    node_seen.add(w)
                    stack.append(w)
    for a, bb in zip(roots, roots[1:]):
        edges.append((min(a, bb), max(a, bb)))
    return TreeDecomposition(tuple(bags), tuple(sorted(edges)))


def heuristic_td(g: Graph) -> TreeDecomposition:
    """Min-fill elimination ordering; ties broken by lowest vertex id."""
    n = g.n
    if n == 0:
        return TreeDecomposition((frozenset(),), ())
    adj: list[set[int]] = [set(g.neighbors(v)) for v in range(n)]
    remaining = set(range(n))
    order: list[int] = []
    while remaining:
        best_v = -1
        best_fill = None
        for v in sorted(remaining):
            nbrs = [w for w in adj[v] if w in remaining]
            fill = 0
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    if nbrs[j] not in adj[nbrs[i]]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best_fill = fill
                best_v = v
        v = best_v
        nbrs = [w for w in adj[v] if w in remaining]
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                adj[nbrs[i]].add(nbrs[j])
                adj[nbrs[j]].add(nbrs[i])
        remaining.remove(v)
        order.append(v)
    return _bags_from_elimination(g, order)


def exact_td_small(g: Graph, limit: int = 14) -> TreeDecomposition:
    """Minimum-width decomposition by DP over elimination orderings.

    Memoizes, for every vertex subset S, the best max-elimination-degree
    achievable when S is eliminated first.  Exponential in n; guarded.
    """
    n = g.n
    if n > limit:
        raise TooLarge(f"exact treewidth capped at {limit} vertices, got {n}")
    if n == 0:
        return TreeDecomposition((frozenset(),), ())

    full = (1 << n) - 1
    nbr_mask = [0] * n
    for v in range(n):
        for w in g.neighbors(v):
            nbr_mask[v] |= 1 << w

    def elim_degree(before: int, v: int) -> int:
        # vertices outside `before`+v reachable from v through `before`
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            u = stack.pop()
            m = nbr_mask[u] & ~seen
            seen |= m
            while m:
                low = m & (-m)
                w = low.bit_length() - 1
                m ^= low
                if before >> w & 1:
                    stack.append(w)
                else:
                    out |= low
        return bin(out).count("1")

    best: dict[int, int] = {0: -1}
    choice: dict[int, int] = {}

    def solve(s: int) -> int:
        got = best.get(s)
        if got is not None:
            return got
        res = None
        pick = -1
        m = s
        while m:
            low = m & (-m)
            v = low.bit_length() - 1
            m ^= low
            sub = solve(s ^ low)
            deg = elim_degree(s ^ low, v)
            val = max(sub, deg)
            if res is None or val < res:
                res = val
                pick = v
        best[s] = res if res is not None else -1
        choice[s] = pick
        return best[s]

    solve(full)

    order: list[int] = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()  # choices were recovered from the last prefix inward
    return _bags_from_elimination(g, order)


def read_td(text: str) -> TreeDecomposition:
    """Parse a PACE-style ``.td`` file (1-based bags and node ids)."""
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    header = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("s"):
            parts = line.split()
            if len(parts) != 5 or parts[1] != "td":
                raise InvalidInput(f"bad solution line: {line!r}")
            header = (int(parts[2]), int(parts[3]), int(parts[4]))
            continue
        if line.startswith("b"):
            parts = line.split()
            bags[int(parts[1]) - 1] = frozenset(int(x) - 1 for x in parts[2:])
            continue
        a, b = line.split()
        edges.append((int(a) - 1, int(b) - 1))
    if header is None:
        raise InvalidInput("missing 's td' line")
    nbags = header[0]
    if set(bags) != set(range(nbags)):
        raise InvalidInput("bag ids must be 1..#bags")
    return TreeDecomposition(
        tuple(bags[i] for i in range(nbags)),
        tuple((min(a, b), max(a, b)) for a, b in edges),
    )


def write_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {td.num_nodes} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags):
        lines.append("b " + " ".join([str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    for a, b in sorted(td.tree_edges):
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"
