"""Shared table-driven dynamic program over a nice tree decomposition.

Both deletion problems run on the same engine; the ``mode`` switch picks
the unit of shape-tracking (non-trivial blocks of the bag graph, or all
of its components).  A table entry is keyed by

    (X, L, i, gh)

where X is the deleted bag subset, L the labeling of the rest, i the
number of vertices already deleted below the bag, and gh one hypothesis
per unit: a set of candidate final patterns plus the labels of outside
neighbors already attached.  The value is the family of partitions of
the bag components realized by some partial solution, kept small by
rank-based reduction after every node.

Hypothesis slots hold pattern *sets* rather than single patterns: a
state with slot S stands for the union of the single-pattern states over
S, which all carry the same family until some transition distinguishes
them.  Transitions intersect and filter the sets, split them when an
outcome (a propagated neighbor-label set) differs between candidates,
and collapse them to singletons where two units become tied to one
final shape (several blocks or components sinking together).  All
checks are per-unit and independent of the stored partitions, which is
what makes the representative-set reduction valid.

States are additionally canonicalized under permutations of the label
alphabet, which acts on L, patterns, and h sets but never on partitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .decomposition import NiceTreeDecomposition
from .families import Pattern
from .graph import Graph, biconnected_blocks, connected_components
from .partitions import Partition, inc_is_forest, uplus
from .repset import rep_partitions

StateKey = tuple[tuple[int, ...], tuple[int, ...], int, tuple]
GhEntry = tuple[tuple[int, ...], int, int]  # (unit vertices, pattern-set id, h mask)
Witness = tuple[frozenset[int], tuple[tuple[int, int], ...]]


@dataclass
class SolveResult:
    decision: bool
    witness: frozenset[int] | None
    stats: dict
    tables: list[dict] | None = None


@dataclass(frozen=True)
class _View:
    keep: tuple[int, ...]
    comps: tuple[tuple[int, ...], ...]
    comp_of: dict[int, int] = field(hash=False, compare=False)
    units: tuple[tuple[int, ...], ...] = ()
    unit_edges: tuple[tuple[tuple[int, int], ...], ...] = ()


class Engine:
    def __init__(
        self,
        g: Graph,
        d: int,
        k: int,
        patterns: Sequence[Pattern],
        ntd: NiceTreeDecomposition,
        mode: str,
        witness: bool = False,
        canonize: bool | None = None,
    ):
        assert mode in ("block", "component")
        self.g = g
        self.d = d
        self.k = k
        self.mode = mode
        self.ntd = ntd
        self.track_witness = witness
        self.patterns = tuple(patterns)
        self.pat_index = {p: i for i, p in enumerate(self.patterns)}

        # per-pattern adjacency masks: bit l-1 stands for label l
        self.pat_adj: list[dict[int, int]] = []
        for p in self.patterns:
            adj = {l: 0 for l in p.labels}
            for a, b in p.edges:
                adj[a] |= 1 << (b - 1)
                adj[b] |= 1 << (a - 1)
            self.pat_adj.append(adj)

        # interned pattern sets (hypothesis slots)
        self._sets: list[frozenset[int]] = []
        self._set_ids: dict[frozenset[int], int] = {}

        self.canonize = canonize if canonize is not None else d <= 4
        if self.canonize:
            self._sigmas = [tuple(s) for s in permutations(range(1, d + 1))]
            self._pat_sigma: list[list[int]] = []
            for s in self._sigmas:
                smap = {i + 1: s[i] for i in range(d)}
                self._pat_sigma.append(
                    [self.pat_index[p.relabel(smap)] for p in self.patterns]
                )
            self._mask_sigma = [
                [self._permute_mask(s, m) for m in range(1 << d)] for s in self._sigmas
            ]
            self._set_sigma: dict[tuple[int, int], int] = {}
        self._canon_memo: dict[tuple, tuple] = {}
        self._compat_memo: dict[tuple, int] = {}
        self._view_memo: dict[tuple[int, ...], _View] = {}
        self._adjset_memo: dict[tuple[int, int], int] = {}
        self.stats = {"states": 0, "retained": 0, "nodes": ntd.num_nodes}

    # ------------------------------------------------------------------
    # pattern-set interning

    def intern(self, pats: Iterable[int]) -> int:
        fs = frozenset(pats)
        got = self._set_ids.get(fs)
        if got is not None:
            return got
        sid = len(self._sets)
        self._sets.append(fs)
        self._set_ids[fs] = sid
        return sid

    def set_of(self, sid: int) -> frozenset[int]:
        return self._sets[sid]

    def _sigma_set(self, si: int, sid: int) -> int:
        got = self._set_sigma.get((si, sid))
        if got is not None:
            return got
        table = self._pat_sigma[si]
        res = self.intern(table[q] for q in self._sets[sid])
        self._set_sigma[(si, sid)] = res
        return res

    # ------------------------------------------------------------------
    # small helpers

    @staticmethod
    def _permute_mask(sigma: tuple[int, ...], mask: int) -> int:
        out = 0
        i = 0
        m = mask
        while m:
            if m & 1:
                out |= 1 << (sigma[i] - 1)
            m >>= 1
            i += 1
        return out

    def view(self, keep: Iterable[int]) -> _View:
        key = tuple(sorted(keep))
        got = self._view_memo.get(key)
        if got is not None:
            return got
        comps = tuple(tuple(sorted(c)) for c in connected_components(self.g, key))
        comp_of: dict[int, int] = {}
        for ci, c in enumerate(comps):
            for v in c:
                comp_of[v] = ci
        if self.mode == "block":
            units = tuple(
                tuple(sorted(b))
                for b in biconnected_blocks(self.g, key).blocks
                if len(b) >= 2
            )
        else:
            units = comps
        unit_edges = tuple(
            tuple(
                (u, w)
                for u in unit
                for w in self.g.neighbors(u)
                if u < w and w in unit
            )
            for unit in units
        )
        view = _View(key, comps, comp_of, units, unit_edges)
        self._view_memo[key] = view
        return view

    def compat_set(
        self,
        unit: tuple[int, ...],
        edges: Sequence[tuple[int, int]],
        lab: Mapping[int, int],
    ) -> int | None:
        """Interned set of patterns hosting the unit's labeled shape, or None."""
        labs = tuple(lab[u] for u in unit)
        if len(set(labs)) != len(labs):
            return None
        mapped = frozenset((min(lab[a], lab[b]), max(lab[a], lab[b])) for a, b in edges)
        key = (frozenset(labs), mapped)
        got = self._compat_memo.get(key)
        if got is not None:
            return got if got >= 0 else None
        labset = set(labs)
        out = [
            pi
            for pi, p in enumerate(self.patterns)
            if labset <= p.labels and p.induced(labset) == mapped
        ]
        if not out:
            self._compat_memo[key] = -1
            return None
        sid = self.intern(out)
        self._compat_memo[key] = sid
        return sid

    def adj_union(self, q: int, mask: int) -> int:
        """Union of pattern neighborhoods over the labels in the mask."""
        got = self._adjset_memo.get((q, mask))
        if got is not None:
            return got
        out = 0
        m = mask
        adj = self.pat_adj[q]
        while m:
            low = m & (-m)
            out |= adj.get(low.bit_length(), 0)
            m ^= low
        self._adjset_memo[(q, mask)] = out
        return out

    # ------------------------------------------------------------------
    # canonization

    def canon(
        self, lkey: tuple[int, ...], gh: tuple[GhEntry, ...]
    ) -> tuple[tuple[int, ...], tuple[GhEntry, ...], int]:
        """Canonical (L, gh) under label permutations; returns the sigma index."""
        if not self.canonize:
            return lkey, gh, -1
        memo_key = (lkey, gh)
        got = self._canon_memo.get(memo_key)
        if got is not None:
            return got
        best = None
        best_si = 0
        for si in range(len(self._sigmas)):
            sigma = self._sigmas[si]
            l2 = tuple(sigma[l - 1] for l in lkey)
            gh2 = tuple(
                (unit, self._sigma_set(si, sid), self._mask_sigma[si][hm])
                for (unit, sid, hm) in gh
            )
            cand = (l2, gh2)
            if best is None or cand < best:
                best = cand
                best_si = si
        res = (best[0], best[1], best_si)
        self._canon_memo[memo_key] = res
        return res

    def _apply_sigma_witness(self, si: int, wit: Witness | None) -> Witness | None:
        if wit is None or si < 0:
            return wit
        sigma = self._sigmas[si]
        s, labs = wit
        return (s, tuple((v, sigma[l - 1]) for v, l in labs))

    # ------------------------------------------------------------------
    # table plumbing

    def insert(
        self,
        table: dict,
        xk: tuple[int, ...],
        lkey: tuple[int, ...],
        i: int,
        gh: tuple[GhEntry, ...],
        part: Partition,
        wit: Witness | None,
    ) -> None:
        lc, ghc, si = self.canon(lkey, gh)
        key = (xk, lc, i, ghc)
        fam = table.get(key)
        if fam is None:
            fam = {}
            table[key] = fam
        if part not in fam:
            fam[part] = (
                self._apply_sigma_witness(si, wit) if self.track_witness else None
            )

    @staticmethod
    def _state_order(key: StateKey):
        # deletion sets by increasing size, then lexicographic everything
        return (len(key[0]), key)

    def reduce_table(self, table: dict) -> None:
        for key in sorted(table, key=self._state_order):
            fam = table[key]
            if len(fam) <= 1:
                continue
            m = next(iter(fam)).m
            kept = rep_partitions(m, list(fam))
            if len(kept) != len(fam):
                table[key] = {p: fam[p] for p in kept}
        self.stats["states"] += len(table)
        self.stats["retained"] += sum(len(f) for f in table.values())

    # ------------------------------------------------------------------
    # main loop

    _debug_keep_tables = False

    def run(self) -> SolveResult:
        ntd = self.ntd
        tables: dict[int, dict] = {}
        keep_tables = self._debug_keep_tables
        for node in ntd.postorder():
            kind = ntd.kinds[node]
            bag = ntd.bags[node]
            if kind == "leaf":
                table = self._leaf_table()
            elif kind == "introduce":
                (child,) = ntd.children[node]
                table = self._introduce(bag, ntd.acted[node], tables[child])
                if not keep_tables:
                    del tables[child]
            elif kind == "forget":
                (child,) = ntd.children[node]
                table = self._forget(bag, ntd.acted[node], tables[child])
                if not keep_tables:
                    del tables[child]
            elif kind == "join":
                c1, c2 = ntd.children[node]
                table = self._join(bag, tables[c1], tables[c2])
                if not keep_tables:
                    del tables[c1]
                    del tables[c2]
            else:  # pragma: no cover
                raise AssertionError(kind)
            self.reduce_table(table)
            tables[node] = table

        root_table = tables[self.ntd.root]
        decision = False
        wit: frozenset[int] | None = None
        for i in range(self.k + 1):
            fam = root_table.get(((), (), i, ()))
            if fam:
                decision = True
                if self.track_witness:
                    first = next(iter(fam.values()))
                    wit = first[0] if first is not None else None
                break
        return SolveResult(
            decision,
            wit,
            dict(self.stats),
            [tables[n] for n in self.ntd.postorder()] if keep_tables else None,
        )

    # ------------------------------------------------------------------
    # leaf

    def _leaf_table(self) -> dict:
        table: dict = {}
        empty = Partition(0, ())
        wit: Witness | None = (frozenset(), ()) if self.track_witness else None
        self.insert(table, (), (), 0, (), empty, wit)
        return table

    # ------------------------------------------------------------------
    # introduce

    def _introduce(self, bag: tuple[int, ...], v: int, child: dict) -> dict:
        table: dict = {}
        ctx_cache: dict[tuple[int, ...], dict] = {}
        for key in sorted(child, key=self._state_order):
            xk, lk, i, gh = key
            fam = child[key]
            if not fam:
                continue
            # v joins the deleted set: nothing else changes
            xk_del = tuple(sorted(xk + (v,)))
            for part, wit in fam.items():
                self.insert(table, xk_del, lk, i, gh, part, wit)
            # v survives with some label
            ctx = ctx_cache.get(xk)
            if ctx is None:
                ctx = self._intro_ctx(bag, v, xk)
                ctx_cache[xk] = ctx
            self._introduce_state(table, ctx, key, fam)
        return table

    def _intro_ctx(self, bag: tuple[int, ...], v: int, xk: tuple[int, ...]) -> dict:
        xs = set(xk)
        keep_parent = tuple(u for u in bag if u not in xs)
        keep_child = tuple(u for u in keep_parent if u != v)
        pv = self.view(keep_parent)
        cv = self.view(keep_child)
        comp_map = tuple(pv.comp_of[c[0]] for c in cv.comps)
        vnew = pv.comp_of[v]
        vnbrs = tuple(u for u in self.g.neighbors(v) if u in set(keep_child))
        return {
            "pv": pv,
            "cv": cv,
            "v": v,
            "vpos": pv.keep.index(v),
            "vnbrs": vnbrs,
            "comp_map": comp_map,
            "vnew": vnew,
            "vadj_old": tuple(sorted({cv.comp_of[u] for u in vnbrs})),
            "part_memo": {},
        }

    def _intro_partition(self, ctx: dict, part: Partition) -> Partition | None:
        """Push a child partition through the introduce; None when rejected."""
        memo = ctx["part_memo"]
        got = memo.get(part)
        if got is not None:
            return got if got is not False else None
        comp_map = ctx["comp_map"]
        vnew = ctx["vnew"]
        new_parts: list[set[int]] = []
        merged: set[int] = {vnew}
        ok = True
        for p in part.parts:
            hits = sum(1 for o in p if comp_map[o] == vnew)
            if hits > 1:
                # v touches two components already linked below: a cycle
                ok = False
                break
            images = {comp_map[o] for o in p}
            if hits == 1:
                merged |= images
            else:
                new_parts.append(set(images))
        if not ok:
            memo[part] = False
            return None
        new_parts.append(merged)
        res = Partition.from_parts(len(ctx["pv"].comps), new_parts)
        memo[part] = res
        return res

    def _introduce_state(self, table: dict, ctx: dict, key: StateKey, fam: dict) -> None:
        raise NotImplementedError

    # ------------------------------------------------------------------
    # forget

    def _forget(self, bag: tuple[int, ...], v: int, child: dict) -> dict:
        table: dict = {}
        ctx_cache: dict[tuple[int, ...], dict] = {}
        for key in sorted(child, key=self._state_order):
            xk, lk, i, gh = key
            fam = child[key]
            if not fam:
                continue
            if v in xk:
                if i + 1 <= self.k:
                    xk2 = tuple(u for u in xk if u != v)
                    for part, wit in fam.items():
                        w2 = wit
                        if wit is not None:
                            w2 = (wit[0] | {v}, wit[1])
                        self.insert(table, xk2, lk, i + 1, gh, part, w2)
                continue
            ctx = ctx_cache.get(xk)
            if ctx is None:
                ctx = self._forget_ctx(bag, v, xk)
                ctx_cache[xk] = ctx
            self._forget_state(table, ctx, key, fam)
        return table

    def _forget_ctx(self, bag: tuple[int, ...], v: int, xk: tuple[int, ...]) -> dict:
        xs = set(xk)
        keep_parent = tuple(u for u in bag if u not in xs)
        keep_child = tuple(sorted(keep_parent + (v,)))
        cv = self.view(keep_child)
        pv = self.view(keep_parent)
        split: list[list[int]] = [[] for _ in cv.comps]
        for pidx, c in enumerate(pv.comps):
            split[cv.comp_of[c[0]]].append(pidx)
        return {
            "cv": cv,
            "pv": pv,
            "v": v,
            "vpos": cv.keep.index(v),
            "ucomp": cv.comp_of[v],
            "split": split,
            "part_memo": {},
        }

    def _forget_partition(self, ctx: dict, part: Partition) -> Partition:
        memo = ctx["part_memo"]
        got = memo.get(part)
        if got is not None:
            return got
        split = ctx["split"]
        new_parts = []
        for p in part.parts:
            np: list[int] = []
            for o in p:
                np.extend(split[o])
            if np:
                new_parts.append(np)
        res = Partition.from_parts(len(ctx["pv"].comps), new_parts)
        memo[part] = res
        return res

    def _forget_state(self, table: dict, ctx: dict, key: StateKey, fam: dict) -> None:
        raise NotImplementedError

    def _sink_unit_branches(
        self,
        unit: tuple[int, ...],
        sid: int,
        hm: int,
        lv: int,
        pieces: Sequence[tuple[int, ...]],
        labs: Mapping[int, int],
    ) -> list[list[GhEntry]] | None:
        """Hypothesis branches for a unit losing v to the region below.

        Every remaining piece inherits the sunk unit's pattern and learns
        that a vertex labeled lv sits next to it, together with whichever
        previously attached labels its pattern keeps adjacent.  With one
        piece, candidate patterns inducing the same attached-label set
        can stay pooled; several pieces are tied to one final shape, so
        the pool must split into single-pattern branches.
        """
        cands = self.set_of(sid)
        piece_masks = []
        for piece in pieces:
            amask = 0
            for u in piece:
                amask |= 1 << (labs[u] - 1)
            piece_masks.append(amask)
        lvbit = 1 << (lv - 1)
        if len(pieces) == 1:
            amask = piece_masks[0]
            groups: dict[int, list[int]] = {}
            for q in sorted(cands):
                hv = lvbit | (self.adj_union(q, amask) & ~amask & hm)
                groups.setdefault(hv, []).append(q)
            return [
                [(pieces[0], self.intern(qs), hv)] for hv, qs in sorted(groups.items())
            ]
        out = []
        for q in sorted(cands):
            opt: list[GhEntry] = []
            qid = self.intern((q,))
            for piece, amask in zip(pieces, piece_masks):
                hv = lvbit | (self.adj_union(q, amask) & ~amask & hm)
                opt.append((piece, qid, hv))
            out.append(opt)
        return out

    # ------------------------------------------------------------------
    # join

    def _join(self, bag: tuple[int, ...], left: dict, right: dict) -> dict:
        table: dict = {}
        # Index the left child under every label permutation so states that
        # only differ by the label alphabet can still pair up.
        index: dict[tuple, list[tuple[int, StateKey, tuple[GhEntry, ...]]]] = {}
        use_sigma = self.canonize
        nsig = len(self._sigmas) if use_sigma else 1
        for key in sorted(left, key=self._state_order):
            if not left[key]:
                continue
            xk, lk, i, gh = key
            for si in range(nsig):
                if use_sigma:
                    sigma = self._sigmas[si]
                    l2 = tuple(sigma[l - 1] for l in lk)
                    gh2 = tuple(
                        (unit, self._sigma_set(si, sid), self._mask_sigma[si][hm])
                        for (unit, sid, hm) in gh
                    )
                else:
                    l2, gh2 = lk, gh
                index.setdefault((xk, l2), []).append((si, key, gh2))
        for rkey in sorted(right, key=self._state_order):
            rxk, rlk, ri, rgh = rkey
            rfam = right[rkey]
            if not rfam:
                continue
            for si, lkey, lgh in index.get((rxk, rlk), ()):
                if lkey[2] + ri > self.k:
                    continue
                self._join_states(table, bag, si, lkey, lgh, rkey, left[lkey], rfam)
        return table

    def _join_gh(
        self, lgh: tuple[GhEntry, ...], rgh: tuple[GhEntry, ...]
    ) -> tuple[GhEntry, ...] | None:
        """Per-unit combination of two sides' hypotheses, or None when dead."""
        entries: list[GhEntry] = []
        for (u1, s1, h1), (u2, s2, h2) in zip(lgh, rgh):
            assert u1 == u2
            if h1 & h2:
                return None
            common = self.set_of(s1) & self.set_of(s2)
            if not common:
                return None
            if h1 and h2:
                common = {q for q in common if not (self.adj_union(q, h1) & h2)}
                if not common:
                    return None
            entries.append((u1, self.intern(common), h1 | h2))
        return tuple(entries)

    def _join_states(
        self,
        table: dict,
        bag: tuple[int, ...],
        si: int,
        lkey: StateKey,
        lgh: tuple[GhEntry, ...],
        rkey: StateKey,
        lfam: dict,
        rfam: dict,
    ) -> None:
        rxk, rlk, ri, _ = rkey
        gh_p = self._join_gh(lgh, rkey[3])
        if gh_p is None:
            return
        m = len(self.view(tuple(u for u in bag if u not in set(rxk))).comps)
        li = lkey[2]
        for p1, w1 in lfam.items():
            for p2, w2 in rfam.items():
                if not inc_is_forest(m, [p1, p2]):
                    continue
                self.insert(
                    table,
                    rxk,
                    rlk,
                    li + ri,
                    gh_p,
                    uplus(p1, p2),
                    self._merge_witness(si, w1, w2),
                )

    def _sigma_witness(self, si: int, wit: Witness | None) -> Witness | None:
        if wit is None or not self.canonize:
            return wit
        sigma = self._sigmas[si]
        s, labs = wit
        return (s, tuple((v, sigma[l - 1]) for v, l in labs))

    def _merge_witness(
        self, si: int, lw: Witness | None, rw: Witness | None
    ) -> Witness | None:
        if not self.track_witness or lw is None or rw is None:
            return None
        lw = self._sigma_witness(si, lw)
        merged = dict(lw[1])
        merged.update(dict(rw[1]))
        return (lw[0] | rw[0], tuple(sorted(merged.items())))

    @staticmethod
    def _witness_with_label(wit: Witness | None, v: int, lv: int) -> Witness | None:
        if wit is None:
            return None
        merged = dict(wit[1])
        merged[v] = lv
        return (wit[0], tuple(sorted(merged.items())))


class BlockEngine(Engine):
    """Tracks one hypothesis per non-trivial block of the bag graph."""

    def __init__(self, g, d, k, patterns, ntd, witness=False, canonize=None):
        super().__init__(g, d, k, patterns, ntd, "block", witness, canonize)

    def _introduce_state(self, table: dict, ctx: dict, key: StateKey, fam: dict) -> None:
        xk, lk, i, gh = key
        pv: _View = ctx["pv"]
        v = ctx["v"]
        vpos = ctx["vpos"]
        if "_vunits" not in ctx:
            cv: _View = ctx["cv"]
            vunits = []
            absorbed: set[tuple[int, ...]] = set()
            for unit, edges in zip(pv.units, pv.unit_edges):
                if v not in unit:
                    continue
                uset = set(unit)
                subs = [cu for cu in cv.units if set(cu) <= uset]
                absorbed.update(subs)
                vunits.append((unit, edges, subs))
            ctx["_vunits"] = vunits
            ctx["_absorbed"] = absorbed
        vunits = ctx["_vunits"]
        absorbed = ctx["_absorbed"]
        ghd = {unit: (sid, hm) for (unit, sid, hm) in gh}
        carried = [e for e in gh if e[0] not in absorbed]
        for lv in range(1, self.d + 1):
            lkey_p = lk[:vpos] + (lv,) + lk[vpos:]
            labs = dict(zip(pv.keep, lkey_p))
            entries = list(carried)
            dead = False
            for unit, edges, subs in vunits:
                hm_union = 0
                allowed: frozenset[int] | None = None
                for cu in subs:
                    ssid, shm = ghd[cu]
                    hm_union |= shm
                    cand = self.set_of(ssid)
                    allowed = cand if allowed is None else (allowed & cand)
                unit_mask = 0
                seen = 0
                for u in unit:
                    b = 1 << (labs[u] - 1)
                    if seen & b:
                        dead = True
                        break
                    seen |= b
                    unit_mask |= b
                if dead or (hm_union & unit_mask):
                    dead = True
                    break
                csid = self.compat_set(unit, edges, labs)
                if csid is None:
                    dead = True
                    break
                pats = self.set_of(csid)
                if allowed is not None:
                    pats = pats & allowed
                if hm_union:
                    pats = {
                        q for q in pats if not (hm_union & self.pat_adj[q].get(lv, 0))
                    }
                if not pats:
                    dead = True
                    break
                entries.append((unit, self.intern(pats), hm_union))
            if dead:
                continue
            gh_p = tuple(sorted(entries))
            for part, wit in fam.items():
                newpart = self._intro_partition(ctx, part)
                if newpart is None:
                    continue
                self.insert(
                    table, xk, lkey_p, i, gh_p, newpart,
                    self._witness_with_label(wit, v, lv),
                )

    def _forget_state(self, table: dict, ctx: dict, key: StateKey, fam: dict) -> None:
        xk, lk, i, gh = key
        cv: _View = ctx["cv"]
        pv: _View = ctx["pv"]
        v = ctx["v"]
        vpos = ctx["vpos"]
        lv = lk[vpos]
        lkey_p = lk[:vpos] + lk[vpos + 1 :]
        labs = dict(zip(cv.keep, lk))

        carried: list[GhEntry] = []
        branch_lists: list[list[GhEntry]] = [[]]
        for (unit, sid, hm), edges in zip(gh, cv.unit_edges):
            if v not in unit:
                carried.append((unit, sid, hm))
                continue
            uset = set(unit)
            pieces = [pu for pu in pv.units if set(pu) <= uset]
            if not pieces:
                continue  # the block sinks whole; nothing left to track
            options = self._sink_unit_branches(unit, sid, hm, lv, pieces, labs)
            branch_lists = [b + o for b in branch_lists for o in options]
        for branch in branch_lists:
            gh_p = tuple(sorted(carried + branch))
            for part, wit in fam.items():
                newpart = self._forget_partition(ctx, part)
                self.insert(table, xk, lkey_p, i, gh_p, newpart, wit)


class ComponentEngine(Engine):
    """Tracks one hypothesis per component of the bag graph.

    Partition parts group bag components lying in one component of the
    partial solution; components sharing a part are pinned to a common
    pattern, which the slot machinery realizes by keeping multi-member
    parts on single-pattern slots.
    """

    def __init__(self, g, d, k, patterns, ntd, witness=False, canonize=None):
        super().__init__(g, d, k, patterns, ntd, "component", witness, canonize)

    def _introduce_state(self, table: dict, ctx: dict, key: StateKey, fam: dict) -> None:
        xk, lk, i, gh = key
        pv: _View = ctx["pv"]
        v = ctx["v"]
        vpos = ctx["vpos"]
        vnew = ctx["vnew"]
        comp_map = ctx["comp_map"]
        merged_old = [o for o in range(len(comp_map)) if comp_map[o] == vnew]
        vunit = pv.units[vnew]
        vedges = pv.unit_edges[vnew]
        for lv in range(1, self.d + 1):
            lkey_p = lk[:vpos] + (lv,) + lk[vpos:]
            labs = dict(zip(pv.keep, lkey_p))
            hm_a = 0
            allowed: frozenset[int] | None = None
            for o in merged_old:
                _, osid, ohm = gh[o]
                hm_a |= ohm
                cand = self.set_of(osid)
                allowed = cand if allowed is None else (allowed & cand)
            unit_mask = 0
            seen = 0
            dead = False
            for u in vunit:
                b = 1 << (labs[u] - 1)
                if seen & b:
                    dead = True
                    break
                seen |= b
                unit_mask |= b
            if dead or (hm_a & unit_mask):
                continue
            csid = self.compat_set(vunit, vedges, labs)
            if csid is None:
                continue
            pats = self.set_of(csid)
            if allowed is not None:
                pats = pats & allowed
            if hm_a:
                pats = {q for q in pats if not (hm_a & self.pat_adj[q].get(lv, 0))}
            if not pats:
                continue
            entries = [gh[o] for o in range(len(comp_map)) if comp_map[o] != vnew]
            entries.append((vunit, self.intern(pats), hm_a))
            gh_p = tuple(sorted(entries))
            for part, wit in fam.items():
                newpart = self._intro_partition(ctx, part)
                if newpart is None:
                    continue
                self.insert(
                    table, xk, lkey_p, i, gh_p, newpart,
                    self._witness_with_label(wit, v, lv),
                )

    def _forget_state(self, table: dict, ctx: dict, key: StateKey, fam: dict) -> None:
        xk, lk, i, gh = key
        cv: _View = ctx["cv"]
        pv: _View = ctx["pv"]
        v = ctx["v"]
        vpos = ctx["vpos"]
        ucomp = ctx["ucomp"]
        lv = lk[vpos]
        lkey_p = lk[:vpos] + lk[vpos + 1 :]
        labs = dict(zip(cv.keep, lk))

        carried = [gh[o] for o in range(len(gh)) if o != ucomp]
        unit, sid, hm = gh[ucomp]
        pieces = [pv.units[pidx] for pidx in ctx["split"][ucomp]]
        if not pieces:
            branch_lists: list[list[GhEntry]] = [[]]
        else:
            branch_lists = self._sink_unit_branches(unit, sid, hm, lv, pieces, labs)
        for branch in branch_lists:
            gh_p = tuple(sorted(carried + branch))
            for part, wit in fam.items():
                newpart = self._forget_partition(ctx, part)
                self.insert(table, xk, lkey_p, i, gh_p, newpart, wit)
