"""Rooted partition engines and the top-level decomposition driver.

Each engine takes a graph with a clique model (disjoint connected branch
sets, pairwise joined) and recursively builds a partition of the vertex set
whose quotient graph has certified small treewidth, or aborts with an
explicit forbidden-minor witness.  Three engines share the skeleton:

* ``partition_rooted_main``  works relative to a tree-decomposition; every
  part comes with a cover certificate listing at most t-1 bags of the
  original decomposition whose union contains it.
* ``partition_rooted_sqrt``  needs no decomposition; parts obey a computed
  size bound (``sqrt_width_bound``).
* ``partition_rooted_stw``   strengthens the quotient certificate to an
  s-simple tree-decomposition (every s-set of parts lies in at most two
  bags), for complete-bipartite-plus-clique excluded minors.

The recursion shrinks the graph by deletions and contractions; contracted
super-vertices are negative tokens tracked next to the graph, and every
super-vertex alive at any point is a singleton branch set of the current
model, so final parts contain only original vertices.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import AbstractSet, Sequence

from .decomp import (
    Layering,
    TDView,
    TreeDecomposition,
    find_clique_bag,
    heuristic_td,
    validate_td,
    view_as_td,
    view_contract,
    view_delete,
    view_of,
)
from .graphs import (
    Graph,
    Model,
    components,
    contract_set,
    grow_connected_partition,
    induced_subgraph,
    is_connected_mask,
    mask_of,
    model_violation,
    set_of,
)
from .hitting import (
    Blocker,
    Connectors,
    find_tree,
    find_tree_blocker_bound,
    find_trees,
    find_split_edge,
    helly_bag,
    implicit_tree_hit,
    is_blocked,
    menger_vertex_cut,
    minimal_separator_within,
)

DEBUG_CHECKS = False


class InvalidInput(ValueError):
    """Malformed graph/model/decomposition handed to an engine or driver."""


class EngineError(AssertionError):
    """A step the construction guarantees failed; indicates a bug."""


@dataclass(frozen=True)
class PartitionResult:
    parts: tuple[tuple[int, ...], ...]
    quotient: Graph
    roots: tuple[int, ...]
    cover_certs: tuple[tuple[int, ...], ...] | None
    h_cert: TreeDecomposition
    simple: bool = False
    reported_m: float | None = None


@dataclass(frozen=True)
class MinorWitness:
    flavor: str  # "J" | "Kst" | "Kt"
    a_sets: tuple[tuple[int, ...], ...]
    b_sets: tuple[tuple[int, ...], ...]


class _WitnessFound(Exception):
    def __init__(self, witness: MinorWitness):
        self.witness = witness


_PENDING_CERT = ("pending",)


# ---------------------------------------------------------------------------
# working scene: current graph + provenance of its vertices (+ optional view)

@dataclass(frozen=True)
class _Scene:
    g: Graph
    origin: tuple[int, ...]  # current id -> original vertex (>=0) or token (<0)
    registry: dict[int, frozenset[int]]  # token -> original vertex set
    view: TDView | None

    def uni(self, cur) -> frozenset[int]:
        return frozenset(self.origin[c] for c in cur)

    def cur_of(self, uni_set: AbstractSet[int]) -> frozenset[int]:
        pos = {o: i for i, o in enumerate(self.origin)}
        return frozenset(pos[o] for o in uni_set)

    def expand(self, uni_set: AbstractSet[int]) -> frozenset[int]:
        out: set[int] = set()
        for o in uni_set:
            out |= self.registry[o] if o < 0 else {o}
        return frozenset(out)


def _scene_root(g: Graph, view: TDView | None) -> _Scene:
    return _Scene(g, tuple(range(g.n)), {}, view)


def _scene_delete(sc: _Scene, dead: AbstractSet[int]) -> _Scene:
    keep = [v for v in range(sc.g.n) if v not in dead]
    g2, old = induced_subgraph(sc.g, keep)
    origin = tuple(sc.origin[v] for v in old)
    registry = {tk: s for tk, s in sc.registry.items() if tk in set(origin)}
    view = view_delete(sc.view, dead) if sc.view is not None else None
    if view is not None:
        assert view.origin == origin, "view drifted from scene on delete"
    return _Scene(g2, origin, registry, view)


def _scene_contract(sc: _Scene, z: AbstractSet[int], token: int) -> _Scene:
    g2, vmap = contract_set(sc.g, z)
    origin = [0] * g2.n
    for v in range(sc.g.n):
        if v not in z:
            origin[vmap[v]] = sc.origin[v]
    origin[g2.n - 1] = token
    expanded = sc.expand(sc.uni(z))
    registry = {tk: s for tk, s in sc.registry.items() if tk in set(origin)}
    registry[token] = expanded
    view = view_contract(sc.view, z, token) if sc.view is not None else None
    if view is not None:
        assert view.origin == tuple(origin), "view drifted from scene on contract"
    return _Scene(g2, tuple(origin), registry, view)


@dataclass
class _Ctx:
    tokens: itertools.count = field(default_factory=lambda: itertools.count(1))
    stats: dict[str, int] = field(default_factory=dict)

    def bump(self, key: str) -> None:
        self.stats[key] = self.stats.get(key, 0) + 1

    def fresh_token(self) -> int:
        return -next(self.tokens)


# ---------------------------------------------------------------------------
# partition under construction

@dataclass
class _Build:
    """Parts keyed by their (stable) vertex sets, plus the quotient edges
    and certificate tree built alongside."""

    certs: dict[frozenset[int], tuple[int, ...] | None]
    hedges: set[frozenset[frozenset[int]]]
    cbags: list[frozenset[frozenset[int]]]
    cedges: list[tuple[int, int]]
    roots: tuple[frozenset[int], ...] = ()

    def add_hedge(self, a: frozenset[int], b: frozenset[int]) -> None:
        assert a != b
        self.hedges.add(frozenset((a, b)))

    def add_clique(self, keys: Sequence[frozenset[int]]) -> None:
        for i, a in enumerate(keys):
            for b in keys[i + 1 :]:
                self.add_hedge(a, b)

    def rename_part(
        self, old: frozenset[int], new: frozenset[int], cert: tuple[int, ...] | None
    ) -> None:
        assert old in self.certs and new not in self.certs
        del self.certs[old]
        self.certs[new] = cert
        self.hedges = {
            frozenset(new if k == old else k for k in e) for e in self.hedges
        }
        self.hedges = {e for e in self.hedges if len(e) == 2}
        self.cbags = [
            frozenset(new if k == old else k for k in bag) for bag in self.cbags
        ]
        self.roots = tuple(new if k == old else k for k in self.roots)

    def drop_part(self, old: frozenset[int]) -> None:
        del self.certs[old]
        self.hedges = {e for e in self.hedges if old not in e}
        self.cbags = [bag - {old} for bag in self.cbags]


def _single_bag_build(
    keys: Sequence[frozenset[int]], certs: Sequence[tuple[int, ...] | None]
) -> _Build:
    b = _Build(dict(zip(keys, certs)), set(), [frozenset(keys)], [], tuple(keys))
    b.add_clique(list(keys))
    return b


def _merge_builds(builds: Sequence[_Build]) -> tuple[_Build, list[int]]:
    """Union of builds; shared part keys identify.  Returns node-id offsets
    of each constituent certificate tree (callers add joining edges)."""
    certs: dict[frozenset[int], tuple[int, ...] | None] = {}
    hedges: set[frozenset[frozenset[int]]] = set()
    cbags: list[frozenset[frozenset[int]]] = []
    cedges: list[tuple[int, int]] = []
    offsets = []
    for b in builds:
        for k, c in b.certs.items():
            if k in certs:
                assert certs[k] == c, f"conflicting certs for shared part {sorted(k)}"
            else:
                certs[k] = c
        hedges |= b.hedges
        off = len(cbags)
        offsets.append(off)
        cbags.extend(b.cbags)
        cedges.extend((x + off, y + off) for x, y in b.cedges)
    return _Build(certs, hedges, cbags, cedges), offsets


def _finalize(
    build: _Build,
    *,
    with_certs: bool,
    simple: bool = False,
    reported_m: float | None = None,
) -> PartitionResult:
    assert _PENDING_CERT not in build.certs.values()
    keys = sorted(build.certs, key=lambda k: min(k, default=-1))
    for k in keys:
        assert k and min(k) >= 0, "unresolved placeholder part"
    index = {k: i for i, k in enumerate(keys)}
    edges = sorted(
        {tuple(sorted((index[a], index[b]))) for e in build.hedges for a, b in [tuple(e)]}
    )
    quotient = Graph.from_edges(len(keys), edges)
    cbags = build.cbags or [frozenset()]
    h_cert = TreeDecomposition(
        tuple(frozenset(index[k] for k in bag) for bag in cbags), tuple(build.cedges)
    )
    certs = None
    if with_certs:
        certs = tuple(tuple(build.certs[k]) for k in keys)
    return PartitionResult(
        parts=tuple(tuple(sorted(k)) for k in keys),
        quotient=quotient,
        roots=tuple(index[k] for k in build.roots),
        cover_certs=certs,
        h_cert=h_cert,
        simple=simple,
        reported_m=reported_m,
    )


# ---------------------------------------------------------------------------
# shared recursion pieces

def _model_current(sc: _Scene, model: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    pos = {o: i for i, o in enumerate(sc.origin)}
    return [frozenset(pos[o] for o in part) for part in model]


def _assert_scene_sane(sc: _Scene, model: Sequence[frozenset[int]]) -> None:
    keys = set(model)
    for i, o in enumerate(sc.origin):
        if o < 0:
            assert frozenset([o]) in keys, "live super-vertex is not a branch set"
    if DEBUG_CHECKS and sc.view is not None:
        err = validate_td(sc.g, view_as_td(sc.view))
        assert err is None, f"view invalid: {err}"


def _neighbor_targets(
    g: Graph, model_cur: Sequence[frozenset[int]], u_mask: int
) -> list[frozenset[int]]:
    out = []
    for part in model_cur:
        nb = 0
        for v in part:
            nb |= g.masks[v]
        out.append(set_of(nb & ~u_mask))
    return out


def _bfs_path(g: Graph, allowed: frozenset[int], start: int, goal: AbstractSet[int]) -> list[int] | None:
    """Shortest path from start into goal inside allowed (plus start itself);
    target ties break toward the smaller vertex, parents toward the first
    discoverer under sorted neighbor scans.  Endpoints included."""
    if start in goal:
        return [start]
    parent: dict[int, int | None] = {start: None}
    dist = {start: 0}
    queue = deque([start])
    best: tuple[int, int] | None = None
    while queue:
        u = queue.popleft()
        if best is not None and dist[u] + 1 > best[0]:
            break
        for w in g.adj[u]:
            if w in parent or w not in allowed:
                continue
            parent[w] = u
            dist[w] = dist[u] + 1
            queue.append(w)
            if w in goal and (best is None or (dist[w], w) < best):
                best = (dist[w], w)
    if best is None:
        return None
    path = [best[1]]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _raise_j_witness(
    sc: _Scene,
    model: Sequence[frozenset[int]],
    seeds_cur: Sequence[frozenset[int]],
    u_cur: frozenset[int],
    flavor: str = "J",
    grow: bool = True,
) -> None:
    """Build a forbidden-minor witness from disjoint connectors and abort."""
    if grow:
        rest = sorted(set(range(sc.g.n)) - u_cur)
        sub, old = induced_subgraph(sc.g, rest)
        pos = {v: i for i, v in enumerate(old)}
        seeds = [frozenset(pos[v] for v in s) for s in seeds_cur]
        blobs = grow_connected_partition(sub, seeds)
        b_cur = [frozenset(old[v] for v in blob) for blob in blobs]
    else:
        b_cur = list(seeds_cur)
    a_sets = tuple(tuple(sorted(sc.expand(part))) for part in model)
    b_sets = tuple(tuple(sorted(sc.expand(sc.uni(blob)))) for blob in b_cur)
    raise _WitnessFound(MinorWitness(flavor, a_sets, b_sets))


def minimize_blocker(
    g: Graph,
    u: AbstractSet[int],
    targets: Sequence[AbstractSet[int]],
    y: AbstractSet[int],
) -> frozenset[int]:
    """Inclusion-minimal subset of y still blocking every target-connector;
    removal attempts run in increasing vertex id."""
    cur = set(y)
    for v in sorted(y):
        if is_blocked(g, u, cur - {v}, targets):
            cur.discard(v)
    return frozenset(cur)


# ---------------------------------------------------------------------------
# main engine (decomposition-relative, cover certificates)

def _recurse_empty_target(
    sc: _Scene,
    model: tuple[frozenset[int], ...],
    certs: tuple,
    s: int,
    t: int,
    ctx: _Ctx,
    i_empty: int,
    rec,
) -> _Build:
    """Drop branch set i (its neighborhood lies inside the model), recurse,
    and re-attach it as a part joined to the remaining roots."""
    model_cur = _model_current(sc, model)
    sub = _scene_delete(sc, model_cur[i_empty])
    rest_model = tuple(p for j, p in enumerate(model) if j != i_empty)
    rest_certs = tuple(c for j, c in enumerate(certs) if j != i_empty)
    b = rec(sub, rest_model, rest_certs, s, t, ctx)
    key = model[i_empty]
    b.certs[key] = certs[i_empty]
    for other in rest_model:
        b.add_hedge(key, other)
    anchor = find_clique_bag(b.cbags, frozenset(rest_model))
    b.cbags.append(frozenset(model))
    b.cedges.append((anchor, len(b.cbags) - 1))
    b.roots = model
    return b


def _split_components(
    sc: _Scene,
    model: tuple[frozenset[int], ...],
    certs: tuple,
    s: int,
    t: int,
    ctx: _Ctx,
    comps: list[frozenset[int]],
    rec,
) -> _Build:
    """Clique-sum recursion over (smallest component) vs (the rest)."""
    first = comps[0]
    rest: set[int] = set()
    for c in comps[1:]:
        rest |= c
    b1 = rec(_scene_delete(sc, frozenset(rest)), model, certs, s, t, ctx)
    b2 = rec(_scene_delete(sc, first), model, certs, s, t, ctx)
    x1 = find_clique_bag(b1.cbags, frozenset(model))
    x2 = find_clique_bag(b2.cbags, frozenset(model))
    merged, offs = _merge_builds([b1, b2])
    merged.cedges.append((offs[0] + x1, offs[1] + x2))
    merged.roots = model
    return merged


def _main(
    sc: _Scene,
    model: tuple[frozenset[int], ...],
    certs: tuple,
    s: int,
    t: int,
    ctx: _Ctx,
) -> _Build:
    g = sc.g
    r = len(model)
    _assert_scene_sane(sc, model)
    model_cur = _model_current(sc, model)
    u_cur = frozenset().union(*model_cur)
    if len(u_cur) == g.n:
        ctx.bump("base")
        return _single_bag_build(model, certs)
    u_mask = mask_of(u_cur)
    targets = _neighbor_targets(g, model_cur, u_mask)
    empties = [i for i, a in enumerate(targets) if not a]
    if empties:
        ctx.bump("empty-target")
        if r == 1:
            raise EngineError("isolated branch set in a connected graph")
        return _recurse_empty_target(sc, model, certs, s, t, ctx, empties[0], _main)
    comps = components(g, set(range(g.n)) - u_cur)
    if len(comps) > 1:
        ctx.bump("component-split")
        return _split_components(sc, model, certs, s, t, ctx, comps, _main)

    if r <= s - 1:
        node = helly_bag(g, u_cur, targets, sc.view)
        if node is None:
            ctx.bump("split-edge")
            return _split_case_main(sc, model, certs, s, t, ctx, targets, u_cur)
        ctx.bump("helly")
        y = sc.view.bags[node] - u_cur
        return _finish_rooted(sc, model, certs, s, t, ctx, y, (node,), _main)
    ctx.bump("tree-hit")
    out = implicit_tree_hit(g, u_cur, targets, sc.view, t)
    if isinstance(out, Connectors):
        _raise_j_witness(sc, model, out.trees, u_cur)
    return _finish_rooted(sc, model, certs, s, t, ctx, out.y, out.bag_ids, _main)


def _split_case_main(
    sc: _Scene,
    model: tuple[frozenset[int], ...],
    certs: tuple,
    s: int,
    t: int,
    ctx: _Ctx,
    targets: list[frozenset[int]],
    u_cur: frozenset[int],
) -> _Build:
    g = sc.g
    (nx, ny), f1, f2 = find_split_edge(g, u_cur, targets, sc.view)
    cands = (sc.view.bags[nx] & sc.view.bags[ny]) - u_cur
    rest = sorted(set(range(g.n)) - u_cur)
    sub, old = induced_subgraph(g, rest)
    pos = {v: i for i, v in enumerate(old)}
    s_sub = minimal_separator_within(
        sub,
        frozenset(pos[v] for v in cands),
        frozenset(pos[v] for v in f1),
        frozenset(pos[v] for v in f2),
    )
    sep = frozenset(old[v] for v in s_sub)
    if not sep:
        raise EngineError("empty separator with the complement connected")
    free = set(range(g.n)) - u_cur - sep
    side1 = next(c for c in components(g, free) if f1 <= c)
    side2 = frozenset(free - side1)
    assert f2 <= side2
    sep_uni = sc.uni(sep)
    assert min(sep_uni) >= 0, "separator contains a super-vertex"
    cert_s = (min(nx, ny),)
    builds = []
    for side in (side1, side2):
        token = ctx.fresh_token()
        scj = _scene_contract(sc, sep | side, token)
        bj = _main(scj, model + (frozenset([token]),), certs + (_PENDING_CERT,), s, t, ctx)
        bj.rename_part(frozenset([token]), sep_uni, cert_s)
        builds.append(bj)
    anchors = [
        find_clique_bag(b.cbags, frozenset(model) | {sep_uni}) for b in builds
    ]
    merged, offs = _merge_builds(builds)
    merged.cedges.append((offs[0] + anchors[0], offs[1] + anchors[1]))
    merged.roots = model
    return merged


def _finish_rooted(
    sc: _Scene,
    model: tuple[frozenset[int], ...],
    certs: tuple,
    s: int,
    t: int,
    ctx: _Ctx,
    y: frozenset[int],
    bag_ids: tuple[int, ...],
    rec,
) -> _Build:
    """Common final stage: minimize the blocker, recurse per component with a
    contracted escape route, and glue everything along the root clique."""
    g = sc.g
    model_cur = _model_current(sc, model)
    u_cur = frozenset().union(*model_cur)
    targets = _neighbor_targets(g, model_cur, mask_of(u_cur))
    y = minimize_blocker(g, u_cur, targets, y)
    y_uni = sc.uni(y)
    assert not y_uni or min(y_uni) >= 0, "blocker contains a super-vertex"
    with_certs = certs is not None
    cert_y = tuple(bag_ids) if with_certs else None
    comps = components(g, set(range(g.n)) - u_cur - y)
    if not comps:
        keys = list(model) + ([y_uni] if y_uni else [])
        kcerts = list(certs or [None] * len(model)) + ([cert_y] if y_uni else [])
        b = _single_bag_build(keys, kcerts)
        b.roots = model
        return b
    if not y:
        raise EngineError("empty blocker but surviving components")
    n0 = g.n
    builds = []
    hubs = []
    for comp in comps:
        missed = [i for i, a in enumerate(targets) if not (a & comp)]
        if not missed:
            raise EngineError("component misses no target after blocking")
        i_m = missed[0]
        y_touch = frozenset(
            w for w in y if any(v in comp for v in g.adj[w])
        )
        if not y_touch:
            raise EngineError("component with no blocker neighbor")
        z: set[int] = set(model_cur[i_m])
        for w in sorted(y_touch):
            allowed = frozenset(set(range(g.n)) - u_cur - (y - {w}) - comp)
            path = _bfs_path(g, allowed, w, targets[i_m])
            if path is None:
                raise EngineError("no escape path from blocker vertex")
            z.update(path)
        keep = comp | frozenset(z) | u_cur
        scj = _scene_delete(sc, frozenset(range(g.n)) - keep)
        token = ctx.fresh_token()
        scj = _scene_contract(scj, scj.cur_of(sc.uni(z)), token)
        assert scj.g.n <= n0 - 1, "recursion failed to shrink"
        sub_model = (frozenset([token]),) + tuple(
            p for j, p in enumerate(model) if j != i_m
        )
        sub_certs = None
        if with_certs:
            sub_certs = (_PENDING_CERT,) + tuple(
                c for j, c in enumerate(certs) if j != i_m
            )
        bj = rec(scj, sub_model, sub_certs, s, t, ctx)
        # re-attach the dropped branch set next to the contracted route
        key = model[i_m]
        bj.certs[key] = certs[i_m] if with_certs else None
        for other in sub_model:
            bj.add_hedge(key, other)
        anchor = find_clique_bag(bj.cbags, frozenset(sub_model))
        bj.cbags.append(frozenset(sub_model) | {key})
        bj.cedges.append((anchor, len(bj.cbags) - 1))
        hubs.append(len(bj.cbags) - 1)
        bj.rename_part(frozenset([token]), y_uni, cert_y)
        builds.append(bj)
    merged, offs = _merge_builds(builds)
    center_keys = frozenset(model) | {y_uni}
    merged.cbags.append(center_keys)
    center = len(merged.cbags) - 1
    for off, hub in zip(offs, hubs):
        merged.cedges.append((center, off + hub))
    merged.add_clique(list(model) + [y_uni])
    merged.roots = model
    return merged


# ---------------------------------------------------------------------------
# sqrt engine (no decomposition; size-bounded parts)

def sqrt_width_bound(s: int, t: int, n: int) -> float:
    """Part-size bound the decomposition-free engine guarantees on n-vertex
    inputs with the built-in (distance-layer) hitting method.

    For s <= 2 the hitting steps are exact and the bound is max(t-1, 1).
    For s >= 3 it is the maximum over the model-growth branches (x balanced
    against the layer-blocker bound) and, for t >= 2, the final branch
    (t-1)x + blocker(n, s, x) minimized over x.
    """
    if s <= 2:
        return float(max(t - 1, 1))
    best = 1.0
    for r in range(2, s):
        x = max(1.0, (r - 1) * math.sqrt(n))
        best = max(best, x, find_tree_blocker_bound(n, r, x))
    if t >= 2:
        x = max(1.0, (s - 1) * math.sqrt(n / (t - 1)))
        best = max(best, (t - 1) * x + find_tree_blocker_bound(n, s, x))
    return best


def _sqrt(
    sc: _Scene,
    model: tuple[frozenset[int], ...],
    certs: None,
    s: int,
    t: int,
    ctx: _Ctx,
    m: float,
) -> _Build:
    def rec(sub, mdl, crt, s_, t_, ctx_):
        return _sqrt(sub, mdl, crt, s_, t_, ctx_, m)

    while True:
        g = sc.g
        r = len(model)
        _assert_scene_sane(sc, model)
        model_cur = _model_current(sc, model)
        u_cur = frozenset().union(*model_cur)
        if len(u_cur) == g.n:
            ctx.bump("base")
            return _single_bag_build(model, (None,) * r)
        if g.n <= r + m:
            ctx.bump("base-rest")
            rest_uni = sc.uni(set(range(g.n)) - u_cur)
            assert len(rest_uni) <= m
            return _single_bag_build(
                list(model) + [rest_uni], (None,) * (r + 1)
            )
        u_mask = mask_of(u_cur)
        targets = _neighbor_targets(g, model_cur, u_mask)
        empties = [i for i, a in enumerate(targets) if not a]
        if empties:
            ctx.bump("empty-target")
            if r == 1:
                raise EngineError("isolated branch set in a connected graph")
            return _recurse_empty_target(
                sc, model, (None,) * r, s, t, ctx, empties[0], rec
            )
        comps = components(g, set(range(g.n)) - u_cur)
        if len(comps) > 1:
            ctx.bump("component-split")
            return _split_components(sc, model, (None,) * r, s, t, ctx, comps, rec)

        rest = sorted(set(range(g.n)) - u_cur)
        sub, old = induced_subgraph(g, rest)
        pos = {v: i for i, v in enumerate(old)}
        sub_targets = [frozenset(pos[v] for v in a) for a in targets]

        if r <= s - 1:
            ctx.bump("grow")
            x = max(1.0, (r - 1) * math.sqrt(g.n))
            out = find_tree(sub, sub_targets, x)
            if isinstance(out, Connectors):
                tree = frozenset(old[v] for v in out.trees[0])
                assert len(tree) <= m
                model = model + (sc.uni(tree),)
                continue
            y = frozenset(old[v] for v in out.y)
            assert len(y) <= m, "growth blocker exceeds the width bound"
            return _finish_rooted(sc, model, None, s, t, ctx, y, (), rec)

        # r == s
        if s == 1:
            ctx.bump("single-root")
            a1 = sorted(targets[0])
            if len(a1) >= t:
                seeds = [frozenset([v]) for v in a1[:t]]
                _raise_j_witness(sc, model, seeds, u_cur)
            y = targets[0]
        elif s == 2:
            ctx.bump("menger")
            out = menger_vertex_cut(sub, sub_targets[0], sub_targets[1], t)
            if isinstance(out, Connectors):
                seeds = [frozenset(old[v] for v in p) for p in out.trees]
                _raise_j_witness(sc, model, seeds, u_cur)
            y = frozenset(old[v] for v in out.y)
            assert len(y) <= t - 1 <= m
        elif t == 1:
            ctx.bump("clique-witness")
            _raise_j_witness(sc, model, [frozenset(rest)], u_cur, grow=False)
        else:
            ctx.bump("tree-hit")
            x = max(1.0, (s - 1) * math.sqrt(g.n / (t - 1)))
            out = find_trees(sub, sub_targets, x, t)
            if isinstance(out, Connectors):
                seeds = [frozenset(old[v] for v in tr) for tr in out.trees]
                _raise_j_witness(sc, model, seeds, u_cur)
            y = frozenset(old[v] for v in out.y)
            assert len(y) <= m, "final blocker exceeds the width bound"
        return _finish_rooted(sc, model, None, s, t, ctx, y, (), rec)


# ---------------------------------------------------------------------------
# simple-treewidth engine

def _stw(
    sc: _Scene,
    model: tuple[frozenset[int], ...],
    certs: tuple,
    s: int,
    t: int,
    ctx: _Ctx,
) -> _Build:
    b = _stw_inner(sc, model, certs, s, t, ctx)
    if len(model) == s:
        full = frozenset(model)
        count = sum(1 for bag in b.cbags if full <= bag)
        assert count == 1, "root clique must lie in exactly one bag"
    return b


def _stw_inner(
    sc: _Scene,
    model: tuple[frozenset[int], ...],
    certs: tuple,
    s: int,
    t: int,
    ctx: _Ctx,
) -> _Build:
    g = sc.g
    r = len(model)
    _assert_scene_sane(sc, model)
    if r == 0:
        # re-seed each component with its smallest vertex
        ctx.bump("reseed")
        if g.n == 0:
            return _Build({}, set(), [], [], ())
        builds = []
        for comp in components(g, set(range(g.n))):
            scc = _scene_delete(sc, frozenset(range(g.n)) - comp)
            v = min(scc.cur_of(sc.uni({min(comp)})))
            seed = frozenset([scc.origin[v]])
            bag = min(i for i, bg in enumerate(scc.view.bags) if v in bg)
            builds.append(_stw(scc, (seed,), ((bag,),), s, t, ctx))
        merged, offs = _merge_builds(builds)
        for a, bnext in zip(offs, offs[1:]):
            merged.cedges.append((a, bnext))
        merged.roots = ()
        return merged
    model_cur = _model_current(sc, model)
    u_cur = frozenset().union(*model_cur)
    if len(u_cur) == g.n:
        ctx.bump("base")
        return _single_bag_build(model, certs)
    u_mask = mask_of(u_cur)
    targets = _neighbor_targets(g, model_cur, u_mask)
    empties = [i for i, a in enumerate(targets) if not a]
    if empties:
        ctx.bump("empty-target")
        return _recurse_empty_target(sc, model, certs, s, t, ctx, empties[0], _stw)
    comps = components(g, set(range(g.n)) - u_cur)
    for comp in comps:
        missed = [i for i, a in enumerate(targets) if not (a & comp)]
        if missed:
            ctx.bump("miss-split")
            return _stw_miss_split(sc, model, certs, s, t, ctx, comp, missed[0])
    if r <= s - 1:
        node = helly_bag(g, u_cur, targets, sc.view)
        if node is None:
            ctx.bump("split-edge")
            return _split_case_stw(sc, model, certs, s, t, ctx, targets, u_cur)
        ctx.bump("helly")
        y = sc.view.bags[node] - u_cur
        return _finish_stw(sc, model, certs, s, t, ctx, y, (node,))
    ctx.bump("tree-hit")
    out = implicit_tree_hit(g, u_cur, targets, sc.view, t)
    if isinstance(out, Connectors):
        _raise_j_witness(sc, model, out.trees, u_cur, flavor="Kst", grow=False)
    return _finish_stw(sc, model, certs, s, t, ctx, out.y, out.bag_ids)


def _stw_miss_split(
    sc: _Scene,
    model: tuple[frozenset[int], ...],
    certs: tuple,
    s: int,
    t: int,
    ctx: _Ctx,
    comp: frozenset[int],
    i_m: int,
) -> _Build:
    """A component avoids branch set i's neighborhood: split it off together
    with the other branch sets, and handle the rest with the full model."""
    g = sc.g
    model_cur = _model_current(sc, model)
    keep1 = comp | frozenset().union(*(model_cur[j] for j in range(len(model)) if j != i_m)) if len(model) > 1 else comp
    sc1 = _scene_delete(sc, frozenset(range(g.n)) - keep1)
    rest_model = tuple(p for j, p in enumerate(model) if j != i_m)
    rest_certs = tuple(c for j, c in enumerate(certs) if j != i_m)
    b1 = _stw(sc1, rest_model, rest_certs, s, t, ctx)
    sc2 = _scene_delete(sc, comp)
    b2 = _stw(sc2, model, certs, s, t, ctx)
    x1 = find_clique_bag(b1.cbags, frozenset(rest_model))
    x2 = find_clique_bag(b2.cbags, frozenset(model))
    merged, offs = _merge_builds([b1, b2])
    merged.cedges.append((offs[0] + x1, offs[1] + x2))
    merged.roots = model
    return merged


def _split_case_stw(
    sc: _Scene,
    model: tuple[frozenset[int], ...],
    certs: tuple,
    s: int,
    t: int,
    ctx: _Ctx,
    targets: list[frozenset[int]],
    u_cur: frozenset[int],
) -> _Build:
    g = sc.g
    (nx, ny), f1, f2 = find_split_edge(g, u_cur, targets, sc.view)
    cands = (sc.view.bags[nx] & sc.view.bags[ny]) - u_cur
    rest = sorted(set(range(g.n)) - u_cur)
    sub, old = induced_subgraph(g, rest)
    pos = {v: i for i, v in enumerate(old)}
    s_sub = minimal_separator_within(
        sub,
        frozenset(pos[v] for v in cands),
        frozenset(pos[v] for v in f1),
        frozenset(pos[v] for v in f2),
    )
    sep = frozenset(old[v] for v in s_sub)
    free = set(range(g.n)) - u_cur - sep
    side1 = next(c for c in components(g, free) if f1 <= c)
    side2 = frozenset(free - side1)
    sep_uni = sc.uni(sep)
    cert_s = (min(nx, ny),)
    builds = []
    for side, f in ((side1, f1), (side2, f2)):
        blob = next(c for c in components(g, side | sep) if f <= c)
        assert sep <= blob or not sep
        dead = side - blob
        token = ctx.fresh_token()
        scj = _scene_delete(sc, dead)
        scj = _scene_contract(scj, scj.cur_of(sc.uni(blob)), token)
        bj = _stw(scj, model + (frozenset([token]),), certs + (_PENDING_CERT,), s, t, ctx)
        if sep:
            bj.rename_part(frozenset([token]), sep_uni, cert_s)
        else:
            bj.drop_part(frozenset([token]))
        builds.append(bj)
    want = frozenset(model) | ({sep_uni} if sep else set())
    anchors = [find_clique_bag(b.cbags, want) for b in builds]
    merged, offs = _merge_builds(builds)
    merged.cedges.append((offs[0] + anchors[0], offs[1] + anchors[1]))
    merged.roots = model
    return merged


def _finish_stw(
    sc: _Scene,
    model: tuple[frozenset[int], ...],
    certs: tuple,
    s: int,
    t: int,
    ctx: _Ctx,
    y: frozenset[int],
    bag_ids: tuple[int, ...],
) -> _Build:
    """Final stage with components grouped by the first branch set they miss
    and one central bag {roots, Y} joining the per-group certificates."""
    g = sc.g
    r = len(model)
    model_cur = _model_current(sc, model)
    u_cur = frozenset().union(*model_cur)
    targets = _neighbor_targets(g, model_cur, mask_of(u_cur))
    y = minimize_blocker(g, u_cur, targets, y)
    y_uni = sc.uni(y)
    cert_y = tuple(bag_ids)
    comps = components(g, set(range(g.n)) - u_cur - y)
    if comps and not y:
        raise EngineError("empty blocker but surviving components")
    groups: dict[int, set[int]] = {}
    for comp in comps:
        missed = [i for i, a in enumerate(targets) if not (a & comp)]
        if not missed:
            raise EngineError("component misses no target after blocking")
        groups.setdefault(missed[0], set()).update(comp)
    builds = []
    hubs = []
    n0 = g.n
    for i_m in sorted(groups):
        grp = frozenset(groups[i_m])
        y_touch = frozenset(w for w in y if any(v in grp for v in g.adj[w]))
        if not y_touch:
            raise EngineError("group with no blocker neighbor")
        z: set[int] = set(model_cur[i_m])
        for w in sorted(y_touch):
            allowed = frozenset(set(range(g.n)) - u_cur - (y - {w}) - grp)
            path = _bfs_path(g, allowed, w, targets[i_m])
            if path is None:
                raise EngineError("no escape path from blocker vertex")
            z.update(path)
        keep = grp | frozenset(z) | u_cur
        scj = _scene_delete(sc, frozenset(range(g.n)) - keep)
        token = ctx.fresh_token()
        scj = _scene_contract(scj, scj.cur_of(sc.uni(z)), token)
        assert scj.g.n <= n0 - 1
        sub_model = (frozenset([token]),) + tuple(
            p for j, p in enumerate(model) if j != i_m
        )
        sub_certs = (_PENDING_CERT,) + tuple(
            c for j, c in enumerate(certs) if j != i_m
        )
        bj = _stw(scj, sub_model, sub_certs, s, t, ctx)
        bj.rename_part(frozenset([token]), y_uni, cert_y)
        hubs.append(find_clique_bag(bj.cbags, frozenset(sub_model) - {frozenset([token])} | {y_uni}))
        builds.append(bj)
    merged, offs = _merge_builds(builds)
    for k, c in zip(model, certs):
        if k not in merged.certs:
            merged.certs[k] = c
    if y_uni and y_uni not in merged.certs:
        merged.certs[y_uni] = cert_y
    center_keys = frozenset(model) | ({y_uni} if y_uni else set())
    merged.cbags.append(center_keys)
    center = len(merged.cbags) - 1
    for off, hub in zip(offs, hubs):
        merged.cedges.append((center, off + hub))
    merged.add_clique(list(model) + ([y_uni] if y_uni else []))
    merged.roots = model
    return merged

# ---------------------------------------------------------------------------
# public engine entry points

def _as_sets(model: Model | Sequence[AbstractSet[int]]) -> tuple[frozenset[int], ...]:
    sets = model.branch_sets if isinstance(model, Model) else tuple(model)
    return tuple(frozenset(b) for b in sets)


def _check_engine_input(g: Graph, sets: tuple[frozenset[int], ...], s: int, t: int,
                        min_st: int) -> None:
    if s < min_st or t < min_st:
        raise InvalidInput(f"need s, t >= {min_st} (got s={s}, t={t})")
    if len(sets) > s:
        raise InvalidInput(f"model has {len(sets)} branch sets but s={s}")
    if not sets:
        raise InvalidInput("model must have at least one branch set")
    err = model_violation(g, Model(sets))
    if err is not None:
        raise InvalidInput(err)
    if not is_connected_mask(g.masks, (1 << g.n) - 1):
        raise InvalidInput("engine needs a connected graph; decompose() handles components")


def _cover_cert(bags: Sequence[AbstractSet[int]], verts: AbstractSet[int],
                limit: int) -> tuple[int, ...] | None:
    """At most ``limit`` bag ids whose union covers ``verts`` (exhaustive)."""

    def dfs(uncovered: frozenset[int], chosen: tuple[int, ...]):
        if not uncovered:
            return chosen
        if len(chosen) >= limit:
            return None
        v = min(uncovered)
        for x, bag in enumerate(bags):
            if v in bag and x not in chosen:
                res = dfs(uncovered - bag, chosen + (x,))
                if res is not None:
                    return res
        return None

    return dfs(frozenset(verts), ())


def _as_view(g: Graph, view: TDView | TreeDecomposition) -> TDView:
    v = view_of(view, g) if isinstance(view, TreeDecomposition) else view
    if any(o < 0 for o in v.origin):
        raise InvalidInput("top-level view must not contain super-vertices")
    return v


def _model_certs(view: TDView, sets: Sequence[frozenset[int]], t: int):
    certs = []
    for bs in sets:
        c = _cover_cert(view.bags, bs, t - 1)
        if c is None:
            raise InvalidInput(
                f"branch set {sorted(bs)} has no cover by {t - 1} bags"
            )
        certs.append(c)
    return tuple(certs)


def partition_rooted_main(
    g: Graph, view: TDView | TreeDecomposition, model: Model | Sequence[AbstractSet[int]],
    s: int, t: int, *, stats: dict | None = None,
) -> PartitionResult | MinorWitness:
    """Decomposition-relative rooted partition: quotient treewidth <= s, every
    part covered by at most t-1 original bags, or a fan-pattern witness."""
    sets = _as_sets(model)
    _check_engine_input(g, sets, s, t, 2)
    v = _as_view(g, view)
    certs = _model_certs(v, sets, t)
    ctx = _Ctx()
    try:
        build = _main(_Scene(g, tuple(range(g.n)), {}, v), sets, certs, s, t, ctx)
    except _WitnessFound as wf:
        if stats is not None:
            stats.update(ctx.stats)
        return wf.witness
    if stats is not None:
        stats.update(ctx.stats)
    return _finalize(build, with_certs=True)


def partition_rooted_sqrt(
    g: Graph, model: Model | Sequence[AbstractSet[int]], s: int, t: int,
    m: float | None = None, *, stats: dict | None = None,
) -> PartitionResult | MinorWitness:
    """Decomposition-free rooted partition with parts of size at most m."""
    sets = _as_sets(model)
    _check_engine_input(g, sets, s, t, 1)
    bound = sqrt_width_bound(s, t, g.n)
    if m is None:
        m = bound
    elif m < bound:
        raise InvalidInput(
            f"m={m} below the bound {bound} the hitting method guarantees"
        )
    if any(len(b) > m for b in sets):
        raise InvalidInput("branch set larger than m")
    ctx = _Ctx()
    try:
        build = _sqrt(_Scene(g, tuple(range(g.n)), {}, None), sets, None, s, t, ctx, m)
    except _WitnessFound as wf:
        if stats is not None:
            stats.update(ctx.stats)
        return wf.witness
    if stats is not None:
        stats.update(ctx.stats)
    return _finalize(build, with_certs=False, reported_m=m)


def partition_rooted_stw(
    g: Graph, view: TDView | TreeDecomposition, model: Model | Sequence[AbstractSet[int]],
    s: int, t: int, *, stats: dict | None = None,
) -> PartitionResult | MinorWitness:
    """Like the main engine but the quotient certificate is s-simple; the
    negative outcome is a complete-bipartite-plus-clique witness."""
    sets = _as_sets(model)
    _check_engine_input(g, sets, s, t, 2)
    v = _as_view(g, view)
    certs = _model_certs(v, sets, t)
    ctx = _Ctx()
    try:
        build = _stw(_Scene(g, tuple(range(g.n)), {}, v), sets, certs, s, t, ctx)
    except _WitnessFound as wf:
        if stats is not None:
            stats.update(ctx.stats)
        return wf.witness
    if stats is not None:
        stats.update(ctx.stats)
    return _finalize(build, with_certs=True, simple=True)


# ---------------------------------------------------------------------------
# driver

@dataclass(frozen=True)
class Outcome:
    partition: PartitionResult | None
    witness: MinorWitness | None
    report: dict
    layering: Layering | None = None
    td: TreeDecomposition | None = None  # the decomposition certificates refer to


def map_target(mode: str, target: tuple) -> tuple[int, int, str]:
    """Translate a target minor into the engine parameters (s, t)."""
    kind = target[0]
    if kind == "kt":
        t = target[1]
        label = f"Kt({t})"
        if mode == "stw":
            raise InvalidInput("simple-treewidth mode needs a Kst or genus target")
        low = 3 if mode == "sqrt" else 4
        if t < low:
            raise InvalidInput(f"Kt target needs t >= {low} in mode {mode}")
        return t - 2, 2, label
    if kind == "kst":
        s, t = target[1], target[2]
        low = 1 if mode == "sqrt" else 2
        if s < low or t < low:
            raise InvalidInput(f"Kst target needs s, t >= {low} in mode {mode}")
        return s, t, f"Kst({s},{t})"
    if kind == "jst":
        s, t = target[1], target[2]
        if mode == "stw":
            raise InvalidInput("simple-treewidth mode needs a Kst or genus target")
        low = 1 if mode == "sqrt" else 2
        if s < low or t < low:
            raise InvalidInput(f"Jst target needs s, t >= {low} in mode {mode}")
        return s, t, f"Jst({s},{t})"
    if kind == "genus":
        gg = target[1]
        if gg < 0:
            raise InvalidInput("genus must be non-negative")
        return 3, 2 * gg + 3, f"genus({gg})"
    raise InvalidInput(f"unknown target {target!r}")


def _combined_planar_ltw(g: Graph, rot) -> tuple[TreeDecomposition, Layering]:
    """Per-component triangulation + layered decomposition, lifted to global
    vertex ids and joined into one decomposition/layering pair."""
    from . import planar  # deferred: planar builds on this module

    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []
    layers: list[frozenset[int]] = []
    prev_root = None
    for comp in components(g, set(range(g.n))):
        sub, old = induced_subgraph(g, comp)
        pos = {v: i for i, v in enumerate(old)}
        sub_rot = planar.RotationSystem(
            tuple(tuple(pos[w] for w in rot.rot[v]) for v in old)
        )
        tg, trot = planar.triangulate(sub, sub_rot)
        ltd = planar.eppstein_ltw3(tg, trot, 0)
        off = len(bags)
        bags.extend(frozenset(old[v] for v in bag) for bag in ltd.td.bags)
        edges.extend((x + off, y + off) for x, y in ltd.td.edges)
        if prev_root is not None:
            edges.append((prev_root, off))
        prev_root = off
        layers.extend(frozenset(old[v] for v in layer) for layer in ltd.layering.layers)
    return TreeDecomposition(tuple(bags), tuple(edges)), Layering(tuple(layers))


def layered_width(td: TreeDecomposition, layering: Layering) -> int:
    return max(
        (len(bag & layer) for bag in td.bags for layer in layering.layers),
        default=0,
    )


def decompose(
    g: Graph,
    mode: str,
    target: tuple,
    *,
    td: TreeDecomposition | None = None,
    layering: Layering | None = None,
    rot=None,
    stats: dict | None = None,
) -> Outcome:
    """Partition a graph per component and merge the results.

    Modes: ``tw`` (decomposition-relative; supplied or min-fill), ``sqrt``
    (decomposition-free), ``ltw`` (layered: supplied layering+decomposition
    or a rotation system for the planar construction), ``stw`` (simple
    certificate).  Returns either the merged partition or the first
    forbidden-minor witness.
    """
    if mode not in ("tw", "sqrt", "ltw", "stw"):
        raise InvalidInput(f"unknown mode {mode!r}")
    s, t, label = map_target(mode, target)
    report: dict = {
        "n": g.n,
        "edges": g.m,
        "mode": mode,
        "target": label,
        "s": s,
        "t": t,
    }
    if g.n == 0:
        empty = PartitionResult((), Graph(0, ()), (), () if mode != "sqrt" else None,
                                TreeDecomposition((frozenset(),), ()), mode == "stw", 0.0)
        report.update({"components": 0, "max_part": 0, "h_width": -1,
                       "h_parts": 0, "reported_m": 0.0, "tw_bound": -1})
        return Outcome(empty, None, report)

    base_td: TreeDecomposition | None = None
    ltw_val = None
    if mode in ("tw", "stw"):
        base_td = td if td is not None else heuristic_td(g)
    elif mode == "ltw":
        if rot is not None:
            base_td, layering = _combined_planar_ltw(g, rot)
        elif td is not None and layering is not None:
            base_td = td
        else:
            raise InvalidInput("ltw mode needs a rotation system or both a "
                               "decomposition and a layering")
        err = validate_td(g, base_td)
        if err is not None:
            raise InvalidInput(f"invalid decomposition: {err}")
        ltw_val = layered_width(base_td, layering)
    if base_td is not None and td is not None:
        err = validate_td(g, base_td)
        if err is not None:
            raise InvalidInput(f"invalid decomposition: {err}")

    ctx = _Ctx()
    comps = components(g, set(range(g.n)))
    builds = []
    reported_m = 0.0
    root_view = view_of(base_td, g) if base_td is not None else None
    for comp in comps:
        sub, old = induced_subgraph(g, comp)
        view = None
        if root_view is not None:
            view = view_delete(root_view, frozenset(range(g.n)) - comp)
            assert view.origin == old
        scene = _Scene(sub, old, {}, view)
        seed = frozenset([min(comp)])
        try:
            if mode == "sqrt":
                m_i = sqrt_width_bound(s, t, sub.n)
                reported_m = max(reported_m, m_i)
                builds.append(_sqrt(scene, (seed,), None, s, t, ctx, m_i))
            else:
                cert = _cover_cert(view.bags, scene.cur_of(seed), t - 1)
                if cert is None:
                    raise EngineError("seed vertex missing from every bag")
                rec = {"tw": _main, "ltw": _main, "stw": _stw}[mode]
                builds.append(rec(scene, (seed,), (cert,), s, t, ctx))
        except _WitnessFound as wf:
            if stats is not None:
                stats.update(ctx.stats)
            report["witness"] = wf.witness.flavor
            return Outcome(None, wf.witness, report, layering, base_td)
    if mode != "sqrt":
        reported_m = (t - 1) * max(len(b) for b in base_td.bags)
    merged, offs = _merge_builds(builds)
    for a, b in zip(offs, offs[1:]):
        merged.cedges.append((a, b))
    merged.roots = tuple(frozenset([min(c)]) for c in comps)
    result = _finalize(
        merged,
        with_certs=mode != "sqrt",
        simple=mode == "stw",
        reported_m=float(reported_m),
    )
    if stats is not None:
        stats.update(ctx.stats)
    h_width = result.h_cert.width
    report.update(
        {
            "components": len(comps),
            "max_part": max((len(p) for p in result.parts), default=0),
            "h_parts": len(result.parts),
            "h_width": h_width,
            "reported_m": float(reported_m),
            "tw_bound": (h_width + 1) * math.floor(reported_m) - 1,
        }
    )
    if ltw_val is not None:
        report["ltw"] = ltw_val
        report["layer_m"] = (t - 1) * ltw_val
        report["rtw_bound"] = (h_width + 1) * (t - 1) * ltw_val - 1
    return Outcome(result, None, report, layering, base_td)


# ---------------------------------------------------------------------------
# result serialization

def partition_to_json(r: PartitionResult) -> str:
    import json

    obj = {
        "kind": "partition",
        "parts": [list(p) for p in r.parts],
        "quotient_edges": r.quotient.edges(),
        "roots": list(r.roots),
        "cover_certs": None if r.cover_certs is None else [list(c) for c in r.cover_certs],
        "h_cert": {
            "bags": [sorted(b) for b in r.h_cert.bags],
            "edges": [list(e) for e in r.h_cert.edges],
        },
        "reported_m": r.reported_m,
        "simple": r.simple,
    }
    return json.dumps(obj, sort_keys=True)


def partition_from_json(text: str) -> PartitionResult:
    import json

    obj = json.loads(text)
    parts = tuple(tuple(p) for p in obj["parts"])
    quotient = Graph.from_edges(len(parts), [tuple(e) for e in obj["quotient_edges"]])
    certs = obj["cover_certs"]
    h = obj["h_cert"]
    return PartitionResult(
        parts=parts,
        quotient=quotient,
        roots=tuple(obj["roots"]),
        cover_certs=None if certs is None else tuple(tuple(c) for c in certs),
        h_cert=TreeDecomposition(
            tuple(frozenset(b) for b in h["bags"]),
            tuple(tuple(e) for e in h["edges"]),
        ),
        simple=obj.get("simple", False),
        reported_m=obj.get("reported_m"),
    )


def witness_to_json(w: MinorWitness, g: Graph | None = None) -> str:
    import json

    obj = {
        "kind": "witness",
        "flavor": w.flavor,
        "a_sets": [list(a) for a in w.a_sets],
        "b_sets": [list(b) for b in w.b_sets],
    }
    if g is not None and g.labels is not None:
        obj["a_labels"] = [[g.label(v) for v in a] for a in w.a_sets]
        obj["b_labels"] = [[g.label(v) for v in b] for b in w.b_sets]
    return json.dumps(obj, sort_keys=True)


def witness_from_json(text: str) -> MinorWitness:
    import json

    obj = json.loads(text)
    return MinorWitness(
        obj["flavor"],
        tuple(tuple(a) for a in obj["a_sets"]),
        tuple(tuple(b) for b in obj["b_sets"]),
    )
