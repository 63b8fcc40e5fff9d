"""Hitting-set / connector dichotomies.

Every routine here returns one of two certified outcomes: ``Connectors`` (a
family of disjoint connected subgraphs, each meeting every target set) or a
``Blocker`` (a vertex set Y such that no component of the remaining graph
meets every target).  The callers turn connectors into minor witnesses and
blockers into separator parts, so both sides are re-checkable.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import AbstractSet, Sequence

from .decomp import TDView
from .graphs import (
    Graph,
    bits,
    components_masks,
    induced_subgraph,
    mask_of,
    reach_mask,
    set_of,
)


class NotSeparating(ValueError):
    """The candidate set does not separate the given sides."""


class SplitNotFound(LookupError):
    """No split edge exists; the Helly case should have applied."""


class TooManyGroups(ValueError):
    """The exact group Steiner solver is capped at 8 groups."""


@dataclass(frozen=True)
class Blocker:
    y: frozenset[int]
    bag_ids: tuple[int, ...] = ()


@dataclass(frozen=True)
class Connectors:
    trees: tuple[frozenset[int], ...]


HitOutcome = Blocker | Connectors


def is_blocked(g: Graph, u: AbstractSet[int], y: AbstractSet[int],
               targets: Sequence[AbstractSet[int]]) -> bool:
    """True iff no component of g - u - y meets every target set."""
    tmasks = [mask_of(t) for t in targets]
    pool = (1 << g.n) - 1 & ~mask_of(u) & ~mask_of(y)
    for comp in components_masks(g.masks, pool):
        if all(comp & tm for tm in tmasks):
            return False
    return True


# ---------------------------------------------------------------------------
# decomposition-guided searches

def _bag_masks(view: TDView) -> list[int]:
    return [mask_of(b) for b in view.bags]


def helly_bag(g: Graph, u: AbstractSet[int], targets: Sequence[AbstractSet[int]],
              view: TDView) -> int | None:
    """Smallest node x whose bag (minus u) blocks every target-connector.

    Returns None when no single bag works, in which case two connectors with
    disjoint traces exist and ``find_split_edge`` applies.
    """
    for x, bag in enumerate(view.bags):
        if is_blocked(g, u, bag - u, targets):
            return x
    return None


def _tree_sides(view: TDView) -> list[tuple[tuple[int, int], int, int]]:
    """Per tree edge (x, y): union of bag masks on the x side and the y side."""
    bag_masks = _bag_masks(view)
    nbrs: dict[int, list[int]] = {i: [] for i in range(len(view.bags))}
    for x, y in view.base.edges:
        nbrs[x].append(y)
        nbrs[y].append(x)
    out = []
    for x, y in sorted(tuple(sorted(e)) for e in view.base.edges):
        side = {x}
        queue = deque([x])
        while queue:
            a = queue.popleft()
            for b in nbrs[a]:
                if (a, b) != (x, y) and (b, a) != (x, y) and b not in side:
                    side.add(b)
                    queue.append(b)
        xm = 0
        ym = 0
        for i, bm in enumerate(bag_masks):
            if i in side:
                xm |= bm
            else:
                ym |= bm
        out.append(((x, y), xm, ym))
    return out


def find_split_edge(
    g: Graph, u: AbstractSet[int], targets: Sequence[AbstractSet[int]], view: TDView
) -> tuple[tuple[int, int], frozenset[int], frozenset[int]]:
    """A tree edge xy plus connectors confined to its two sides.

    Searches tree edges by (smaller endpoint, larger endpoint); on each side
    the candidate is the smallest-id component of the side-exclusive vertices
    (those in no bag of the other side) minus u that meets every target.
    Only called when ``helly_bag`` failed, which guarantees existence.
    """
    tmasks = [mask_of(t) for t in targets]
    u_mask = mask_of(u)
    full = (1 << g.n) - 1

    def side_connector(exclusive: int) -> int | None:
        for comp in components_masks(g.masks, exclusive & ~u_mask):
            if all(comp & tm for tm in tmasks):
                return comp
        return None

    for (x, y), xm, ym in _tree_sides(view):
        f1 = side_connector(full & ~ym)
        if f1 is None:
            continue
        f2 = side_connector(full & ~xm)
        if f2 is None:
            continue
        return (x, y), set_of(f1), set_of(f2)
    raise SplitNotFound("no tree edge splits the connector family")


def minimal_separator_within(
    g: Graph, candidates: AbstractSet[int], a: AbstractSet[int], b: AbstractSet[int]
) -> frozenset[int]:
    """Inclusion-minimal subset of candidates separating a from b.

    Removal attempts run in increasing vertex id, re-testing separation after
    each drop.
    """
    am, bm = mask_of(a), mask_of(b)
    if am & bm:
        raise NotSeparating("sides intersect")
    full = (1 << g.n) - 1

    def separates(sep: int) -> bool:
        return not reach_mask(g.masks, am, full & ~sep) & bm

    sep = mask_of(candidates)
    if sep & (am | bm):
        raise NotSeparating("candidates meet a side")
    if not separates(sep):
        raise NotSeparating("candidates do not separate the sides")
    for v in sorted(candidates):
        if separates(sep & ~(1 << v)):
            sep &= ~(1 << v)
    return set_of(sep)


def implicit_tree_hit(
    g: Graph, u: AbstractSet[int], targets: Sequence[AbstractSet[int]],
    view: TDView, t: int,
) -> HitOutcome:
    """Either t disjoint connectors or a blocker made of at most t-1 bags.

    Deepest-first greedy over the decomposition tree rooted at node 0: among
    nodes in decreasing depth (ties toward smaller id), pick the first x such
    that some component of the subgraph induced on D(x) minus the removed
    bags minus u meets every target, where D(x) is the set of vertices
    appearing only in bags of the subtree under x.  Each pick records the
    component and removes the bag of x.  Picked components are pairwise
    disjoint, and the number of picks equals the maximum number of disjoint
    connectors, so stopping short of t picks certifies the blocker.
    """
    bag_masks = _bag_masks(view)
    k = len(bag_masks)
    nbrs: list[list[int]] = [[] for _ in range(k)]
    for x, y in view.base.edges:
        nbrs[x].append(y)
        nbrs[y].append(x)
    depth = [-1] * k
    parent = [-1] * k
    depth[0] = 0
    dfs_order = [0]
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in sorted(nbrs[a]):
            if depth[b] == -1:
                depth[b] = depth[a] + 1
                parent[b] = a
                dfs_order.append(b)
                queue.append(b)
    sub_union = bag_masks[:]
    for x in reversed(dfs_order):
        if parent[x] != -1:
            sub_union[parent[x]] |= sub_union[x]
    all_mask = 0
    for bm in bag_masks:
        all_mask |= bm
    # D(x) = vertices in no bag outside the subtree of x
    up_union = [0] * k
    for x in dfs_order:
        kids = [b for b in nbrs[x] if parent[b] == x]
        for c in kids:
            others = 0
            for c2 in kids:
                if c2 != c:
                    others |= sub_union[c2]
            up_union[c] = up_union[x] | bag_masks[x] | others
    dom = [all_mask & ~up_union[x] for x in range(k)]

    order = sorted(range(k), key=lambda x: (-depth[x], x))
    u_mask = mask_of(u)
    tmasks = [mask_of(s) for s in targets]
    removed = 0
    picks: list[int] = []
    certs: list[frozenset[int]] = []
    while True:
        hit = None
        for x in order:
            pool = dom[x] & ~removed & ~u_mask
            if not pool:
                continue
            for comp in components_masks(g.masks, pool):
                if all(comp & tm for tm in tmasks):
                    hit = (x, comp)
                    break
            if hit:
                break
        if hit is None:
            return Blocker(set_of(removed & ~u_mask), tuple(picks))
        x, comp = hit
        picks.append(x)
        certs.append(set_of(comp))
        removed |= bag_masks[x]
        if len(certs) == t:
            return Connectors(tuple(certs))


# ---------------------------------------------------------------------------
# group Steiner trees and the connector/blocker dichotomy they power

def group_steiner_min(
    g: Graph, groups: Sequence[AbstractSet[int]]
) -> tuple[float, frozenset[int]]:
    """Minimum vertex count of a connected subgraph meeting every group.

    Dynamic program over (vertex, subset of groups) with vertex-counted
    costs; (inf, empty) if no connector exists.
    """
    k = len(groups)
    if k == 0:
        raise ValueError("no groups")
    if k > 8:
        raise TooManyGroups(f"{k} groups exceeds the exact cap of 8")
    if any(not gset for gset in groups):
        return math.inf, frozenset()
    gmask = [0] * g.n
    for i, gset in enumerate(groups):
        for v in gset:
            gmask[v] |= 1 << i
    full = (1 << k) - 1
    INF = math.inf
    dp = [[INF] * (full + 1) for _ in range(g.n)]
    # how[v][s]: ("leaf",), ("grow", u), or ("merge", s1)
    how: list[list[tuple | None]] = [[None] * (full + 1) for _ in range(g.n)]
    for s in range(1, full + 1):
        dist = [INF] * g.n
        for v in range(g.n):
            best, tag = INF, None
            if s & ~gmask[v] == 0:
                best, tag = 1, ("leaf",)
            s1 = (s - 1) & s
            while s1:
                s2 = s & ~s1
                if s1 < s2:  # each unordered split once
                    a, b = dp[v][s1], dp[v][s2]
                    if a + b - 1 < best:
                        best, tag = a + b - 1, ("merge", s1)
                s1 = (s1 - 1) & s
            drop = s & ~gmask[v]
            if drop != s:
                for u in g.adj[v]:
                    if dp[u][drop] + 1 < best:
                        best, tag = dp[u][drop] + 1, ("grow", u)
            dist[v] = best
            how[v][s] = tag
        heap = [(d, v) for v, d in enumerate(dist) if d < INF]
        heapify(heap)
        done = [False] * g.n
        while heap:
            d, v = heappop(heap)
            if done[v]:
                continue
            done[v] = True
            for u in g.adj[v]:
                if d + 1 < dist[u]:
                    dist[u] = d + 1
                    how[u][s] = ("grow", v)
                    heappush(heap, (d + 1, u))
        for v in range(g.n):
            dp[v][s] = dist[v]

    best = min(dp[v][full] for v in range(g.n)) if g.n else INF
    if best == INF:
        return INF, frozenset()
    root = min(v for v in range(g.n) if dp[v][full] == best)
    tree: set[int] = set()
    stack = [(root, full)]
    while stack:
        v, s = stack.pop()
        tree.add(v)
        tag = how[v][s]
        if tag[0] == "grow":
            stack.append((tag[1], s & ~gmask[v]))
        elif tag[0] == "merge":
            s1 = tag[1]
            stack.append((v, s1))
            stack.append((v, s & ~s1))
    return float(best), frozenset(tree)


def even_split(total: int, parts: int) -> list[int]:
    """Split ``total`` into ``parts`` near-equal positive summands, larger first."""
    base, rem = divmod(total, parts)
    return [base + 1 if i < rem else base for i in range(parts)]


def find_tree_blocker_bound(n: int, k: int, x: float) -> float:
    """Size bound of the distance-layer blocker: sum of n/b_i over the budget
    split; vacuous (n) when the budget cannot feed every group."""
    if k <= 1:
        return 0.0
    q = math.floor(x)
    if q <= k - 1:
        return float(n)
    return sum(n / b for b in even_split(q, k - 1))


def find_tree(g: Graph, groups: Sequence[AbstractSet[int]], x: float) -> HitOutcome:
    """One connector of at most x vertices, or a distance-layer blocker.

    The blocker takes one breadth-first distance layer toward each group
    beyond the first: the budget floor(x) is split as evenly as possible into
    b_2..b_k (earlier groups get the remainder), and for group i the layer
    {v : dist(v, A_i) = j} of minimum size over 1 <= j <= b_i is chosen (ties
    toward smaller j).  Any surviving component meeting all groups would
    contain a vertex whose distance sum beats the budget, so some chosen
    layer cuts it; the size bound is ``find_tree_blocker_bound``.
    """
    k = len(groups)
    if k == 0:
        raise ValueError("no groups")
    if any(not gset for gset in groups):
        return Blocker(frozenset())
    size, tree = group_steiner_min(g, groups)
    if size <= x:
        return Connectors((tree,))
    q = math.floor(x)
    if q <= k - 1:
        return Blocker(frozenset(range(g.n)))
    budgets = even_split(q, k - 1)
    y: set[int] = set()
    for idx, b in enumerate(budgets):
        group = groups[idx + 1]
        dist = [-1] * g.n
        queue = deque()
        for v in sorted(group):
            dist[v] = 0
            queue.append(v)
        while queue:
            a = queue.popleft()
            for w in g.adj[a]:
                if dist[w] == -1:
                    dist[w] = dist[a] + 1
                    queue.append(w)
        layers = [0] * (b + 1)
        for v in range(g.n):
            if 1 <= dist[v] <= b:
                layers[dist[v]] += 1
        t_i = min(range(1, b + 1), key=lambda j: (layers[j], j))
        y.update(v for v in range(g.n) if dist[v] == t_i)
    return Blocker(frozenset(y))


def find_trees(
    g: Graph, groups: Sequence[AbstractSet[int]], x: float, l: int
) -> HitOutcome:
    """l disjoint connectors of size at most x each, or a blocker.

    Repeatedly extracts one connector and recurses on the residual graph; a
    blocker there is padded with the connectors found so far, giving size at
    most (l-1)x plus the single-connector blocker bound.
    """
    trees: list[frozenset[int]] = []
    used: set[int] = set()
    for _ in range(l):
        alive = sorted(set(range(g.n)) - used)
        sub, old = induced_subgraph(g, alive)
        pos = {v: i for i, v in enumerate(old)}
        sub_groups = [frozenset(pos[v] for v in gs if v in pos) for gs in groups]
        if any(not gs for gs in sub_groups):
            return Blocker(frozenset(used))
        out = find_tree(sub, sub_groups, x)
        if isinstance(out, Blocker):
            return Blocker(frozenset(used) | {old[v] for v in out.y})
        tree = {old[v] for v in out.trees[0]}
        trees.append(frozenset(tree))
        used |= tree
    return Connectors(tuple(trees))


# ---------------------------------------------------------------------------
# Menger via unit-vertex-capacity max-flow

def menger_vertex_cut(
    g: Graph, a: AbstractSet[int], b: AbstractSet[int], t: int
) -> HitOutcome:
    """Either t pairwise vertex-disjoint a-b paths or a vertex cut of size < t.

    This is the vertex-set form: paths are disjoint including their
    endpoints (a vertex lying in both sets is a one-vertex path), and the
    cut is an arbitrary vertex set, so it may use vertices of a or b when
    every separator must (for instance, when the sides touch).
    """
    n = g.n
    # node 2v = v_in, 2v+1 = v_out, source = 2n, sink = 2n+1
    src, snk = 2 * n, 2 * n + 1
    big = n + 1  # effectively infinite: min cuts use only vertex-split edges
    cap: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(2 * n + 2)]

    def add(u: int, v: int, c: int) -> None:
        if (u, v) not in cap:
            cap[(u, v)] = 0
            cap[(v, u)] = 0
            adj[u].append(v)
            adj[v].append(u)
        cap[(u, v)] += c

    for v in range(n):
        add(2 * v, 2 * v + 1, 1)
        for w in g.adj[v]:
            add(2 * v + 1, 2 * w, 1)
    for v in sorted(a):
        add(src, 2 * v, big)
    for v in sorted(b):
        add(2 * v + 1, snk, big)
    flow: dict[tuple[int, int], int] = {e: 0 for e in cap}

    def augment() -> bool:
        prev = {src: src}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            if u == snk:
                break
            for v in adj[u]:
                if v not in prev and cap[(u, v)] - flow[(u, v)] > 0:
                    prev[v] = u
                    queue.append(v)
        if snk not in prev:
            return False
        v = snk
        while v != src:
            u = prev[v]
            flow[(u, v)] += 1
            flow[(v, u)] -= 1
            v = u
        return True

    value = 0
    while value < t and augment():
        value += 1
    if value >= t:
        paths = []
        starts = [v for v in sorted(a) if flow[(src, 2 * v)] > 0]
        for s in starts[:t]:
            path = [s]
            node = 2 * s + 1
            while flow.get((node, snk), 0) == 0:
                nxt = next(w for w in adj[node] if w != snk and flow[(node, w)] > 0)
                flow[(node, nxt)] -= 1
                path.append(nxt // 2)
                node = nxt + 1
            flow[(node, snk)] -= 1
            paths.append(frozenset(path))
        return Connectors(tuple(sorted(paths, key=min)))
    reach = {src}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in reach and cap[(u, v)] - flow[(u, v)] > 0:
                reach.add(v)
                queue.append(v)
    cut = frozenset(v for v in range(n) if 2 * v in reach and 2 * v + 1 not in reach)
    assert len(cut) == value < t
    return Blocker(cut)
