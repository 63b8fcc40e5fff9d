"""Simple undirected graphs over dense 0-based vertex ids.

Vertices are identified by indices 0..n-1 and every neighbor list is kept
sorted, so iteration order (and therefore every tie-breaking rule built on
top of it) is reproducible.  An optional label table carries original vertex
names through contractions for witness reporting.

Vertex sets are passed around as plain frozensets; the per-vertex bitmask
table ``Graph.masks`` backs the hot set operations (components, reachability)
with big-int arithmetic.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import AbstractSet, Iterable, Iterator, Sequence


class NotConnected(ValueError):
    """A set that must induce a connected subgraph does not."""


class InvalidSeeds(ValueError):
    """Seed sets violate disjointness / connectivity / non-emptiness."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length != n")
        for v, nbrs in enumerate(self.adj):
            if any(w < 0 or w >= self.n for w in nbrs):
                raise ValueError(f"neighbor out of range at vertex {v}")
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbor list of {v} not sorted/unique")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label table length != n")
        object.__setattr__(
            self, "masks", tuple(sum(1 << w for w in nbrs) for nbrs in self.adj)
        )
        for v in range(self.n):
            for w in self.adj[v]:
                if not self.masks[w] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{w}")

    @staticmethod
    def from_edges(
        n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None
    ) -> Graph:
        """Build a graph from an edge list; duplicates and self-loops are rejected."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return Graph(
            n,
            tuple(tuple(sorted(s)) for s in nbrs),
            None if labels is None else tuple(labels),
        )

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)


@dataclass(frozen=True)
class Model:
    """A clique model: disjoint connected branch sets, pairwise joined."""

    branch_sets: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.branch_sets)


def model_violation(g: Graph, model: Model) -> str | None:
    """None if the branch sets form a valid clique model in g."""
    sets = model.branch_sets
    seen: set[int] = set()
    for i, bs in enumerate(sets):
        if not bs:
            return f"branch set {i} is empty"
        if any(v < 0 or v >= g.n for v in bs):
            return f"branch set {i} has an out-of-range vertex"
        if seen & bs:
            return f"branch set {i} overlaps an earlier one"
        seen |= bs
        if not is_connected_mask(g.masks, mask_of(bs)):
            return f"branch set {i} is not connected"
    for i, a in enumerate(sets):
        for j in range(i + 1, len(sets)):
            if not any(g.masks[v] & mask_of(sets[j]) for v in a):
                return f"no edge between branch sets {i} and {j}"
    return None


# ---------------------------------------------------------------------------
# bitmask helpers

def mask_of(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def reach_mask(masks: Sequence[int], start: int, allowed: int) -> int:
    """Vertices of ``allowed`` reachable from ``start & allowed``."""
    seen = start & allowed
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= masks[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def components_masks(masks: Sequence[int], restrict: int) -> list[int]:
    """Connected components of the induced subgraph, as masks, by lowest vertex."""
    out = []
    rem = restrict
    while rem:
        low = rem & -rem
        comp = reach_mask(masks, low, restrict)
        out.append(comp)
        rem &= ~comp
    return out


def is_connected_mask(masks: Sequence[int], mask: int) -> bool:
    if mask == 0:
        return True
    return reach_mask(masks, mask & -mask, mask) == mask


# ---------------------------------------------------------------------------
# basic operations

def components(g: Graph, restrict: AbstractSet[int]) -> list[frozenset[int]]:
    """Partition ``restrict`` into the connected classes of the induced subgraph.

    Classes are ordered by their smallest vertex.
    """
    return [set_of(c) for c in components_masks(g.masks, mask_of(restrict))]


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``keep``; returns it with the sorted old-id table.

    New id j corresponds to old id ``old[j]``.
    """
    old = tuple(sorted(set(keep)))
    pos = {v: i for i, v in enumerate(old)}
    adj = tuple(tuple(pos[w] for w in g.adj[v] if w in pos) for v in old)
    labels = None if g.labels is None else tuple(g.labels[v] for v in old)
    return Graph(len(old), adj, labels), old


def contract_set(g: Graph, z: AbstractSet[int]) -> tuple[Graph, tuple[int, ...]]:
    """Contract the connected set ``z`` into one new vertex.

    Surviving vertices keep their relative order and are re-indexed densely;
    the merged vertex takes the last index n-|z|.  Returns the new graph and
    the old->new vertex map.  Parallel edges collapse (the result is simple).
    """
    zs = frozenset(z)
    if not zs:
        raise ValueError("empty contraction set")
    if not is_connected_mask(g.masks, mask_of(zs)):
        raise NotConnected(f"contraction set {sorted(zs)} is not connected")
    keep = [v for v in range(g.n) if v not in zs]
    new_id = len(keep)
    vmap = [0] * g.n
    for i, v in enumerate(keep):
        vmap[v] = i
    for v in zs:
        vmap[v] = new_id
    nbrs: list[set[int]] = [set() for _ in range(new_id + 1)]
    for u in range(g.n):
        for w in g.adj[u]:
            a, b = vmap[u], vmap[w]
            if a != b:
                nbrs[a].add(b)
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[v] for v in keep) + (
            "+".join(g.labels[v] for v in sorted(zs)),
        )
    return Graph(new_id + 1, tuple(tuple(sorted(s)) for s in nbrs), labels), tuple(vmap)


def grow_connected_partition(
    g: Graph, seeds: Sequence[AbstractSet[int]]
) -> list[frozenset[int]]:
    """Extend disjoint connected seeds to a partition of V into connected classes.

    Multi-source BFS: the queue is seeded with all seed vertices in seed
    order (ascending ids within a seed) and each unassigned vertex joins the
    class of the first BFS arc that reaches it.
    """
    if not seeds:
        if g.n == 0:
            return []
        raise InvalidSeeds("no seeds for a non-empty graph")
    owner = [-1] * g.n
    queue: deque[int] = deque()
    for i, s in enumerate(seeds):
        if not s:
            raise InvalidSeeds(f"seed {i} is empty")
        if not is_connected_mask(g.masks, mask_of(s)):
            raise InvalidSeeds(f"seed {i} is not connected")
        for v in sorted(s):
            if owner[v] != -1:
                raise InvalidSeeds(f"seeds overlap at vertex {v}")
            owner[v] = i
            queue.append(v)
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if owner[w] == -1:
                owner[w] = owner[u]
                queue.append(w)
    if any(o == -1 for o in owner):
        raise NotConnected("graph is not connected")
    out: list[set[int]] = [set() for _ in seeds]
    for v, o in enumerate(owner):
        out[o].add(v)
    return [frozenset(s) for s in out]


# ---------------------------------------------------------------------------
# file formats: .gr (PACE), JSON, DOT

def parse_gr(text: str) -> tuple[Graph, int]:
    """Parse a PACE-style .gr file (1-indexed edge list).

    Returns the graph and the number of ignored lines (duplicate edges and
    self-loops are dropped, not errors).
    """
    n = None
    edges: set[tuple[int, int]] = set()
    ignored = 0
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4:
                raise ValueError(f"malformed header: {line!r}")
            n = int(parts[2])
            continue
        if n is None:
            raise ValueError("edge line before 'p' header")
        if len(parts) != 2:
            raise ValueError(f"malformed edge line: {line!r}")
        u, v = int(parts[0]) - 1, int(parts[1]) - 1
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"vertex out of range on line: {line!r}")
        if u == v:
            ignored += 1
            continue
        e = (u, v) if u < v else (v, u)
        if e in edges:
            ignored += 1
        else:
            edges.add(e)
    if n is None:
        raise ValueError("missing 'p' header")
    return Graph.from_edges(n, sorted(edges)), ignored


def write_gr(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> str:
    obj: dict = {"n": g.n, "edges": g.edges()}
    if g.labels is not None:
        obj["labels"] = list(g.labels)
    return json.dumps(obj, sort_keys=True)


def graph_from_json(text: str) -> Graph:
    obj = json.loads(text)
    return Graph.from_edges(
        obj["n"], [tuple(e) for e in obj["edges"]], obj.get("labels")
    )


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{g.label(v)}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
