"""Tree-decompositions, layerings, and decomposition views.

A view (``TDView``) tracks the bags of a fixed decomposition while the host
graph is shrunk by deletions and contractions.  Bag (node) ids never change,
so a vertex set covered by bags deep inside a recursion can be certified
against the original decomposition afterwards.  Contracted super-vertices are
identified by negative tokens; ``origin`` maps the current dense ids back to
original vertices (>= 0) or tokens (< 0), and ``registry`` expands tokens to
the original vertex sets they stand for.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import AbstractSet, Iterable, Sequence

from .graphs import (
    Graph,
    NotConnected,
    bits,
    components_masks,
    is_connected_mask,
    mask_of,
    set_of,
)


class TooLarge(ValueError):
    """Input exceeds the exact solver's vertex cap."""


class NotFound(LookupError):
    """A bag guaranteed by an invariant could not be found."""


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    @property
    def node_count(self) -> int:
        return len(self.bags)

    def neighbors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.bags]
        for x, y in self.edges:
            out[x].append(y)
            out[y].append(x)
        return [sorted(a) for a in out]


@dataclass(frozen=True)
class Layering:
    layers: tuple[frozenset[int], ...]

    def index_of(self) -> dict[int, int]:
        return {v: i for i, layer in enumerate(self.layers) for v in layer}


def validate_td(g: Graph, td: TreeDecomposition) -> str | None:
    """Check the three decomposition axioms; None if valid, else the first
    violation with a witness."""
    k = td.node_count
    if k == 0:
        return "no nodes"
    for x, y in td.edges:
        if not (0 <= x < k and 0 <= y < k):
            return f"tree edge ({x},{y}) out of range"
    if len(td.edges) != k - 1:
        return f"tree has {len(td.edges)} edges for {k} nodes"
    nbrs = td.neighbors()
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in nbrs[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != k:
        return "tree is disconnected"
    where: list[list[int]] = [[] for _ in range(g.n)]
    for x, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return f"bag {x} contains out-of-range vertex {v}"
            where[v].append(x)
    for v in range(g.n):
        nodes = where[v]
        if not nodes:
            return f"vertex {v} is in no bag"
        trace = set(nodes)
        comp = {nodes[0]}
        queue = deque([nodes[0]])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if y in trace and y not in comp:
                    comp.add(y)
                    queue.append(y)
        if comp != trace:
            other = min(trace - comp)
            return f"vertex {v} has a disconnected trace (nodes {nodes[0]} and {other})"
    for u in range(g.n):
        for v in g.adj[u]:
            if u < v and not any(v in td.bags[x] for x in where[u]):
                return f"edge {u}-{v} is in no bag"
    return None


# ---------------------------------------------------------------------------
# construction

def _elimination_td(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Decomposition obtained by eliminating vertices in the given order."""
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    fill = [set(a) for a in g.adj]
    pos = {v: i for i, v in enumerate(order)}
    bags: list[frozenset[int]] = [frozenset()] * g.n
    for v in order:
        later = [w for w in fill[v] if pos[w] > pos[v]]
        bags[pos[v]] = frozenset([v, *later])
        for a in later:
            for b in later:
                if a != b:
                    fill[a].add(b)
    edges = []
    for i in range(g.n):
        rest = [pos[w] for w in bags[i] if pos[w] > i]
        if rest:
            edges.append((i, min(rest)))
        elif i + 1 < g.n:
            edges.append((i, i + 1))
    return TreeDecomposition(tuple(bags), tuple(edges))


def heuristic_td(g: Graph) -> TreeDecomposition:
    """Min-fill elimination ordering (ties: min degree, then smallest id)."""
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    fill = [set(a) for a in g.adj]
    alive = set(range(g.n))
    order = []
    while alive:
        best = None
        for v in sorted(alive):
            nbrs = [w for w in fill[v] if w in alive]
            missing = 0
            for i, a in enumerate(nbrs):
                for b in nbrs[i + 1 :]:
                    if b not in fill[a]:
                        missing += 1
            key = (missing, len(nbrs), v)
            if best is None or key < best[0]:
                best = (key, v, nbrs)
        _, v, nbrs = best
        for a in nbrs:
            for b in nbrs:
                if a != b:
                    fill[a].add(b)
        alive.remove(v)
        order.append(v)
    return _elimination_td(g, order)


def exact_treewidth_small(g: Graph, cap: int = 20) -> tuple[int, TreeDecomposition]:
    """Exact treewidth by dynamic programming over vertex subsets.

    Minimizes, over elimination orderings, the maximum back-degree; the
    witness decomposition is rebuilt from the optimal ordering.
    """
    if g.n > cap:
        raise TooLarge(f"n={g.n} exceeds cap {cap}")
    n = g.n
    if n == 0:
        return -1, TreeDecomposition((frozenset(),), ())
    masks = g.masks
    full = (1 << n) - 1

    def back_degree(done: int, v: int) -> int:
        # neighbors of v outside done, reached through done
        reach = masks[v] & done
        seen = reach
        while reach:
            nxt = 0
            for w in bits(reach):
                nxt |= masks[w]
            reach = nxt & done & ~seen
            seen |= reach
        out = masks[v] & ~done
        for w in bits(seen):
            out |= masks[w] & ~done
        return bin(out & ~(1 << v)).count("1")

    cost = [0] * (1 << n)
    choice = [0] * (1 << n)
    for s in range(1, 1 << n):
        best, bestv = n + 1, -1
        rem = s
        while rem:
            low = rem & -rem
            rem ^= low
            v = low.bit_length() - 1
            prev = s ^ low
            c = max(cost[prev], back_degree(prev, v))
            if c < best:
                best, bestv = c, v
        cost[s] = best
        choice[s] = bestv
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return cost[full], _elimination_td(g, order)


def bfs_layering(g: Graph, root: int) -> Layering:
    """Layer i holds the vertices at BFS distance i from the root."""
    dist = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] == -1:
                dist[w] = dist[u] + 1
                queue.append(w)
    if any(d == -1 for d in dist):
        raise NotConnected("graph is not connected")
    depth = max(dist)
    layers = [set() for _ in range(depth + 1)]
    for v, d in enumerate(dist):
        layers[d].add(v)
    return Layering(tuple(frozenset(s) for s in layers))


def layering_violation(g: Graph, layering: Layering) -> str | None:
    """None if the layers partition V and every edge spans at most one layer."""
    seen: dict[int, int] = {}
    for i, layer in enumerate(layering.layers):
        for v in layer:
            if v in seen:
                return f"vertex {v} in layers {seen[v]} and {i}"
            seen[v] = i
    if len(seen) != g.n:
        missing = min(set(range(g.n)) - seen.keys())
        return f"vertex {missing} in no layer"
    for u, v in g.edges():
        if abs(seen[u] - seen[v]) > 1:
            return f"edge {u}-{v} spans layers {seen[u]} and {seen[v]}"
    return None


def find_clique_bag(td: TreeDecomposition | Sequence[AbstractSet], clique: AbstractSet) -> int:
    """Smallest node id whose bag contains the clique.

    Every clique of the decomposed graph lies in some bag of a valid
    decomposition, so a miss signals a broken invariant upstream.
    """
    bags = td.bags if isinstance(td, TreeDecomposition) else td
    want = set(clique)
    for x, bag in enumerate(bags):
        if want <= bag:
            return x
    raise NotFound(f"no bag contains clique {sorted(want, key=repr)}")


# ---------------------------------------------------------------------------
# views

@dataclass(frozen=True)
class TDView:
    """Bags of ``base`` after deletions/contractions of the host graph.

    ``bags`` hold current dense vertex ids of the shrunken graph.  ``origin``
    maps each current id to the original vertex it stands for, or to a
    negative placeholder token for a contracted super-vertex; ``registry``
    expands tokens to original vertex sets.
    """

    base: TreeDecomposition
    bags: tuple[frozenset[int], ...]
    origin: tuple[int, ...]
    registry: dict[int, frozenset[int]] = field(default_factory=dict)

    def expand(self, current: int) -> frozenset[int]:
        o = self.origin[current]
        return self.registry[o] if o < 0 else frozenset([o])

    def originals(self, currents: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for c in currents:
            out |= self.expand(c)
        return frozenset(out)


def view_of(td: TreeDecomposition, g: Graph) -> TDView:
    """Identity view of a decomposition over its own graph."""
    return TDView(td, td.bags, tuple(range(g.n)))


def _check_lifting(view: TDView) -> None:
    for x, bag in enumerate(view.bags):
        originals = {view.origin[v] for v in bag if view.origin[v] >= 0}
        assert originals <= view.base.bags[x], f"lifting violated at bag {x}"


def view_delete(view: TDView, dead: AbstractSet[int]) -> TDView:
    """Drop the given current vertices; survivors are re-indexed densely
    (same convention as ``induced_subgraph``)."""
    n = len(view.origin)
    keep = [v for v in range(n) if v not in dead]
    remap = {v: i for i, v in enumerate(keep)}
    bags = tuple(frozenset(remap[v] for v in bag if v in remap) for bag in view.bags)
    origin = tuple(view.origin[v] for v in keep)
    live = {o for o in origin if o < 0}
    out = TDView(view.base, bags, origin, {t: s for t, s in view.registry.items() if t in live})
    _check_lifting(out)
    return out


def view_contract(view: TDView, z: AbstractSet[int], placeholder: int) -> TDView:
    """Replace the current vertices ``z`` by one super-vertex.

    ``placeholder`` is the negative token identifying the new vertex; its
    dense id follows the ``contract_set`` convention (last index).  Every bag
    meeting ``z`` now holds the super-vertex, so each original bag id keeps
    covering the same region of the original graph.
    """
    if placeholder >= 0:
        raise ValueError("placeholder token must be negative")
    n = len(view.origin)
    zs = frozenset(z)
    keep = [v for v in range(n) if v not in zs]
    new_id = len(keep)
    remap = {v: i for i, v in enumerate(keep)}
    bags = tuple(
        frozenset(
            {remap[v] for v in bag if v not in zs} | ({new_id} if bag & zs else set())
        )
        for bag in view.bags
    )
    expanded: set[int] = set()
    for v in zs:
        expanded |= view.expand(v)
    origin = tuple(view.origin[v] for v in keep) + (placeholder,)
    live = {o for o in origin if o < 0}
    registry = {t: s for t, s in view.registry.items() if t in live}
    registry[placeholder] = frozenset(expanded)
    out = TDView(view.base, bags, origin, registry)
    _check_lifting(out)
    return out


def view_as_td(view: TDView) -> TreeDecomposition:
    """The view's bags as a decomposition of the current graph (debug checks)."""
    return TreeDecomposition(view.bags, view.base.edges)


# ---------------------------------------------------------------------------
# .td file format (PACE style) and layering JSON

def parse_td(text: str) -> TreeDecomposition:
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None or len(parts) != 5 or parts[1] != "td":
                raise ValueError(f"malformed solution line: {line!r}")
            header = (int(parts[2]), int(parts[3]), int(parts[4]))
        elif parts[0] == "b":
            if header is None:
                raise ValueError("bag line before 's td' header")
            bid = int(parts[1]) - 1
            if bid in bags:
                raise ValueError(f"duplicate bag id {bid + 1}")
            bags[bid] = frozenset(int(p) - 1 for p in parts[2:])
        else:
            if len(parts) != 2:
                raise ValueError(f"malformed tree edge line: {line!r}")
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    if header is None:
        raise ValueError("missing 's td' header")
    count = header[0]
    if sorted(bags) != list(range(count)):
        raise ValueError("bag ids are not 1..#bags")
    return TreeDecomposition(tuple(bags[i] for i in range(count)), tuple(edges))


def write_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {td.node_count} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(i + 1), *[str(v + 1) for v in sorted(bag)]]))
    lines += [f"{x + 1} {y + 1}" for x, y in td.edges]
    return "\n".join(lines) + "\n"


def parse_layering(text: str) -> Layering:
    import json

    obj = json.loads(text)
    return Layering(tuple(frozenset(layer) for layer in obj["layers"]))


def write_layering(layering: Layering) -> str:
    import json

    return json.dumps({"layers": [sorted(l) for l in layering.layers]}, sort_keys=True)
