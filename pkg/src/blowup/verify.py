"""Independent checkers and brute-force oracles.

Nothing here trusts the engines: connectivity, components and coverage are
re-derived from plain adjacency scans, so a bug in the construction code
cannot hide from its own checker.  Every checker returns None for success or
a string naming the first violation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import AbstractSet, Sequence

from .decomp import TooLarge, TreeDecomposition
from .engine import MinorWitness, PartitionResult
from .graphs import Graph


@dataclass(frozen=True)
class ProductEmbedding:
    """v -> (part id, optional layer index, slot >= 1) injection into a
    product of a quotient graph, an optional path, and a clique of size m."""

    assign: tuple[tuple[int, int | None, int], ...]
    m: int


def verdict_json(violation: str | None) -> str:
    return json.dumps({"ok": violation is None, "violation": violation})


# --- local set/graph helpers (deliberately not shared with the engines) ----

def _connected(g: Graph, vs: AbstractSet[int]) -> bool:
    vs = set(vs)
    if not vs:
        return False
    stack = [min(vs)]
    seen = {min(vs)}
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


def _adjacent_sets(g: Graph, a: AbstractSet[int], b: AbstractSet[int]) -> bool:
    return any(w in b for v in a for w in g.adj[v])


def _tree_ok(node_count: int, edges: Sequence[tuple[int, int]]) -> str | None:
    if node_count == 0:
        return "no nodes"
    if len(edges) != node_count - 1:
        return f"{len(edges)} edges on {node_count} nodes"
    adj: list[list[int]] = [[] for _ in range(node_count)]
    for x, y in edges:
        if not (0 <= x < node_count and 0 <= y < node_count):
            return f"edge ({x},{y}) out of range"
        adj[x].append(y)
        adj[y].append(x)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != node_count:
        return "tree is disconnected"
    return None


def _td_violation(h: Graph, td: TreeDecomposition) -> str | None:
    err = _tree_ok(td.node_count, td.edges)
    if err:
        return f"certificate tree: {err}"
    adj: list[list[int]] = [[] for _ in range(td.node_count)]
    for x, y in td.edges:
        adj[x].append(y)
        adj[y].append(x)
    traces: list[list[int]] = [[] for _ in range(h.n)]
    for x, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < h.n:
                return f"bag {x} holds unknown vertex {v}"
            traces[v].append(x)
    for v in range(h.n):
        if not traces[v]:
            return f"quotient vertex {v} in no bag"
        nodes = set(traces[v])
        seen = {traces[v][0]}
        stack = [traces[v][0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in nodes and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != nodes:
            return f"quotient vertex {v} has a disconnected trace"
    for u in range(h.n):
        for w in h.adj[u]:
            if u < w and not any(w in td.bags[x] for x in traces[u]):
                return f"quotient edge {u}-{w} in no bag"
    return None


# ---------------------------------------------------------------------------
# partition / embedding checkers

def check_partition_result(
    g: Graph,
    original_td: TreeDecomposition | None,
    r: PartitionResult,
    s: int,
    t: int,
    m_bound: float | None = None,
    require_unique_root_bag: bool = False,
) -> str | None:
    """Full audit of a partition result against its input graph.

    Checks, in order: the parts partition V; every edge stays inside a part
    or joins quotient-adjacent parts; root indices are sound; the quotient
    certificate is a valid tree-decomposition of width at most s; cover
    certificates use at most t-1 original bags and really cover their parts;
    part sizes obey the bound; a simple-certificate flag is re-verified.
    """
    part_of: dict[int, int] = {}
    for i, part in enumerate(r.parts):
        if not part:
            return f"part {i} is empty"
        for v in part:
            if not 0 <= v < g.n:
                return f"part {i} holds unknown vertex {v}"
            if v in part_of:
                return f"vertex {v} in parts {part_of[v]} and {i}"
            part_of[v] = i
    if len(part_of) != g.n:
        missing = min(set(range(g.n)) - part_of.keys())
        return f"vertex {missing} in no part"
    if r.quotient.n != len(r.parts):
        return "quotient size differs from the number of parts"
    for u in range(g.n):
        for w in g.adj[u]:
            if u < w:
                pu, pw = part_of[u], part_of[w]
                if pu != pw and not r.quotient.has_edge(pu, pw):
                    return f"edge {u}-{w} joins non-adjacent parts {pu},{pw}"
    for i in r.roots:
        if not 0 <= i < len(r.parts):
            return f"root index {i} out of range"
    for i, j in combinations(r.roots, 2):
        if not r.quotient.has_edge(i, j):
            return f"root parts {i},{j} not adjacent in the quotient"
    err = _td_violation(r.quotient, r.h_cert)
    if err:
        return err
    if r.h_cert.width > s:
        return f"certificate width {r.h_cert.width} exceeds {s}"
    if original_td is not None:
        if r.cover_certs is None:
            return "cover certificates missing"
        if len(r.cover_certs) != len(r.parts):
            return "one cover certificate per part required"
        for i, (part, cert) in enumerate(zip(r.parts, r.cover_certs)):
            if len(cert) > t - 1:
                return f"cover certificate of part {i} uses {len(cert)} bags"
            union: set[int] = set()
            for x in cert:
                if not 0 <= x < original_td.node_count:
                    return f"cover certificate of part {i} names unknown bag {x}"
                union |= original_td.bags[x]
            if not set(part) <= union:
                return f"part {i} not covered by its certificate bags"
    if m_bound is not None:
        for i, part in enumerate(r.parts):
            if len(part) > int(m_bound):
                return f"part {i} has {len(part)} vertices, bound {int(m_bound)}"
    if r.simple:
        err = check_simple(r.h_cert, s)
        if err:
            return f"simple certificate: {err}"
    if require_unique_root_bag:
        roots = set(r.roots)
        hits = sum(1 for bag in r.h_cert.bags if roots <= bag)
        if hits != 1:
            return f"root clique lies in {hits} bags"
    return None


def check_product_embedding(
    g: Graph, h: Graph, emb: ProductEmbedding, layered: bool = False
) -> str | None:
    """Injectivity + adjacency preservation for a strong-product embedding."""
    if len(emb.assign) != g.n:
        return "one coordinate triple per vertex required"
    seen = {}
    for v, (part, layer, slot) in enumerate(emb.assign):
        if not 0 <= part < h.n:
            return f"vertex {v} maps to unknown part {part}"
        if not 1 <= slot <= emb.m:
            return f"vertex {v} has slot {slot} outside 1..{emb.m}"
        if layered and layer is None:
            return f"vertex {v} missing a layer index"
        key = (part, layer, slot)
        if key in seen:
            return f"vertices {seen[key]} and {v} collide at {key}"
        seen[key] = v
    for u in range(g.n):
        for w in g.adj[u]:
            if u < w:
                pu, lu, _ = emb.assign[u]
                pw, lw, _ = emb.assign[w]
                if pu != pw and not h.has_edge(pu, pw):
                    return f"edge {u}-{w}: parts {pu},{pw} not adjacent"
                if layered and abs(lu - lw) > 1:
                    return f"edge {u}-{w}: layer jump {abs(lu - lw)}"
    return None


# ---------------------------------------------------------------------------
# witnesses and simple decompositions

def check_witness(g: Graph, w: MinorWitness) -> str | None:
    """Disjointness, per-set connectivity, and the cross edges the flavor
    demands; for flavor J also connectivity of the contracted b side."""
    if w.flavor not in ("J", "Kst", "Kt"):
        return f"unknown flavor {w.flavor!r}"
    if w.flavor == "Kt" and w.b_sets:
        return "Kt witness must not have b sets"
    all_sets = [set(a) for a in w.a_sets] + [set(b) for b in w.b_sets]
    used: set[int] = set()
    for i, bs in enumerate(all_sets):
        if not bs:
            return f"branch set {i} is empty"
        if any(not 0 <= v < g.n for v in bs):
            return f"branch set {i} has an out-of-range vertex"
        if used & bs:
            return f"branch set {i} overlaps an earlier one"
        used |= bs
        if not _connected(g, bs):
            return f"branch set {i} is not connected"
    for i, a in enumerate(w.a_sets):
        for j in range(i + 1, len(w.a_sets)):
            if not _adjacent_sets(g, set(a), set(w.a_sets[j])):
                return f"a-sets {i} and {j} not joined"
    for i, a in enumerate(w.a_sets):
        for j, b in enumerate(w.b_sets):
            if not _adjacent_sets(g, set(a), set(b)):
                return f"a-set {i} and b-set {j} not joined"
    if w.flavor == "J" and w.b_sets:
        k = len(w.b_sets)
        quotient_adj: list[set[int]] = [set() for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                if _adjacent_sets(g, set(w.b_sets[i]), set(w.b_sets[j])):
                    quotient_adj[i].add(j)
                    quotient_adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in quotient_adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != k:
            return "contracted b side is disconnected"
    return None


def check_simple(td: TreeDecomposition, k: int) -> str | None:
    """Width <= k and every k-subset of a bag appears in at most 2 bags."""
    if td.width > k:
        return f"width {td.width} exceeds {k}"
    counts: dict[frozenset[int], int] = {}
    for bag in td.bags:
        for sub in combinations(sorted(bag), k):
            key = frozenset(sub)
            counts[key] = counts.get(key, 0) + 1
    for key, c in counts.items():
        if c > 2:
            return f"{sorted(key)} lies in {c} bags"
    return None


# ---------------------------------------------------------------------------
# exhaustive minor search

def find_minor_model(
    g: Graph, flavor: str, s: int = 0, t: int = 0, cap: int = 12
) -> MinorWitness | None:
    """Exhaustive backtracking for a clique / complete-bipartite-plus-clique /
    fan-pattern model; None is a proof of minor-freeness at this size.

    ``flavor`` is "Kt" (t mutually joined sets), "Kst" or "J" (s mutually
    joined sets, each joined to t further sets; "J" additionally needs the
    contracted t-side connected).  Branch sets inside each group are ordered
    by smallest vertex to cut symmetry.
    """
    if g.n > cap:
        raise TooLarge(f"n={g.n} exceeds cap {cap}")
    if flavor == "Kt":
        num_a, num_b = t, 0
    elif flavor in ("Kst", "J"):
        num_a, num_b = s, t
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    n = g.n
    if n < num_a + num_b:
        return None
    masks = g.masks
    full = (1 << n) - 1

    def connected_supersets(anchor: int, pool: int, max_size: int):
        """All connected sets S with min(S)=anchor inside pool, |S|<=max_size."""
        start = 1 << anchor
        out: list[int] = []

        def grow(smask: int, size: int, ext: int, ban: int) -> None:
            out.append(smask)
            if size == max_size:
                return
            avail = ext & ~ban
            banned = ban
            while avail:
                low = avail & -avail
                avail ^= low
                c = low.bit_length() - 1
                new_ext = (ext | (masks[c] & pool)) & ~(smask | low) & ~banned
                grow(smask | low, size + 1, new_ext, banned)
                banned |= low
            return

        grow(start, 1, masks[anchor] & pool, 0)
        return out

    def neighbors_mask(smask: int) -> int:
        out = 0
        m = smask
        while m:
            low = m & -m
            m ^= low
            out |= masks[low.bit_length() - 1]
        return out & ~smask

    placed: list[int] = []

    def feasible(pool: int, idx: int) -> bool:
        remaining = num_a + num_b - idx
        if bin(pool).count("1") < remaining:
            return False
        # every placed a-set keeps needing neighbors for its future partners
        for j, sm in enumerate(placed):
            needs_more = (j < num_a) and (idx < num_a + num_b)
            if needs_more and not neighbors_mask(sm) & pool:
                return False
        return True

    def place(idx: int, pool: int, min_anchor: int) -> bool:
        if idx == num_a + num_b:
            if flavor != "J" or num_b <= 1:
                return True
            b_sets = placed[num_a:]
            seen = {0}
            stack = [0]
            while stack:
                i = stack.pop()
                for j in range(num_b):
                    if j not in seen and neighbors_mask(b_sets[i]) & b_sets[j]:
                        seen.add(j)
                        stack.append(j)
            return len(seen) == num_b
        in_a = idx < num_a
        group_start = min_anchor if (idx != num_a) else 0
        max_size = bin(pool).count("1") - (num_a + num_b - idx - 1)
        for anchor in range(group_start, n):
            if not pool >> anchor & 1:
                continue
            for smask in connected_supersets(anchor, pool & ~((1 << anchor) - 1), max_size):
                nb = neighbors_mask(smask)
                if in_a:
                    if any(not nb & placed[j] for j in range(idx)):
                        continue
                else:
                    if any(not nb & placed[j] for j in range(num_a)):
                        continue
                placed.append(smask)
                if feasible(pool & ~smask, idx + 1) and place(
                    idx + 1, pool & ~smask, anchor + 1
                ):
                    return True
                placed.pop()
        return False

    if place(0, full, 0):
        out_flavor = flavor
        a_sets = tuple(
            tuple(sorted(i for i in range(n) if placed[j] >> i & 1))
            for j in range(num_a)
        )
        b_sets = tuple(
            tuple(sorted(i for i in range(n) if placed[j] >> i & 1))
            for j in range(num_a, num_a + num_b)
        )
        return MinorWitness(out_flavor, a_sets, b_sets)
    return None
